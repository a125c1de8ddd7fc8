use crate::quantum::{
    apply, cnot, hadamard, initial_state, pauli_x, tensor, SingleQubitGate, TwoQubitGate,
    TwoQubitState,
};

/// `CNOT · (I ⊗ H)`: from `|0⟩|1⟩` this yields `|Φ⁻⟩`.
pub fn phi_minus_circuit() -> TwoQubitGate {
    cnot().then_after(&tensor(&SingleQubitGate::IDENTITY, &hadamard()))
}

/// `(I ⊗ X) · CNOT · (I ⊗ H)`: from `|0⟩|1⟩` this yields `|Ψ⁻⟩`.
///
/// One valid circuit for the state; not a transcription of any particular
/// composer layout.
pub fn psi_minus_circuit() -> TwoQubitGate {
    tensor(&SingleQubitGate::IDENTITY, &pauli_x()).then_after(&phi_minus_circuit())
}

/// `(|00⟩ − |11⟩)/√2`
pub fn bell_phi_minus() -> TwoQubitState {
    apply(&phi_minus_circuit(), &initial_state())
}

/// `(|01⟩ − |10⟩)/√2`, up to global sign.
pub fn bell_psi_minus() -> TwoQubitState {
    apply(&psi_minus_circuit(), &initial_state())
}

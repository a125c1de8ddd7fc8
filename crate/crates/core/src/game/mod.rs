//! The quantum tapsilou protocol.
//!
//! The coins start in `|0⟩|1⟩`. The tosser picks `r^k` and applies
//! `CNOT · (I ⊗ Ry(2πk/n))`, producing a Bell-like state with unequal
//! weights on `|00⟩` and `|11⟩`. The gambler then picks `r^l` and applies
//! `Ry(2πl/n) ⊗ Ry(2πl/n)` before a computational-basis measurement.
//! `|00⟩` pays the tosser, `|11⟩` pays the gambler, anything else is a draw.

mod bell;
mod classical;
mod session;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{GroupElement, RotationGroup};
use crate::numfmt::serialize_sig;
use crate::quantum::{
    apply, cnot, initial_state, measure_probabilities, tensor, MeasurementDistribution,
    SingleQubitGate, TwoQubitGate, TwoQubitState,
};
use crate::rng::Prng;

pub use bell::{bell_phi_minus, bell_psi_minus, phi_minus_circuit, psi_minus_circuit};
pub use classical::{classical_probabilities, classical_round, ClassicalGameResult, MAX_COINS};
pub use session::{GameSession, Phase, Round, SessionConfig};

/// Win/draw probabilities for one `(k, l)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityProfile {
    #[serde(serialize_with = "serialize_sig")]
    pub p_tosser: f64,
    #[serde(serialize_with = "serialize_sig")]
    pub p_gambler: f64,
    #[serde(serialize_with = "serialize_sig")]
    pub p_draw: f64,
}

impl ProbabilityProfile {
    /// Collapse a four-outcome distribution onto the three game results.
    pub fn from_distribution(dist: &MeasurementDistribution) -> Self {
        Self {
            p_tosser: dist.get(0),
            p_gambler: dist.get(3),
            p_draw: dist.get(1) + dist.get(2),
        }
    }

    pub fn total(&self) -> f64 {
        self.p_tosser + self.p_gambler + self.p_draw
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.p_tosser - other.p_tosser)
            .abs()
            .max((self.p_gambler - other.p_gambler).abs())
            .max((self.p_draw - other.p_draw).abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasurementOutcome {
    /// `|00⟩`, basis index 0.
    TosserWins,
    /// `|11⟩`, basis index 3.
    GamblerWins,
    /// `|0⟩_{q1}|1⟩_{q0}`, basis index 1.
    Draw01,
    /// `|1⟩_{q1}|0⟩_{q0}`, basis index 2.
    Draw10,
}

impl MeasurementOutcome {
    pub fn from_index(b: usize) -> Result<Self> {
        match b {
            0 => Ok(Self::TosserWins),
            1 => Ok(Self::Draw01),
            2 => Ok(Self::Draw10),
            3 => Ok(Self::GamblerWins),
            _ => Err(Error::invalid(format!("basis index {b} out of range 0..=3"))),
        }
    }

    pub fn index(&self) -> usize {
        match self {
            Self::TosserWins => 0,
            Self::Draw01 => 1,
            Self::Draw10 => 2,
            Self::GamblerWins => 3,
        }
    }

    pub fn is_draw(&self) -> bool {
        matches!(self, Self::Draw01 | Self::Draw10)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::TosserWins => "tosser wins",
            Self::GamblerWins => "gambler wins",
            Self::Draw01 => "draw (|01>)",
            Self::Draw10 => "draw (|10>)",
        }
    }
}

fn move_element(n: u32, k: u32) -> Result<GroupElement> {
    RotationGroup::new(n)?.exponent(k)
}

/// The tosser's circuit `CNOT · (I ⊗ Ry(2πk/n))`.
pub fn tosser_action(n: u32, k: u32) -> Result<TwoQubitGate> {
    let e = move_element(n, k)?;
    let rotate = tensor(&SingleQubitGate::IDENTITY, &e.gate());
    Ok(cnot().then_after(&rotate))
}

/// The gambler's basis change `Ry(2πl/n) ⊗ Ry(2πl/n)`.
pub fn gambler_action(n: u32, l: u32) -> Result<TwoQubitGate> {
    let e = move_element(n, l)?;
    let g = e.gate();
    Ok(tensor(&g, &g))
}

/// State after the tosser's move.
pub fn psi1(n: u32, k: u32) -> Result<TwoQubitState> {
    Ok(apply(&tosser_action(n, k)?, &initial_state()))
}

/// State after both moves, computed by running the full circuit.
pub fn psi2(n: u32, k: u32, l: u32) -> Result<TwoQubitState> {
    Ok(apply(&gambler_action(n, l)?, &psi1(n, k)?))
}

/// Closed-form win and draw probabilities:
///
/// ```text
/// P_T    = (cos(πk/n) sin²(πl/n) − sin(πk/n) cos²(πl/n))²
/// P_G    = (cos(πk/n) cos²(πl/n) − sin(πk/n) sin²(πl/n))²
/// P_draw = 2 (cos(πk/n) + sin(πk/n))² cos²(πl/n) sin²(πl/n)
/// ```
pub fn probability_profile(n: u32, k: u32, l: u32) -> Result<ProbabilityProfile> {
    let (sk, ck) = move_element(n, k)?.half_angle().sin_cos();
    let (sl, cl) = move_element(n, l)?.half_angle().sin_cos();
    let (sl2, cl2) = (sl * sl, cl * cl);
    let tosser = ck * sl2 - sk * cl2;
    let gambler = ck * cl2 - sk * sl2;
    let mixed = ck + sk;
    Ok(ProbabilityProfile {
        p_tosser: tosser * tosser,
        p_gambler: gambler * gambler,
        p_draw: 2.0 * mixed * mixed * cl2 * sl2,
    })
}

/// The same profile obtained by simulating the circuit and squaring
/// amplitudes.
pub fn simulated_profile(n: u32, k: u32, l: u32) -> Result<ProbabilityProfile> {
    let state = psi2(n, k, l)?;
    Ok(ProbabilityProfile::from_distribution(&measure_probabilities(&state)))
}

/// Play one measured round with moves `k` and `l`.
pub fn measure_round(n: u32, k: u32, l: u32, rng: &mut Prng) -> Result<MeasurementOutcome> {
    let dist = measure_probabilities(&psi2(n, k, l)?);
    MeasurementOutcome::from_index(dist.draw(rng))
}

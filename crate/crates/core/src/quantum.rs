//! Dense real-amplitude linear algebra for one and two qubits.
//!
//! Basis ordering: a two-qubit basis index is `b = 2*q1 + q0`, with `q0` the
//! least significant qubit. Under this convention the CNOT with control `q0`
//! and target `q1` swaps indices 1 and 3, and [`tensor`]`(high, low)` places
//! `high` on `q1` and `low` on `q0`. All other code in the crate relies on
//! this single definition.
//!
//! Every gate the game needs (`Ry`, `H`, `X`, CNOT) is real, so amplitudes are
//! plain `f64`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::Prng;

/// Tolerance for the unit-norm check applied when a state is built from
/// caller-supplied amplitudes.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Tolerance for algebraic identities (orthogonality, composition).
pub const ALGEBRAIC_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleQubitGate {
    m: [[f64; 2]; 2],
}

impl SingleQubitGate {
    pub const IDENTITY: SingleQubitGate = SingleQubitGate {
        m: [[1.0, 0.0], [0.0, 1.0]],
    };

    /// Build a gate from a row-major matrix, rejecting non-finite or
    /// non-orthogonal input.
    pub fn from_matrix(m: [[f64; 2]; 2]) -> Result<Self> {
        if m.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::invalid("gate matrix has non-finite entries"));
        }
        let gate = Self { m };
        if !gate.is_orthogonal(ALGEBRAIC_TOLERANCE) {
            return Err(Error::invalid("gate matrix is not orthogonal"));
        }
        Ok(gate)
    }

    pub fn matrix(&self) -> [[f64; 2]; 2] {
        self.m
    }

    pub fn transpose(&self) -> Self {
        let m = self.m;
        Self {
            m: [[m[0][0], m[1][0]], [m[0][1], m[1][1]]],
        }
    }

    /// Matrix product `self · rhs` (apply `rhs` first).
    pub fn then_after(&self, rhs: &Self) -> Self {
        let mut out = [[0.0; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..2).map(|t| self.m[i][t] * rhs.m[t][j]).sum();
            }
        }
        Self { m: out }
    }

    pub fn apply(&self, v: [f64; 2]) -> [f64; 2] {
        [
            self.m[0][0] * v[0] + self.m[0][1] * v[1],
            self.m[1][0] * v[0] + self.m[1][1] * v[1],
        ]
    }

    pub fn is_orthogonal(&self, tol: f64) -> bool {
        let p = self.transpose().then_after(self);
        max_identity_deviation(&p.m) <= tol
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        max_abs_diff(self.m.iter().flatten(), other.m.iter().flatten())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitGate {
    m: [[f64; 4]; 4],
}

impl TwoQubitGate {
    pub const IDENTITY: TwoQubitGate = TwoQubitGate {
        m: [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ],
    };

    pub fn from_matrix(m: [[f64; 4]; 4]) -> Result<Self> {
        if m.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::invalid("gate matrix has non-finite entries"));
        }
        let gate = Self { m };
        if !gate.is_orthogonal(ALGEBRAIC_TOLERANCE) {
            return Err(Error::invalid("gate matrix is not orthogonal"));
        }
        Ok(gate)
    }

    pub fn matrix(&self) -> [[f64; 4]; 4] {
        self.m
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.m[row][col]
    }

    pub fn transpose(&self) -> Self {
        let mut out = [[0.0; 4]; 4];
        for (i, row) in self.m.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                out[j][i] = x;
            }
        }
        Self { m: out }
    }

    /// Matrix product `self · rhs`: the circuit that runs `rhs` then `self`.
    pub fn then_after(&self, rhs: &Self) -> Self {
        let mut out = [[0.0; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..4).map(|t| self.m[i][t] * rhs.m[t][j]).sum();
            }
        }
        Self { m: out }
    }

    pub fn is_orthogonal(&self, tol: f64) -> bool {
        let p = self.transpose().then_after(self);
        max_identity_deviation(&p.m) <= tol
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        max_abs_diff(self.m.iter().flatten(), other.m.iter().flatten())
    }
}

/// Two-qubit pure state with real amplitudes, indexed by `2*q1 + q0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 4]", into = "[f64; 4]")]
pub struct TwoQubitState {
    amp: [f64; 4],
}

impl TwoQubitState {
    pub fn new(amp: [f64; 4]) -> Result<Self> {
        if amp.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid("state has non-finite amplitudes"));
        }
        let state = Self { amp };
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::invalid(format!("state norm {norm} is not 1")));
        }
        Ok(state)
    }

    /// Computational basis state `|b⟩`.
    pub fn basis(b: usize) -> Result<Self> {
        if b > 3 {
            return Err(Error::invalid(format!("basis index {b} out of range 0..=3")));
        }
        let mut amp = [0.0; 4];
        amp[b] = 1.0;
        Ok(Self { amp })
    }

    pub fn amplitudes(&self) -> [f64; 4] {
        self.amp
    }

    pub fn amplitude(&self, b: usize) -> f64 {
        self.amp[b]
    }

    pub fn norm(&self) -> f64 {
        self.amp.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    /// Largest componentwise difference, minimised over an overall sign.
    pub fn distance_up_to_sign(&self, other: &Self) -> f64 {
        let plus = max_abs_diff(self.amp.iter(), other.amp.iter());
        let minus = self
            .amp
            .iter()
            .zip(&other.amp)
            .map(|(a, b)| (a + b).abs())
            .fold(0.0, f64::max);
        plus.min(minus)
    }

    pub fn probabilities(&self) -> MeasurementDistribution {
        measure_probabilities(self)
    }
}

impl TryFrom<[f64; 4]> for TwoQubitState {
    type Error = Error;

    fn try_from(amp: [f64; 4]) -> Result<Self> {
        Self::new(amp)
    }
}

impl From<TwoQubitState> for [f64; 4] {
    fn from(s: TwoQubitState) -> Self {
        s.amp
    }
}

/// Outcome probabilities of a computational-basis measurement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementDistribution {
    p: [f64; 4],
}

impl MeasurementDistribution {
    pub fn probabilities(&self) -> [f64; 4] {
        self.p
    }

    pub fn get(&self, b: usize) -> f64 {
        self.p[b]
    }

    /// Draw one basis index by inverse-CDF sampling.
    pub fn draw(&self, rng: &mut Prng) -> usize {
        let u = rng.uniform();
        let mut acc = 0.0;
        for (b, &p) in self.p.iter().enumerate() {
            acc += p;
            if u < acc {
                return b;
            }
        }
        // Rounding left the cumulative sum a hair below 1; fall back to the
        // last outcome with non-zero mass.
        self.p.iter().rposition(|&p| p > 0.0).unwrap_or(3)
    }
}

/// `Ry(θ)`: rotation by `θ/2` about the Bloch-sphere y axis.
pub fn ry(theta: f64) -> Result<SingleQubitGate> {
    if !theta.is_finite() {
        return Err(Error::invalid(format!("rotation angle {theta} is not finite")));
    }
    let (s, c) = (theta / 2.0).sin_cos();
    Ok(SingleQubitGate {
        m: [[c, -s], [s, c]],
    })
}

pub fn hadamard() -> SingleQubitGate {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    SingleQubitGate {
        m: [[h, h], [h, -h]],
    }
}

pub fn pauli_x() -> SingleQubitGate {
    SingleQubitGate {
        m: [[0.0, 1.0], [1.0, 0.0]],
    }
}

/// CNOT with control `q0` and target `q1`: swaps basis indices 1 and 3.
pub fn cnot() -> TwoQubitGate {
    TwoQubitGate {
        m: [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
        ],
    }
}

/// Kronecker product `high ⊗ low`; `high` acts on `q1`, `low` on `q0`.
pub fn tensor(high: &SingleQubitGate, low: &SingleQubitGate) -> TwoQubitGate {
    let mut m = [[0.0; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = high.m[i / 2][j / 2] * low.m[i % 2][j % 2];
        }
    }
    TwoQubitGate { m }
}

pub fn apply(g: &TwoQubitGate, s: &TwoQubitState) -> TwoQubitState {
    let mut amp = [0.0; 4];
    for (i, a) in amp.iter_mut().enumerate() {
        *a = (0..4).map(|j| g.m[i][j] * s.amp[j]).sum();
    }
    TwoQubitState { amp }
}

/// `|0⟩_{q1} |1⟩_{q0}`, i.e. basis index 1.
pub fn initial_state() -> TwoQubitState {
    TwoQubitState {
        amp: [0.0, 1.0, 0.0, 0.0],
    }
}

pub fn measure_probabilities(s: &TwoQubitState) -> MeasurementDistribution {
    let mut p = s.amp.map(|a| a * a);
    // Absorb the floating-point drift of the norm so the result sums to 1.
    let total: f64 = p.iter().sum();
    if total > 0.0 {
        p.iter_mut().for_each(|x| *x /= total);
    }
    MeasurementDistribution { p }
}

/// Draw `shots` independent computational-basis measurements of `s` and
/// return the count per basis index.
pub fn sample(s: &TwoQubitState, rng: &mut Prng, shots: u64) -> Result<[u64; 4]> {
    if shots == 0 {
        return Err(Error::invalid("shots must be at least 1"));
    }
    let dist = measure_probabilities(s);
    let mut counts = [0u64; 4];
    for _ in 0..shots {
        counts[dist.draw(rng)] += 1;
    }
    Ok(counts)
}

fn max_abs_diff<'a>(
    a: impl Iterator<Item = &'a f64>,
    b: impl Iterator<Item = &'a f64>,
) -> f64 {
    a.zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn max_identity_deviation<const N: usize>(m: &[[f64; N]; N]) -> f64 {
    let mut worst = 0.0f64;
    for (i, row) in m.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((x - target).abs());
        }
    }
    worst
}

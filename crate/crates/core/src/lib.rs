//! Exact two-qubit engine for the quantum tapsilou coin game.
//!
//! The tosser entangles two coins with a rotation drawn from a cyclic group
//! of order `n`; the gambler answers by rotating the measurement basis with
//! another group element. Everything the game needs fits in a four-amplitude
//! real statevector, so the crate computes outcome probabilities both in
//! closed form and by explicit circuit simulation, and checks one against the
//! other.
//!
//! Modules:
//! - [`quantum`]: gates, states, measurement and shot sampling.
//! - [`group`]: the cyclic rotation group, rotated bases and dual exponents.
//! - [`game`]: player actions, probability profiles, sessions and betting.
//! - [`analysis`]: sweep tables, duality verification and Monte Carlo checks.

pub mod analysis;
pub mod error;
pub mod game;
pub mod group;
pub mod numfmt;
pub mod quantum;
pub mod rng;

pub use analysis::{
    export, monte_carlo_compare, phase1_table, phase2_table, verify_duality,
    verify_max_probability, DualityReport, ExportFormat, MaxProbabilityReport, MonteCarloReport,
    SweepReport, SweepRow,
};
pub use error::{Error, Result};
pub use game::{
    bell_phi_minus, bell_psi_minus, classical_probabilities, classical_round, gambler_action,
    measure_round, probability_profile, psi1, psi2, simulated_profile, tosser_action,
    ClassicalGameResult, GameSession, MeasurementOutcome, Phase, ProbabilityProfile, Round,
    SessionConfig,
};
pub use group::{GroupElement, RotatedBasis, RotationGroup, DEFAULT_MAX_ORDER};
pub use quantum::{MeasurementDistribution, SingleQubitGate, TwoQubitGate, TwoQubitState};
pub use rng::{Prng, DEFAULT_SEED};

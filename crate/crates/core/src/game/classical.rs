//! The classical game and its all-heads/all-tails generalisation to more
//! coins.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::MeasurementOutcome;
use crate::error::{Error, Result};
use crate::rng::Prng;

/// Largest coin count whose outcome space `2^coins` fits in a `u64`
/// denominator with room for the `1 − 2/2^coins` subtraction.
pub const MAX_COINS: u32 = 62;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalGameResult {
    pub coins: u32,
    pub p_player1: Ratio<u64>,
    pub p_player2: Ratio<u64>,
    pub p_neither: Ratio<u64>,
}

/// Exact win probabilities when player 1 needs all heads and player 2 all
/// tails.
pub fn classical_probabilities(coins: u32) -> Result<ClassicalGameResult> {
    if !(2..=MAX_COINS).contains(&coins) {
        return Err(Error::invalid(format!(
            "coin count {coins} outside 2..={MAX_COINS}"
        )));
    }
    let outcomes = 1u64 << coins;
    let single = Ratio::new(1, outcomes);
    Ok(ClassicalGameResult {
        coins,
        p_player1: single,
        p_player2: single,
        p_neither: Ratio::from_integer(1) - single * 2,
    })
}

/// Toss two fair coins. Heads maps to qubit value 0, so two heads lands on
/// the tosser's winning index.
pub fn classical_round(rng: &mut Prng) -> MeasurementOutcome {
    let high = usize::from(!rng.coin());
    let low = usize::from(!rng.coin());
    MeasurementOutcome::from_index(2 * high + low).expect("two bits index 0..=3")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_coins() {
        let r = classical_probabilities(2).unwrap();
        assert_eq!(r.p_player1, Ratio::new(1, 4));
        assert_eq!(r.p_player2, Ratio::new(1, 4));
        assert_eq!(r.p_neither, Ratio::new(1, 2));
    }

    #[test]
    fn table_rows() {
        let r = classical_probabilities(3).unwrap();
        assert_eq!(r.p_player1, Ratio::new(1, 8));
        assert_eq!(r.p_neither, Ratio::new(3, 4));
        let r = classical_probabilities(5).unwrap();
        assert_eq!(r.p_player1, Ratio::new(1, 32));
        assert_eq!(r.p_neither, Ratio::new(15, 16));
        let shown = (*r.p_neither.numer() as f64) / (*r.p_neither.denom() as f64);
        assert!((shown - 0.938).abs() < 1e-3);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(classical_probabilities(1).is_err());
        assert!(classical_probabilities(0).is_err());
        assert!(classical_probabilities(63).is_err());
        let r = classical_probabilities(62).unwrap();
        assert_eq!(r.p_player1 + r.p_player2 + r.p_neither, Ratio::from_integer(1));
    }

    #[test]
    fn fair_for_every_count() {
        for coins in 2..=MAX_COINS {
            let r = classical_probabilities(coins).unwrap();
            assert_eq!(r.p_player1, r.p_player2);
            assert_eq!(r.p_player1 + r.p_player2 + r.p_neither, Ratio::from_integer(1));
        }
    }

    #[test]
    fn rounds_match_quarter_and_half() {
        let rounds = 1_000_000u32;
        let mut rng = Prng::new(crate::rng::DEFAULT_SEED);
        let (mut tosser, mut draw) = (0u32, 0u32);
        for _ in 0..rounds {
            match classical_round(&mut rng) {
                MeasurementOutcome::TosserWins => tosser += 1,
                o if o.is_draw() => draw += 1,
                _ => {}
            }
        }
        let n = f64::from(rounds);
        let check = |count: u32, p: f64| {
            let sigma = (p * (1.0 - p) / n).sqrt();
            assert!((f64::from(count) / n - p).abs() < 4.0 * sigma);
        };
        check(tosser, 0.25);
        check(draw, 0.5);
    }

    #[test]
    fn rounds_replay_under_seed() {
        let a: Vec<_> = {
            let mut rng = Prng::new(8);
            (0..100).map(|_| classical_round(&mut rng)).collect()
        };
        let b: Vec<_> = {
            let mut rng = Prng::new(8);
            (0..100).map(|_| classical_round(&mut rng)).collect()
        };
        assert_eq!(a, b);
    }
}

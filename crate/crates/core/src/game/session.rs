//! One betting game between a tosser and a gambler.
//!
//! Phases advance `AwaitingTosser → AwaitingGambler → ReadyToMeasure`, after
//! which a measurement either settles the game or, on a draw, loops back to
//! `AwaitingTosser` for a fresh round. Between rounds the gambler may keep or
//! raise the bet. Money only moves at settlement: a tosser win moves `bet`
//! from gambler to tosser, a gambler win moves `2 × bet` the other way.

use serde::{Deserialize, Serialize};

use super::{measure_round, probability_profile, MeasurementOutcome, ProbabilityProfile};
use crate::error::{Error, Result};
use crate::group::RotationGroup;
use crate::rng::Prng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    AwaitingTosser,
    AwaitingGambler,
    ReadyToMeasure,
    Settled,
}

impl Phase {
    pub fn as_str(&self) -> &'static str {
        match self {
            Phase::AwaitingTosser => "awaiting_tosser",
            Phase::AwaitingGambler => "awaiting_gambler",
            Phase::ReadyToMeasure => "ready_to_measure",
            Phase::Settled => "settled",
        }
    }

    /// Whether the protocol allows moving from `self` to `next`.
    pub fn can_advance_to(&self, next: Phase) -> bool {
        use Phase::*;
        matches!(
            (self, next),
            (AwaitingTosser, AwaitingGambler)
                | (AwaitingGambler, ReadyToMeasure)
                | (ReadyToMeasure, Settled)
                | (ReadyToMeasure, AwaitingTosser)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Round {
    pub k: u32,
    pub l: u32,
    pub outcome: MeasurementOutcome,
    pub profile: ProbabilityProfile,
    pub bet: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionConfig {
    pub n: u32,
    pub bet: u64,
    pub tosser_bankroll: u64,
    pub gambler_bankroll: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameSession {
    id: String,
    n: u32,
    phase: Phase,
    pending_k: Option<u32>,
    pending_l: Option<u32>,
    bet: u64,
    tosser_bankroll: u64,
    gambler_bankroll: u64,
    history: Vec<Round>,
    rng: Prng,
}

impl GameSession {
    pub fn new(id: impl Into<String>, config: SessionConfig) -> Result<Self> {
        RotationGroup::new(config.n)?;
        let session = Self {
            id: id.into(),
            n: config.n,
            phase: Phase::AwaitingTosser,
            pending_k: None,
            pending_l: None,
            bet: config.bet,
            tosser_bankroll: config.tosser_bankroll,
            gambler_bankroll: config.gambler_bankroll,
            history: Vec::new(),
            rng: Prng::new(config.seed),
        };
        session.check_funds(config.bet)?;
        Ok(session)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn pending_k(&self) -> Option<u32> {
        self.pending_k
    }

    pub fn pending_l(&self) -> Option<u32> {
        self.pending_l
    }

    pub fn bet(&self) -> u64 {
        self.bet
    }

    pub fn tosser_bankroll(&self) -> u64 {
        self.tosser_bankroll
    }

    pub fn gambler_bankroll(&self) -> u64 {
        self.gambler_bankroll
    }

    pub fn total_money(&self) -> u128 {
        u128::from(self.tosser_bankroll) + u128::from(self.gambler_bankroll)
    }

    pub fn history(&self) -> &[Round] {
        &self.history
    }

    pub fn rng_seed(&self) -> u64 {
        self.rng.seed()
    }

    pub fn rng_position(&self) -> u64 {
        self.rng.position()
    }

    /// Profile of the pending round once both moves are known.
    pub fn pending_profile(&self) -> Option<ProbabilityProfile> {
        match (self.pending_k, self.pending_l) {
            (Some(k), Some(l)) => probability_profile(self.n, k, l).ok(),
            _ => None,
        }
    }

    /// Whether the bet may be changed right now: only between rounds after a
    /// draw.
    pub fn bet_adjustable(&self) -> bool {
        self.phase == Phase::AwaitingTosser
            && self.history.last().is_some_and(|r| r.outcome.is_draw())
    }

    /// Keep or raise the bet after a draw.
    pub fn set_bet(&mut self, bet: u64) -> Result<()> {
        if !self.bet_adjustable() {
            return Err(Error::ProtocolViolation(
                "the bet can only be changed before a new round that follows a draw".into(),
            ));
        }
        if bet < self.bet {
            return Err(Error::invalid(format!(
                "bet may be kept or raised, not lowered ({} -> {bet})",
                self.bet
            )));
        }
        self.check_funds(bet)?;
        self.bet = bet;
        Ok(())
    }

    pub fn submit_tosser_move(&mut self, k: u32) -> Result<()> {
        self.expect_phase(Phase::AwaitingTosser, "tosser move")?;
        RotationGroup::new(self.n)?.exponent(k)?;
        self.check_funds(self.bet)?;
        self.pending_k = Some(k);
        self.phase = Phase::AwaitingGambler;
        Ok(())
    }

    pub fn submit_gambler_move(&mut self, l: u32) -> Result<()> {
        self.expect_phase(Phase::AwaitingGambler, "gambler move")?;
        RotationGroup::new(self.n)?.exponent(l)?;
        self.pending_l = Some(l);
        self.phase = Phase::ReadyToMeasure;
        Ok(())
    }

    /// Measure the coins and settle the bet. Returns the outcome.
    pub fn resolve(&mut self) -> Result<MeasurementOutcome> {
        self.expect_phase(Phase::ReadyToMeasure, "measurement")?;
        let (k, l) = match (self.pending_k, self.pending_l) {
            (Some(k), Some(l)) => (k, l),
            _ => {
                return Err(Error::ProtocolViolation(
                    "both moves must be made before measuring".into(),
                ))
            }
        };
        let profile = probability_profile(self.n, k, l)?;
        // Work on a copy of the generator so a failed settlement leaves the
        // session untouched.
        let mut rng = self.rng.clone();
        let outcome = measure_round(self.n, k, l, &mut rng)?;
        let (tosser, gambler) = self.settled_bankrolls(outcome)?;

        self.rng = rng;
        self.tosser_bankroll = tosser;
        self.gambler_bankroll = gambler;
        self.history.push(Round {
            k,
            l,
            outcome,
            profile,
            bet: self.bet,
        });
        self.pending_k = None;
        self.pending_l = None;
        self.phase = if outcome.is_draw() {
            Phase::AwaitingTosser
        } else {
            Phase::Settled
        };
        Ok(outcome)
    }

    fn settled_bankrolls(&self, outcome: MeasurementOutcome) -> Result<(u64, u64)> {
        let (t, g) = (self.tosser_bankroll, self.gambler_bankroll);
        match outcome {
            MeasurementOutcome::TosserWins => {
                let g = g.checked_sub(self.bet).ok_or(Error::InsufficientFunds {
                    payer: "gambler",
                    available: g,
                    required: self.bet,
                })?;
                Ok((t + self.bet, g))
            }
            MeasurementOutcome::GamblerWins => {
                let owed = self.bet * 2;
                let t = t.checked_sub(owed).ok_or(Error::InsufficientFunds {
                    payer: "tosser",
                    available: t,
                    required: owed,
                })?;
                Ok((t, g + owed))
            }
            MeasurementOutcome::Draw01 | MeasurementOutcome::Draw10 => Ok((t, g)),
        }
    }

    /// Both players must be able to cover their worst case at `bet`.
    fn check_funds(&self, bet: u64) -> Result<()> {
        let owed = bet.checked_mul(2).ok_or_else(|| Error::invalid("bet too large"))?;
        if self.tosser_bankroll.checked_add(owed).is_none()
            || self.gambler_bankroll.checked_add(owed).is_none()
        {
            return Err(Error::invalid("bankroll plus payout overflows"));
        }
        if owed > self.tosser_bankroll {
            return Err(Error::InsufficientFunds {
                payer: "tosser",
                available: self.tosser_bankroll,
                required: owed,
            });
        }
        if bet > self.gambler_bankroll {
            return Err(Error::InsufficientFunds {
                payer: "gambler",
                available: self.gambler_bankroll,
                required: bet,
            });
        }
        Ok(())
    }

    fn expect_phase(&self, expected: Phase, action: &str) -> Result<()> {
        if self.phase != expected {
            return Err(Error::ProtocolViolation(format!(
                "{action} requires phase {} but session is {}",
                expected.as_str(),
                self.phase.as_str()
            )));
        }
        Ok(())
    }
}

//! Probability sweeps, duality checks and Monte Carlo validation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{probability_profile, psi2, ProbabilityProfile};
use crate::group::RotationGroup;
use crate::numfmt::{format_sig, serialize_sig, serialize_sig_array};
use crate::quantum::sample;
use crate::rng::Prng;

/// Absolute tolerance for the duality and multiset identities.
pub const IDENTITY_TOLERANCE: f64 = 1e-12;

/// Monte Carlo acceptance bound, in binomial standard deviations.
pub const SIGMA_THRESHOLD: f64 = 4.0;

/// Probabilities within this distance of 0 or 1 are treated as certain
/// outcomes by the Monte Carlo screen.
const DEGENERATE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub index: u32,
    #[serde(serialize_with = "serialize_sig")]
    pub p_tosser: f64,
    #[serde(serialize_with = "serialize_sig")]
    pub p_gambler: f64,
    #[serde(serialize_with = "serialize_sig")]
    pub p_draw: f64,
}

impl SweepRow {
    fn new(index: u32, p: ProbabilityProfile) -> Self {
        Self {
            index,
            p_tosser: p.p_tosser,
            p_gambler: p.p_gambler,
            p_draw: p.p_draw,
        }
    }

    pub fn profile(&self) -> ProbabilityProfile {
        ProbabilityProfile {
            p_tosser: self.p_tosser,
            p_gambler: self.p_gambler,
            p_draw: self.p_draw,
        }
    }
}

/// Probabilities tabulated over every tosser move (`fixed_k` absent) or over
/// every gambler move for a fixed tosser move.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub n: u32,
    pub fixed_k: Option<u32>,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn row(&self, index: u32) -> Option<&SweepRow> {
        self.rows.get(index as usize).filter(|r| r.index == index)
    }

    pub fn from_json(bytes: &[u8]) -> Result<Self> {
        serde_json::from_slice(bytes).map_err(|e| Error::invalid(format!("bad report JSON: {e}")))
    }

    /// Parse the rows of a CSV export.
    pub fn rows_from_csv(bytes: &[u8]) -> Result<Vec<SweepRow>> {
        csv::Reader::from_reader(bytes)
            .deserialize()
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::invalid(format!("bad report CSV: {e}")))
    }
}

/// Tosser/gambler probabilities after the tosser's move alone, for every `k`.
pub fn phase1_table(n: u32) -> Result<SweepReport> {
    let group = RotationGroup::new(n)?;
    let rows = group
        .elements()
        .map(|e| Ok(SweepRow::new(e.exponent(), probability_profile(n, e.exponent(), 0)?)))
        .collect::<Result<_>>()?;
    Ok(SweepReport {
        n,
        fixed_k: None,
        rows,
    })
}

/// Final probabilities for every gambler move `l`, given tosser move `k`.
pub fn phase2_table(n: u32, k: u32) -> Result<SweepReport> {
    let group = RotationGroup::new(n)?;
    group.exponent(k)?;
    let rows = group
        .elements()
        .map(|e| Ok(SweepRow::new(e.exponent(), probability_profile(n, k, e.exponent())?)))
        .collect::<Result<_>>()?;
    Ok(SweepReport {
        n,
        fixed_k: Some(k),
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualityReport {
    pub n: u32,
    pub max_abs_error: f64,
    pub checked_pairs: u64,
    pub passed: bool,
}

/// Check `P_T(k, l*) = P_G(k, l)` and `P_G(k, l*) = P_T(k, l)` over all
/// `n²` move pairs, with `l* = (l + n/2) mod n`.
pub fn verify_duality(n: u32) -> Result<DualityReport> {
    let group = RotationGroup::new(n)?;
    if !group.is_even() {
        return Err(Error::UnsupportedOrder(n));
    }
    let mut max_abs_error = 0.0f64;
    let mut checked_pairs = 0u64;
    for k in group.elements() {
        let table = phase2_table(n, k.exponent())?;
        for l in group.elements() {
            let here = table.rows[l.exponent() as usize];
            let dual = table.rows[l.dual()?.exponent() as usize];
            max_abs_error = max_abs_error
                .max((dual.p_tosser - here.p_gambler).abs())
                .max((dual.p_gambler - here.p_tosser).abs());
            checked_pairs += 1;
        }
    }
    let expected_pairs = u64::from(n) * u64::from(n);
    Ok(DualityReport {
        n,
        max_abs_error,
        checked_pairs,
        passed: max_abs_error < IDENTITY_TOLERANCE && checked_pairs == expected_pairs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaxProbabilityReport {
    pub n: u32,
    pub k: u32,
    #[serde(serialize_with = "serialize_sig")]
    pub tosser_max: f64,
    pub tosser_argmax: u32,
    #[serde(serialize_with = "serialize_sig")]
    pub gambler_max: f64,
    pub gambler_argmax: u32,
    /// Maxima agree within [`IDENTITY_TOLERANCE`].
    pub equal: bool,
    /// The sorted win probabilities over `l` agree element by element.
    pub multiset_equal: bool,
}

/// For a fixed tosser move, compare both players' best achievable
/// probabilities and their full distributions over the gambler's choices.
pub fn verify_max_probability(n: u32, k: u32) -> Result<MaxProbabilityReport> {
    let table = phase2_table(n, k)?;
    if !n.is_multiple_of(2) {
        return Err(Error::UnsupportedOrder(n));
    }
    let argmax = |get: fn(&SweepRow) -> f64| {
        table
            .rows
            .iter()
            .fold((0u32, f64::NEG_INFINITY), |best, r| {
                if get(r) > best.1 {
                    (r.index, get(r))
                } else {
                    best
                }
            })
    };
    let (tosser_argmax, tosser_max) = argmax(|r| r.p_tosser);
    let (gambler_argmax, gambler_max) = argmax(|r| r.p_gambler);

    let mut tosser: Vec<f64> = table.rows.iter().map(|r| r.p_tosser).collect();
    let mut gambler: Vec<f64> = table.rows.iter().map(|r| r.p_gambler).collect();
    tosser.sort_by(f64::total_cmp);
    gambler.sort_by(f64::total_cmp);
    let multiset_equal = tosser
        .iter()
        .zip(&gambler)
        .all(|(a, b)| (a - b).abs() < IDENTITY_TOLERANCE);

    Ok(MaxProbabilityReport {
        n,
        k,
        tosser_max,
        tosser_argmax,
        gambler_max,
        gambler_argmax,
        equal: (tosser_max - gambler_max).abs() < IDENTITY_TOLERANCE,
        multiset_equal,
    })
}

/// Outcome order used by the three-element arrays below.
pub const OUTCOME_LABELS: [&str; 3] = ["tosser", "gambler", "draw"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloReport {
    pub n: u32,
    pub k: u32,
    pub l: u32,
    pub shots: u64,
    pub seed: u64,
    /// Counts for tosser, gambler and draw, in that order.
    pub counts: [u64; 3],
    #[serde(serialize_with = "serialize_sig_array")]
    pub empirical: [f64; 3],
    pub closed_form: ProbabilityProfile,
    /// `|freq − p| / √(p(1−p)/shots)` per outcome. Certain outcomes report 0
    /// when their count is exact and infinity otherwise.
    pub sigma_distances: [f64; 3],
    pub max_sigma_distance: f64,
}

impl MonteCarloReport {
    pub fn passed(&self) -> bool {
        self.max_sigma_distance < SIGMA_THRESHOLD
    }
}

/// Sample the final state `shots` times and compare the observed outcome
/// frequencies with the closed-form profile.
pub fn monte_carlo_compare(n: u32, k: u32, l: u32, shots: u64, seed: u64) -> Result<MonteCarloReport> {
    let state = psi2(n, k, l)?;
    let closed_form = probability_profile(n, k, l)?;
    let mut rng = Prng::new(seed);
    let raw = sample(&state, &mut rng, shots)?;
    let counts = [raw[0], raw[3], raw[1] + raw[2]];
    let expected = [closed_form.p_tosser, closed_form.p_gambler, closed_form.p_draw];
    let total = shots as f64;

    let empirical = counts.map(|c| c as f64 / total);
    let mut sigma_distances = [0.0; 3];
    for i in 0..3 {
        let p = expected[i];
        sigma_distances[i] = if p < DEGENERATE_EPS {
            if counts[i] == 0 { 0.0 } else { f64::INFINITY }
        } else if p > 1.0 - DEGENERATE_EPS {
            if counts[i] == shots { 0.0 } else { f64::INFINITY }
        } else {
            (empirical[i] - p).abs() / (p * (1.0 - p) / total).sqrt()
        };
    }
    let max_sigma_distance = sigma_distances.iter().copied().fold(0.0, f64::max);

    Ok(MonteCarloReport {
        n,
        k,
        l,
        shots,
        seed,
        counts,
        empirical,
        closed_form,
        sigma_distances,
        max_sigma_distance,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportFormat {
    Csv,
    Json,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::invalid(format!("unknown export format {other:?}"))),
        }
    }
}

impl fmt::Display for ExportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Csv => "csv",
            Self::Json => "json",
        })
    }
}

pub const CSV_HEADER: [&str; 4] = ["index", "p_tosser", "p_gambler", "p_draw"];

/// Serialize a sweep. CSV carries the header `index,p_tosser,p_gambler,p_draw`
/// with LF line endings; JSON mirrors [`SweepReport`]. Probabilities are
/// written with 12 significant digits in both formats.
pub fn export(report: &SweepReport, format: ExportFormat) -> Vec<u8> {
    match format {
        ExportFormat::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(Vec::new());
            w.write_record(CSV_HEADER).expect("writing to memory");
            for r in &report.rows {
                w.write_record([
                    r.index.to_string(),
                    format_sig(r.p_tosser),
                    format_sig(r.p_gambler),
                    format_sig(r.p_draw),
                ])
                .expect("writing to memory");
            }
            w.into_inner().expect("flushing to memory")
        }
        ExportFormat::Json => {
            let mut out = serde_json::to_vec_pretty(report).expect("reports serialize");
            out.push(b'\n');
            out
        }
    }
}

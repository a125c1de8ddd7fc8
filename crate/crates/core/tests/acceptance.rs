//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! and exits non-zero if any fail.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use tapsilou_core::quantum::{apply, cnot, initial_state, measure_probabilities, ry, tensor};
use tapsilou_core::{
    bell_phi_minus, bell_psi_minus, classical_probabilities, monte_carlo_compare, phase1_table,
    phase2_table, probability_profile, tosser_action, verify_duality, verify_max_probability,
    GameSession, Phase, SessionConfig, SingleQubitGate, DEFAULT_SEED,
};

const TABLE_TOL: f64 = 1e-3;
const EXACT_TOL: f64 = 1e-12;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let detail = f()?;
    let elapsed = start.elapsed();
    ensure(elapsed < limit, format!("took {elapsed:?}, limit {limit:?}"))?;
    Ok(format!("{detail} ({elapsed:.2?})"))
}

fn tosser_sweep() -> Outcome {
    timed(Duration::from_secs(1), || {
        let t = phase1_table(16).map_err(|e| e.to_string())?;
        let reference = [0.0, 0.038, 0.146, 0.309, 0.5, 0.691, 0.854, 0.962, 1.0];
        for (k, &tosser) in reference.iter().enumerate() {
            for idx in [k, (16 - k) % 16] {
                let r = &t.rows[idx];
                ensure(
                    (r.p_tosser - tosser).abs() < TABLE_TOL
                        && (r.p_gambler - (1.0 - tosser)).abs() < TABLE_TOL,
                    format!("k={idx}: got ({:.4}, {:.4})", r.p_tosser, r.p_gambler),
                )?;
            }
        }
        Ok("16 rows match the reference values".into())
    })
}

fn gambler_sweep() -> Outcome {
    timed(Duration::from_secs(1), || {
        let t = phase2_table(16, 6).map_err(|e| e.to_string())?;
        let tosser = [0.854, 0.764, 0.537, 0.271, 0.073, 0.0, 0.037, 0.111, 0.146];
        let gambler = [0.146, 0.111, 0.037, 0.0, 0.073, 0.271, 0.537, 0.764, 0.854];
        for l in 0..=8usize {
            for idx in [l, (16 - l) % 16] {
                let r = &t.rows[idx];
                ensure(
                    (r.p_tosser - tosser[l]).abs() < TABLE_TOL
                        && (r.p_gambler - gambler[l]).abs() < TABLE_TOL,
                    format!("l={idx}: got ({:.5}, {:.5})", r.p_tosser, r.p_gambler),
                )?;
            }
        }
        let zero = t.rows[5].p_tosser;
        ensure((zero - 4.2e-4).abs() < 1e-5, format!("zero entry is {zero:e}"))?;
        Ok(format!("all 16 gambler moves match; the rounded 0 is {zero:.2e}"))
    })
}

fn classical_odds() -> Outcome {
    let expected = [(3u32, 8u64, Ratio::new(3u64, 4)), (4, 16, Ratio::new(7, 8)), (5, 32, Ratio::new(15, 16))];
    for (coins, denom, neither) in expected {
        let r = classical_probabilities(coins).map_err(|e| e.to_string())?;
        ensure(
            r.p_player1 == Ratio::new(1, denom) && r.p_player2 == Ratio::new(1, denom),
            format!("coins={coins}: players {} / {}", r.p_player1, r.p_player2),
        )?;
        ensure(r.p_neither == neither, format!("coins={coins}: neither {}", r.p_neither))?;
    }
    Ok("1/8, 1/16, 1/32 per player; 3/4, 7/8, 15/16 neither".into())
}

fn duality() -> Outcome {
    timed(Duration::from_secs(10), || {
        let mut worst = 0.0f64;
        let mut orders = 0;
        for n in (2..=128u32).step_by(2) {
            let r = verify_duality(n).map_err(|e| e.to_string())?;
            ensure(
                r.passed && r.checked_pairs == u64::from(n) * u64::from(n),
                format!("n={n}: err {:e}, pairs {}", r.max_abs_error, r.checked_pairs),
            )?;
            worst = worst.max(r.max_abs_error);
            orders += 1;
        }
        ensure(worst < EXACT_TOL, format!("max error {worst:e}"))?;
        Ok(format!("{orders} even orders, max error {worst:.1e}"))
    })
}

fn equal_maxima() -> Outcome {
    let r = verify_max_probability(16, 6).map_err(|e| e.to_string())?;
    ensure(
        (r.tosser_max - 0.854).abs() < TABLE_TOL && (r.gambler_max - 0.854).abs() < TABLE_TOL,
        format!("maxima {} / {}", r.tosser_max, r.gambler_max),
    )?;
    for k in 0..16 {
        let r = verify_max_probability(16, k).map_err(|e| e.to_string())?;
        ensure(r.multiset_equal && r.equal, format!("k={k}: multisets differ"))?;
    }
    Ok(format!("both maxima {:.3}; multisets agree for every k", r.tosser_max))
}

fn phase1_regression() -> Outcome {
    let mut worst = 0.0f64;
    for k in 0..16u32 {
        let s = apply(&tosser_action(16, k).map_err(|e| e.to_string())?, &initial_state());
        let t = PI * f64::from(k) / 16.0;
        let expected = [-t.sin(), 0.0, 0.0, t.cos()];
        for (a, b) in s.amplitudes().iter().zip(expected) {
            worst = worst.max((a - b).abs());
        }
    }
    ensure(worst < EXACT_TOL, format!("max deviation {worst:e}"))?;
    Ok(format!("max deviation {worst:.1e}"))
}

/// Full circuit built from raw gates, independent of the game module.
fn circuit_distribution(n: u32, k: u32, l: u32) -> [f64; 4] {
    let theta = |e: u32| 2.0 * PI * f64::from(e) / f64::from(n);
    let tosser = cnot().then_after(&tensor(&SingleQubitGate::IDENTITY, &ry(theta(k)).unwrap()));
    let g = ry(theta(l)).unwrap();
    let state = apply(&tensor(&g, &g), &apply(&tosser, &initial_state()));
    state.amplitudes().map(|a| a * a)
}

fn closed_form_vs_circuit() -> Outcome {
    let mut worst = 0.0f64;
    let mut worst_norm = 0.0f64;
    let mut pairs = 0u64;
    for n in 1..=64u32 {
        for k in 0..n {
            for l in 0..n {
                let p = probability_profile(n, k, l).map_err(|e| e.to_string())?;
                let c = circuit_distribution(n, k, l);
                worst = worst
                    .max((p.p_tosser - c[0]).abs())
                    .max((p.p_gambler - c[3]).abs())
                    .max((p.p_draw - (c[1] + c[2])).abs());
                worst_norm = worst_norm.max((p.total() - 1.0).abs());
                pairs += 1;
            }
        }
    }
    ensure(worst < EXACT_TOL, format!("max deviation {worst:e}"))?;
    ensure(worst_norm < EXACT_TOL, format!("max normalization error {worst_norm:e}"))?;
    Ok(format!("{pairs} (n,k,l) triples, deviation {worst:.1e}, norm error {worst_norm:.1e}"))
}

fn bell_states() -> Outcome {
    let phi = measure_probabilities(&bell_phi_minus()).probabilities();
    ensure(
        (phi[0] - 0.5).abs() < EXACT_TOL
            && (phi[3] - 0.5).abs() < EXACT_TOL
            && phi[1].abs() < EXACT_TOL
            && phi[2].abs() < EXACT_TOL,
        format!("phi- distribution {phi:?}"),
    )?;
    let psi = measure_probabilities(&bell_psi_minus()).probabilities();
    ensure(
        (psi[1] - 0.5).abs() < EXACT_TOL
            && (psi[2] - 0.5).abs() < EXACT_TOL
            && psi[0].abs() < EXACT_TOL
            && psi[3].abs() < EXACT_TOL,
        format!("psi- distribution {psi:?}"),
    )?;
    Ok("phi- splits |00>/|11>, psi- splits |01>/|10> with no winner".into())
}

fn monte_carlo() -> Outcome {
    let mut parts = Vec::new();
    for l in [0u32, 6, 8] {
        let a = monte_carlo_compare(16, 6, l, 100_000, DEFAULT_SEED).map_err(|e| e.to_string())?;
        let b = monte_carlo_compare(16, 6, l, 100_000, DEFAULT_SEED).map_err(|e| e.to_string())?;
        ensure(a == b, format!("l={l}: repeated run differs"))?;
        ensure(a.passed(), format!("l={l}: {:.2} sigma", a.max_sigma_distance))?;
        parts.push(format!("l={l}: {:.2}σ", a.max_sigma_distance));
    }
    Ok(parts.join(", "))
}

fn session_betting() -> Outcome {
    let cfg = SessionConfig {
        n: 16,
        bet: 10,
        tosser_bankroll: 100,
        gambler_bankroll: 100,
        seed: DEFAULT_SEED,
    };
    let mut s = GameSession::new("scripted", cfg).map_err(|e| e.to_string())?;
    s.submit_tosser_move(0).map_err(|e| e.to_string())?;
    s.submit_gambler_move(0).map_err(|e| e.to_string())?;
    s.resolve().map_err(|e| e.to_string())?;
    ensure(
        s.tosser_bankroll() == 80 && s.gambler_bankroll() == 120,
        format!("bankrolls {} / {}", s.tosser_bankroll(), s.gambler_bankroll()),
    )?;

    #[derive(Debug, Clone)]
    enum Req {
        Tosser(u32),
        Gambler(u32),
        Measure,
        Bet(u64),
    }
    let req = prop_oneof![
        (0u32..18).prop_map(Req::Tosser),
        (0u32..18).prop_map(Req::Gambler),
        Just(Req::Measure),
        (0u64..60).prop_map(Req::Bet),
    ];
    let strategy = (any::<u64>(), 0u64..30, prop::collection::vec(req, 0..80));
    let mut runner = TestRunner::new(Config {
        cases: 512,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&strategy, |(seed, bet, reqs)| {
            let cfg = SessionConfig {
                n: 16,
                bet,
                tosser_bankroll: 100,
                gambler_bankroll: 100,
                seed,
            };
            let mut s = GameSession::new("p", cfg).unwrap();
            let total = s.total_money();
            for r in reqs {
                let before = s.phase();
                let ok = match r {
                    Req::Tosser(k) => s.submit_tosser_move(k).is_ok(),
                    Req::Gambler(l) => s.submit_gambler_move(l).is_ok(),
                    Req::Measure => s.resolve().is_ok(),
                    Req::Bet(b) => s.set_bet(b).is_ok(),
                };
                let after = s.phase();
                prop_assert!(after == before || before.can_advance_to(after));
                prop_assert!(ok || after == before);
                prop_assert_eq!(s.total_money(), total);
                if after == Phase::Settled {
                    prop_assert!(s.history().last().is_some_and(|r| !r.outcome.is_draw()));
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok("scripted game ends -20/+20; 512 random request sequences stay legal and conserve money".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("Phase-1 tosser sweep matches reference values (n=16)", tosser_sweep),
        ("Phase-2 gambler sweep matches reference values (n=16, k=6)", gambler_sweep),
        ("Classical odds for 3 to 5 coins", classical_odds),
        ("Dual-basis identity for even n in 2..=128", duality),
        ("Equal maximum win probabilities (n=16)", equal_maxima),
        ("Phase-1 state regression (n=16, all k)", phase1_regression),
        ("Closed form vs circuit simulation (n<=64)", closed_form_vs_circuit),
        ("Bell-state checks", bell_states),
        ("Monte Carlo vs closed form (n=16, k=6)", monte_carlo),
        ("Session betting and phase legality", session_betting),
    ];
    let mut failures = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failures += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}

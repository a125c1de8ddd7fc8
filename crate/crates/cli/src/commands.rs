use std::io::Write;

use tapsilou_core::analysis::{OUTCOME_LABELS, SIGMA_THRESHOLD};
use tapsilou_core::numfmt::format_sig;
use tapsilou_core::{
    classical_probabilities, export, monte_carlo_compare, phase1_table, phase2_table,
    verify_duality, verify_max_probability, ExportFormat, RotationGroup, SweepReport,
};

use crate::{CliError, Format, OrderRange};

/// Validate an order flag, naming it in the error.
pub fn check_order(n: u32) -> Result<RotationGroup, CliError> {
    RotationGroup::new(n).map_err(|e| CliError::Usage(format!("--n: {e}")))
}

pub fn check_exponent(group: &RotationGroup, value: u32, flag: &str) -> Result<(), CliError> {
    group
        .exponent(value)
        .map(|_| ())
        .map_err(|e| CliError::Usage(format!("{flag}: {e}")))
}

pub fn analyze(
    out: &mut impl Write,
    phase: u8,
    n: u32,
    k: Option<u32>,
    format: Format,
) -> Result<(), CliError> {
    let group = check_order(n)?;
    let report = if phase == 1 {
        phase1_table(n)?
    } else {
        let k = k.ok_or_else(|| CliError::Usage("--k is required with --phase 2".into()))?;
        check_exponent(&group, k, "--k")?;
        phase2_table(n, k)?
    };
    match format {
        Format::Table => write_table(out, &report)?,
        Format::Csv => out.write_all(&export(&report, ExportFormat::Csv))?,
        Format::Json => out.write_all(&export(&report, ExportFormat::Json))?,
    }
    Ok(())
}

fn write_table(out: &mut impl Write, report: &SweepReport) -> std::io::Result<()> {
    let index = match report.fixed_k {
        Some(k) => {
            writeln!(out, "phase 2, n = {}, k = {k}", report.n)?;
            "l"
        }
        None => {
            writeln!(out, "phase 1, n = {}", report.n)?;
            "k"
        }
    };
    writeln!(out, "{index:>5} {:>10} {:>10} {:>10}", "tosser", "gambler", "draw")?;
    for r in &report.rows {
        writeln!(
            out,
            "{:>5} {:>10.6} {:>10.6} {:>10.6}",
            r.index, r.p_tosser, r.p_gambler, r.p_draw
        )?;
    }
    Ok(())
}

pub fn verify(out: &mut impl Write, range: OrderRange) -> Result<(), CliError> {
    check_order(range.end)?;
    let (mut verified, mut failed, mut skipped) = (0u32, 0u32, 0u32);
    for n in range.start..=range.end {
        if n % 2 != 0 {
            writeln!(out, "n = {n}: skipped (odd order)")?;
            skipped += 1;
            continue;
        }
        let duality = verify_duality(n)?;
        let mut max_ok = true;
        for k in 0..n {
            let r = verify_max_probability(n, k)?;
            if !(r.equal && r.multiset_equal) {
                max_ok = false;
                writeln!(
                    out,
                    "n = {n}, k = {k}: maxima differ (tosser {} at l = {}, gambler {} at l = {})",
                    r.tosser_max, r.tosser_argmax, r.gambler_max, r.gambler_argmax
                )?;
            }
        }
        let duality_text = if duality.passed {
            format!("duality OK, max_abs_error < 1e-12 ({:.1e})", duality.max_abs_error)
        } else {
            format!("duality FAILED, max_abs_error = {:e}", duality.max_abs_error)
        };
        let max_text = if max_ok { "equal maxima OK" } else { "equal maxima FAILED" };
        writeln!(
            out,
            "n = {n}: {duality_text}; {max_text} ({} pairs)",
            duality.checked_pairs
        )?;
        if duality.passed && max_ok {
            verified += 1;
        } else {
            failed += 1;
        }
    }
    writeln!(out, "{verified} even orders verified, {failed} failed, {skipped} skipped")?;
    if failed > 0 {
        return Err(CliError::Runtime(format!("{failed} orders failed verification")));
    }
    Ok(())
}

pub fn simulate(
    out: &mut impl Write,
    n: u32,
    k: u32,
    l: u32,
    shots: u64,
    seed: u64,
) -> Result<(), CliError> {
    let group = check_order(n)?;
    check_exponent(&group, k, "--k")?;
    check_exponent(&group, l, "--l")?;
    if shots == 0 {
        return Err(CliError::Usage("--shots: must be at least 1".into()));
    }
    let r = monte_carlo_compare(n, k, l, shots, seed)?;
    let expected = [r.closed_form.p_tosser, r.closed_form.p_gambler, r.closed_form.p_draw];
    writeln!(out, "n = {n}, k = {k}, l = {l}, shots = {shots}, seed = {seed}")?;
    writeln!(
        out,
        "{:<8} {:>10} {:>10} {:>12} {:>8}",
        "outcome", "count", "empirical", "closed form", "sigma"
    )?;
    for i in 0..3 {
        writeln!(
            out,
            "{:<8} {:>10} {:>10.6} {:>12.6} {:>8.2}",
            OUTCOME_LABELS[i], r.counts[i], r.empirical[i], expected[i], r.sigma_distances[i]
        )?;
    }
    let verdict = if r.passed() { "PASS" } else { "FAIL" };
    writeln!(
        out,
        "max sigma distance {:.2} (threshold {SIGMA_THRESHOLD}): {verdict}",
        r.max_sigma_distance
    )?;
    if !r.passed() {
        return Err(CliError::Runtime(format!(
            "sampled frequencies are {:.2} sigma from the closed form",
            r.max_sigma_distance
        )));
    }
    Ok(())
}

pub fn classical(out: &mut impl Write, coins: u32) -> Result<(), CliError> {
    let r = classical_probabilities(coins).map_err(|e| CliError::Usage(format!("--coins: {e}")))?;
    writeln!(out, "classical game with {coins} coins")?;
    writeln!(out, "{:<16} {:>42} {:>20}", "outcome", "exact", "decimal")?;
    let rows = [
        ("player 1 wins", r.p_player1),
        ("player 2 wins", r.p_player2),
        ("neither", r.p_neither),
    ];
    for (label, p) in rows {
        let decimal = *p.numer() as f64 / *p.denom() as f64;
        writeln!(out, "{label:<16} {:>42} {:>20}", p.to_string(), format_sig(decimal))?;
    }
    Ok(())
}

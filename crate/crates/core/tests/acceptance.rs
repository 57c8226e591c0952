//! Runs every acceptance criterion, printing one line each, and exits
//! non-zero if any fails or overruns its time limit.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use skewbrace::cohomology::h2b;
use skewbrace::selftest::{criteria, run_criterion, Outcome};
use skewbrace::validate_brace;

/// Compares the library's torsion profile of `H²_b` with exhaustive
/// enumeration on every labelled brace of order at most 4.
fn oracle_cross_check() -> Result<String, String> {
    let mut pairs = 0;
    for n in 1..=4 {
        let top = if n <= 3 { 4 } else { 2 };
        for (add, circ) in common::braces(n) {
            let q = validate_brace(&add, &circ).map_err(|e| format!("library rejects a brace: {e}"))?;
            for m in 1..=top {
                let want = common::h2b_torsion_profile(&add, &circ, m);
                let h = h2b(&q, m);
                let got: Vec<u128> = (1..=m).map(|k| h.group().killed_by(k)).collect();
                if got != want {
                    return Err(format!("order {n}, m = {m}: library {got:?}, enumeration {want:?}"));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs agree with the test oracle"))
}

fn main() -> ExitCode {
    let mut failed = 0;
    for c in criteria() {
        let start = Instant::now();
        let mut outcome: Outcome = run_criterion(c, false);
        if c.id == 13 && outcome.passed {
            match oracle_cross_check() {
                Ok(d) => outcome.detail = format!("{}; {d}", outcome.detail),
                Err(e) => {
                    outcome.passed = false;
                    outcome.detail = e;
                }
            }
        }
        let elapsed = start.elapsed();
        outcome.elapsed_ms = elapsed.as_millis();
        if elapsed > c.limit && outcome.passed {
            outcome.passed = false;
            outcome.detail = format!("exceeded the time limit; {}", outcome.detail);
        }
        if !outcome.passed {
            failed += 1;
        }
        println!("{outcome}");
    }
    println!("acceptance: {} passed, {failed} failed", criteria().len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Human-readable and machine-readable report text.

use std::fmt::Write;

use super::RunReport;
use crate::qfactor::{factor, FactorBounds};
use crate::scalars::TracePoly;

/// Report with factored traces and check verdicts.
pub fn render_human(r: &RunReport) -> String {
    let f = &r.field;
    let mut s = String::new();
    writeln!(s, "# {}", r.title).unwrap();
    writeln!(s, "{}", f.spec()).unwrap();
    if !r.hilbert.is_empty() {
        let hs: Vec<String> = r.hilbert.iter().map(|d| d.to_string()).collect();
        let status = if r.complete { "complete" } else { "truncated" };
        writeln!(s, "dimension {} ({status})", r.dimension()).unwrap();
        let h = TracePoly::from_ints(f, &r.hilbert.iter().map(|&d| d as i64).collect::<Vec<_>>());
        writeln!(
            s,
            "hilbert {} = {}",
            hs.join(" "),
            factor(f, &h, &FactorBounds::default()).notation(f)
        )
        .unwrap();
    }
    if !r.lines.is_empty() {
        let width = r
            .lines
            .iter()
            .map(|l| l.label.chars().count())
            .max()
            .unwrap_or(0);
        writeln!(s, "\ngraded traces").unwrap();
        for l in &r.lines {
            let pad = width - l.label.chars().count();
            writeln!(
                s,
                "  tr_{}{} = {}",
                l.label,
                " ".repeat(pad),
                l.factorization.notation(f)
            )
            .unwrap();
        }
    }
    if !r.toy.is_empty() {
        writeln!(s, "\nconjugation characters").unwrap();
        for (label, row) in &r.toy {
            writeln!(
                s,
                "  {label}: {}  prediction {} x {:?}",
                row.character.format_coeffs(f),
                row.prediction.multiplier,
                row.prediction.symbols()
            )
            .unwrap();
        }
    }
    writeln!(s, "\nchecks").unwrap();
    for c in &r.checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        writeln!(s, "  {tag} {}: {}", c.name, c.detail).unwrap();
    }
    let failed = r.checks.iter().filter(|c| !c.passed).count();
    writeln!(s, "\n{} checks, {failed} failed", r.checks.len()).unwrap();
    s
}

/// One line per trace: `label | coefficients | factorization | t=1 | λ`.
pub fn render_machine(r: &RunReport) -> String {
    let f = &r.field;
    let mut s = String::new();
    for l in &r.lines {
        let lambda = l.lambda.as_ref().map_or("-".to_string(), |x| f.encode(x));
        writeln!(
            s,
            "{} | {} | {} | {} | {}",
            l.label,
            l.trace.encode(f),
            l.factorization.machine(f),
            f.encode(&l.at_one),
            lambda
        )
        .unwrap();
    }
    s
}

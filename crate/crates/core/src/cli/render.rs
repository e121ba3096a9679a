//! Text, JSON and CSV renderings of depth reports.

use std::fmt::Write;

use serde::Serialize;

use crate::hecke::{ToyReport, Verdict};
use crate::report::{DepthReport, REPORT_SCHEMA};

fn comparison(d: u64, v: u32) -> String {
    let v = v as u64;
    match d.cmp(&v) {
        std::cmp::Ordering::Greater => format!("D = {d} > val = {v} (strict)"),
        std::cmp::Ordering::Equal => format!("D = {d} = val = {v} (not strict)"),
        std::cmp::Ordering::Less => format!("D = {d} < val = {v}"),
    }
}

fn orbit_label(orbit: usize, lambda: usize) -> String {
    if lambda == 0 {
        orbit.to_string()
    } else {
        format!("{orbit}/{lambda}")
    }
}

fn one_text(r: &DepthReport) -> String {
    let mut s = String::new();
    let factors: Vec<String> = r.prime_factors.iter().map(|q| q.to_string()).collect();
    let _ = writeln!(s, "N = {} = {}, p = {}", r.level, factors.join("*"), r.p);
    let _ = writeln!(s, "Eisenstein constant term = {}", r.eisenstein_constant);
    let _ = writeln!(s, "scan bound = {}", r.bound);
    let _ = writeln!(s, "val_p(phi(N)) = {}", r.val_phi);
    let _ = writeln!(s, "val_p(num(phi(N)/24)) = {}", r.val_phi24_numerator);
    match r.ohta_bound {
        Some(o) => {
            let _ = writeln!(s, "Ohta bound = {o}");
        }
        None => {
            let _ = writeln!(s, "Ohta bound = n/a (p divides N)");
        }
    }
    let _ = writeln!(s, "{}", comparison(r.depth, r.val_phi));
    let agree = match r.prediction.predicts_strict() {
        Some(x) if x == r.strict => " [agrees]",
        Some(_) => " [DISAGREES]",
        None => "",
    };
    let _ = writeln!(s, "strictness prediction: {}{agree}", r.prediction.describe());
    match &r.index {
        Some(ix) => {
            let _ = writeln!(
                s,
                "val_p(#T/J) = {} (#T/J = {}, Hecke rank {}, generators l <= {})",
                ix.val_index, ix.index, ix.hecke_rank, ix.generator_bound
            );
            if let Some(loc) = &ix.local {
                let _ = writeln!(
                    s,
                    "local factor: rank {}, minimal generators {}, e(J,T) = {}, precision {}^{}",
                    loc.local_rank, loc.minimal_generators, loc.multiplicity, r.p, loc.kappa
                );
            }
            let verdict = r.verdict.map_or("n/a (no Eisenstein congruence)", Verdict::describe);
            let _ = writeln!(s, "verdict: {verdict}");
        }
        None => {
            let _ = writeln!(s, "val_p(#T/J) = not computed");
        }
    }
    let failed = r.failed_checks();
    if !failed.is_empty() {
        let _ = writeln!(s, "INVARIANT VIOLATIONS:");
        for c in failed {
            let _ = writeln!(s, "  {}: {}", c.name, c.detail);
        }
    }
    let _ = writeln!(s);
    let rows: Vec<[String; 5]> = r
        .records
        .iter()
        .map(|c| {
            [
                c.level.to_string(),
                c.r.to_string(),
                c.e.to_string(),
                c.residue_field_size().to_string(),
                orbit_label(c.orbit, c.lambda),
            ]
        })
        .collect();
    let head = ["level", "r", "ramindex", "resfield", "orbit"];
    let widths: Vec<usize> = (0..5)
        .map(|k| rows.iter().map(|row| row[k].len()).chain([head[k].len()]).max().unwrap())
        .collect();
    let line = |cells: &[&str]| -> String {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join(" | ")
    };
    let _ = writeln!(s, "{}", line(&head));
    let _ = writeln!(
        s,
        "{}",
        widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("-+-")
    );
    if rows.is_empty() {
        let _ = writeln!(s, "(no congruences)");
    }
    for row in &rows {
        let cells: Vec<&str> = row.iter().map(String::as_str).collect();
        let _ = writeln!(s, "{}", line(&cells));
    }
    s
}

pub fn render_text(reports: &[DepthReport]) -> String {
    reports.iter().map(one_text).collect::<Vec<_>>().join("\n")
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema: u32,
    reports: &'a [DepthReport],
}

pub fn render_json(reports: &[DepthReport]) -> String {
    let mut s = serde_json::to_string_pretty(&Envelope {
        schema: REPORT_SCHEMA,
        reports,
    })
    .expect("serializable");
    s.push('\n');
    s
}

pub fn render_csv(reports: &[DepthReport]) -> String {
    let mut s = String::from("N,p,level,r,ramindex,resfield,orbit,lambda\n");
    for r in reports {
        for c in &r.records {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{}",
                r.level,
                r.p,
                c.level,
                c.r,
                c.e,
                c.residue_field_size(),
                c.orbit,
                c.lambda
            );
        }
    }
    s
}

pub fn render_toy<'a>(items: impl Iterator<Item = (&'static str, &'a ToyReport)>) -> String {
    let mut s = String::new();
    let (mut total, mut ok, mut applied) = (0, 0, 0);
    for (k, (kind, r)) in items.enumerate() {
        total += 1;
        ok += r.passed() as usize;
        applied += r.theorem_applies as usize;
        let blocks: Vec<String> = r.block_colengths.iter().map(|x| x.to_string()).collect();
        let _ = write!(
            s,
            "{k:>3} {kind:<6} p={} n={} s={} len(T/J)={} sum len(Ti/Ji)={} [{}] nu={} e={} {}",
            r.p,
            r.n,
            r.s,
            r.colength,
            r.block_colengths.iter().sum::<u32>(),
            blocks.join(","),
            r.minimal_generators,
            r.multiplicity,
            if r.passed() { "ok" } else { "FAIL" }
        );
        if !r.notes.is_empty() {
            let _ = write!(s, " ({})", r.notes.join("; "));
        }
        s.push('\n');
    }
    let _ = writeln!(s, "{ok}/{total} passed; theorem hypotheses met in {applied}");
    s
}

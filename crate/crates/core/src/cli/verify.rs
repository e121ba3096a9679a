//! The `verify` suites: reference congruence tables with every report
//! invariant, the toy commutative-algebra checks and cache integrity.

use serde::Serialize;

use crate::error::Result;
use crate::hecke::{toy, ToySubalgebra};
use crate::newform::Engine;
use crate::report::{DepthReport, ReportOptions};

/// Expected congruence table: `(level, r, ramification index, residue field size)`.
#[derive(Clone, Debug)]
pub struct ReferenceCase {
    pub level: u64,
    pub p: u64,
    pub rows: Vec<(u64, u32, u32, u64)>,
}

/// Known tables of congruences for a range of levels and primes.
pub fn reference_tables() -> Vec<ReferenceCase> {
    let c = |level, p, rows: &[(u64, u32, u32, u64)]| ReferenceCase {
        level,
        p,
        rows: rows.to_vec(),
    };
    vec![
        c(55, 5, &[(11, 1, 1, 5)]),
        c(57, 3, &[(19, 1, 1, 3)]),
        c(66, 5, &[(11, 1, 1, 5), (66, 1, 1, 5)]),
        c(91, 3, &[(91, 1, 1, 3)]),
        c(155, 5, &[(31, 1, 2, 5), (155, 1, 1, 5)]),
        c(165, 5, &[(11, 1, 1, 5), (165, 1, 1, 5)]),
        c(182, 3, &[(14, 1, 1, 3), (26, 1, 1, 3), (91, 1, 1, 3), (182, 1, 1, 3)]),
        c(203, 5, &[(203, 1, 1, 5)]),
        c(203, 7, &[(29, 1, 1, 7)]),
        c(217, 3, &[(217, 1, 3, 3)]),
        c(217, 5, &[(31, 1, 2, 5)]),
        c(319, 5, &[(11, 1, 1, 5), (319, 1, 1, 5)]),
        c(319, 7, &[(29, 1, 1, 7)]),
        c(330, 5, &[(11, 1, 1, 5), (66, 1, 1, 5), (110, 1, 1, 5), (165, 1, 1, 5)]),
        c(341, 5, &[(11, 1, 1, 5), (31, 1, 2, 5), (341, 1, 2, 5)]),
        c(399, 3, &[(19, 1, 1, 3), (133, 2, 1, 3), (399, 2, 1, 3)]),
        c(418, 3, &[(19, 1, 1, 3), (38, 1, 1, 3), (209, 1, 1, 3), (209, 1, 3, 3), (418, 1, 1, 3), (418, 1, 2, 3)]),
        c(418, 5, &[(11, 1, 1, 5), (38, 1, 1, 5), (209, 1, 1, 5), (418, 1, 1, 5)]),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerifyOutcome {
    pub passed: bool,
    pub failures: Vec<CheckResult>,
    pub results: Vec<CheckResult>,
}

impl VerifyOutcome {
    fn push(&mut self, suite: &str, name: String, passed: bool, detail: String) {
        let r = CheckResult {
            suite: suite.to_string(),
            name,
            passed,
            detail,
        };
        if !passed {
            self.failures.push(r.clone());
        }
        self.results.push(r);
    }

    fn finish(mut self) -> Self {
        self.passed = self.failures.is_empty();
        self
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        for r in &self.results {
            let tag = if r.passed { "PASS" } else { "FAIL" };
            s.push_str(&format!("{tag} {}/{}: {}\n", r.suite, r.name, r.detail));
        }
        s.push_str(&format!(
            "{} checks, {} failed\n",
            self.results.len(),
            self.failures.len()
        ));
        s
    }
}

fn report_checks(out: &mut VerifyOutcome, r: &DepthReport) {
    for c in &r.checks {
        out.push("invariants", format!("{}/{}: {}", r.level, r.p, c.name), c.passed, c.detail.clone());
    }
}

pub fn verify_single(engine: &mut Engine, n: u64, p: u64) -> Result<VerifyOutcome> {
    let mut out = VerifyOutcome::default();
    let r = DepthReport::compute(engine, n, p, &ReportOptions::default())?;
    report_checks(&mut out, &r);
    Ok(out.finish())
}

fn sorted_rows(r: &DepthReport) -> Vec<(u64, u32, u32, u64)> {
    let mut v: Vec<_> = r
        .records
        .iter()
        .map(|c| (c.level, c.r, c.e, c.residue_field_size()))
        .collect();
    v.sort_unstable();
    v
}

pub fn verify_all(
    engine: &mut Engine,
    max_level: Option<u64>,
    toy_count: usize,
    seed: u64,
    mut progress: impl FnMut(String),
) -> Result<VerifyOutcome> {
    let mut out = VerifyOutcome::default();

    if let Some(cache) = engine.cache() {
        for m in cache.levels()? {
            let res = cache.load(m);
            let detail = match &res {
                Ok(_) => "checksums match".to_string(),
                Err(e) => e.to_string(),
            };
            out.push("cache", format!("level-{m}"), res.is_ok(), detail);
        }
    }

    for (kind, inst) in ToySubalgebra::hand_examples()
        .into_iter()
        .map(|i| ("worked", i))
        .chain(toy::random_instances(seed, toy_count).into_iter().map(|i| ("random", i)))
        .enumerate()
        .map(|(k, (kind, i))| (format!("{kind}-{k}"), i))
    {
        match inst.verify() {
            Ok(r) => out.push("toy", kind, r.passed(), format!("{r:?}")),
            Err(e) => out.push("toy", kind, false, e.to_string()),
        }
    }

    for case in reference_tables() {
        if max_level.is_some_and(|m| case.level > m) {
            continue;
        }
        progress(format!("verifying N = {}, p = {}", case.level, case.p));
        let name = format!("{}/{}", case.level, case.p);
        match DepthReport::compute(engine, case.level, case.p, &ReportOptions::default()) {
            Ok(r) => {
                let got = sorted_rows(&r);
                let mut want = case.rows.clone();
                want.sort_unstable();
                out.push("tables", name, got == want, format!("got {got:?}, expected {want:?}"));
                report_checks(&mut out, &r);
            }
            Err(e) => out.push("tables", name, false, e.to_string()),
        }
    }
    Ok(out.finish())
}

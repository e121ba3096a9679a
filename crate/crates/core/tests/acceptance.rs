//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use eisdepth::arith::{gcd_u64, primes_up_to, val_u64};
use eisdepth::congruence::{congruence_scan, strictness_prediction, sturm_bound};
use eisdepth::hecke::{toy, ToySubalgebra, Verdict};
use eisdepth::modsym::ModularSymbols;
use eisdepth::newform::{Engine, EngineConfig};
use eisdepth::report::{DepthReport, ReportOptions};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Row = (u64, u32, u32, u64);

/// `(N, p, rows (level, r, e, p^f))`.
fn tables() -> Vec<(u64, u64, Vec<Row>)> {
    vec![
        (165, 5, vec![(11, 1, 1, 5), (165, 1, 1, 5)]),
        (66, 5, vec![(11, 1, 1, 5), (66, 1, 1, 5)]),
        (330, 5, vec![(11, 1, 1, 5), (66, 1, 1, 5), (110, 1, 1, 5), (165, 1, 1, 5)]),
        (418, 5, vec![(11, 1, 1, 5), (38, 1, 1, 5), (209, 1, 1, 5), (418, 1, 1, 5)]),
        (217, 5, vec![(31, 1, 2, 5)]),
        (319, 5, vec![(11, 1, 1, 5), (319, 1, 1, 5)]),
        (319, 7, vec![(29, 1, 1, 7)]),
        (341, 5, vec![(11, 1, 1, 5), (31, 1, 2, 5), (341, 1, 2, 5)]),
        (55, 5, vec![(11, 1, 1, 5)]),
        (155, 5, vec![(31, 1, 2, 5), (155, 1, 1, 5)]),
        (203, 7, vec![(29, 1, 1, 7)]),
        (57, 3, vec![(19, 1, 1, 3)]),
        (91, 3, vec![(91, 1, 1, 3)]),
        (182, 3, vec![(14, 1, 1, 3), (26, 1, 1, 3), (91, 1, 1, 3), (182, 1, 1, 3)]),
        (217, 3, vec![(217, 1, 3, 3)]),
        (399, 3, vec![(19, 1, 1, 3), (133, 2, 1, 3), (399, 2, 1, 3)]),
        (
            418,
            3,
            vec![(19, 1, 1, 3), (38, 1, 1, 3), (209, 1, 1, 3), (209, 1, 3, 3), (418, 1, 1, 3), (418, 1, 2, 3)],
        ),
        (203, 5, vec![(203, 1, 1, 5)]),
    ]
}

struct Ctx {
    engine: Engine,
    reports: BTreeMap<(u64, u64), DepthReport>,
    elapsed: BTreeMap<(u64, u64), Duration>,
}

impl Ctx {
    fn report(&mut self, n: u64, p: u64) -> Result<&DepthReport, String> {
        if !self.reports.contains_key(&(n, p)) {
            let t = Instant::now();
            let r = DepthReport::compute(&mut self.engine, n, p, &ReportOptions::default())
                .map_err(|e| format!("{n}/{p}: {e}"))?;
            self.elapsed.insert((n, p), t.elapsed());
            self.reports.insert((n, p), r);
        }
        Ok(&self.reports[&(n, p)])
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rows(r: &DepthReport) -> Vec<Row> {
    let mut v: Vec<Row> = r.records.iter().map(|c| (c.level, c.r, c.e, c.residue_field_size())).collect();
    v.sort_unstable();
    v
}

fn table_reproduction(cx: &mut Ctx) -> Result<String, String> {
    let mut bad = Vec::new();
    for (n, p, mut want) in tables() {
        want.sort_unstable();
        let got = rows(cx.report(n, p)?);
        if got != want {
            bad.push(format!("{n}/{p}: got {got:?}, expected {want:?}"));
        }
        let t = cx.elapsed[&(n, p)];
        let budget = if n <= 217 { Duration::from_secs(60) } else { Duration::from_secs(900) };
        if t > budget {
            bad.push(format!("{n}/{p}: {t:.1?} over budget {budget:?}"));
        }
    }
    ensure(bad.is_empty(), || bad.join("; "))?;
    let slowest = cx.elapsed.iter().max_by_key(|(_, t)| **t).unwrap();
    Ok(format!("18 tables match; slowest {}/{} in {:.1?}", slowest.0 .0, slowest.0 .1, slowest.1))
}

fn depth_identities(cx: &mut Ctx) -> Result<String, String> {
    // (N, p, D, val_p(phi(N)))
    let cases = [
        (341, 5, 3, 2),
        (66, 5, 2, 1),
        (330, 5, 4, 1),
        (418, 5, 4, 1),
        (217, 5, 1, 1),
        (57, 3, 1, 2),
        (399, 3, 5, 3),
        (418, 3, 6, 2),
    ];
    for (n, p, d, v) in cases {
        let r = cx.report(n, p)?;
        ensure(r.depth == d && r.val_phi == v, || {
            format!("{n}/{p}: D = {}, val = {}; expected {d}, {v}", r.depth, r.val_phi)
        })?;
        ensure(r.strict == (d > v as u64), || format!("{n}/{p}: strict flag"))?;
    }
    Ok("8 depth identities hold".into())
}

fn prime_levels(cx: &mut Ctx) -> Result<String, String> {
    let t = Instant::now();
    let mut seen = Vec::new();
    for n in [11u64, 23, 31, 67] {
        let num = (n - 1) / gcd_u64(n - 1, 12);
        for p in primes_up_to(num).into_iter().filter(|&p| p >= 5 && num.is_multiple_of(p)) {
            let v = val_u64(num, p);
            let r = cx.report(n, p)?;
            let ix = r.index.as_ref().ok_or("index missing")?;
            let loc = ix.local.as_ref().ok_or_else(|| format!("{n}/{p}: no local data"))?;
            ensure(
                r.depth == v as u64 && ix.val_index == v && r.verdict == Some(Verdict::LocallyPrincipal) && loc.minimal_generators == 1,
                || format!("{n}/{p}: D = {}, val = {v}, index val = {}, nu = {}", r.depth, ix.val_index, loc.minimal_generators),
            )?;
            seen.push(format!("{n}/{p}"));
        }
    }
    ensure(seen.len() == 4, || format!("expected 4 pairs, got {seen:?}"))?;
    ensure(t.elapsed() < Duration::from_secs(10), || format!("took {:.1?}", t.elapsed()))?;
    Ok(format!("{} principal with D = val ({:.1?})", seen.join(", "), t.elapsed()))
}

fn index_inequality(cx: &mut Ctx) -> Result<String, String> {
    let mut count = 0;
    for (n, p, _) in tables().into_iter().filter(|t| t.1 >= 5) {
        let r = cx.report(n, p)?;
        let ix = r.index.as_ref().ok_or("index missing")?;
        ensure(r.depth >= ix.val_index as u64, || format!("{n}/{p}: D = {} < {}", r.depth, ix.val_index))?;
        let e = ix.local.as_ref().map_or(0, |l| l.multiplicity as u64);
        ensure(e == r.depth, || format!("{n}/{p}: e(J,T) = {e}, D = {}", r.depth))?;
        count += 1;
    }
    Ok(format!("D >= val_p(#T/J) and e(J,T) = D on {count} pairs"))
}

fn ohta(cx: &mut Ctx) -> Result<String, String> {
    let mut count = 0;
    for (n, p, _) in tables().into_iter().filter(|t| t.1 >= 5 && t.0 % t.1 != 0) {
        let r = cx.report(n, p)?;
        let v = r.index.as_ref().ok_or("index missing")?.val_index;
        let o = ohta_bound_oracle(n, p);
        ensure(v >= o, || format!("{n}/{p}: val_p(#T/J) = {v} < {o}"))?;
        count += 1;
    }
    Ok(format!("index bound holds on {count} pairs"))
}

fn ohta_bound_oracle(n: u64, p: u64) -> u32 {
    eisdepth::arith::prime_divisors(n)
        .into_iter()
        .map(|q| val_u64(q * q - 1, p))
        .sum()
}

fn strictness(cx: &mut Ctx) -> Result<String, String> {
    for (n, p, strict) in [(217u64, 5u64, false), (319, 5, true), (319, 7, false), (341, 5, true)] {
        let predicted = strictness_prediction(n, p).predicts_strict();
        let r = cx.report(n, p)?;
        ensure(predicted == Some(strict) && r.strict == strict, || {
            format!("{n}/{p}: predicted {predicted:?}, observed {}, expected {strict}", r.strict)
        })?;
    }
    Ok("predicate matches on 4 two-prime levels".into())
}

fn toy_suite(_: &mut Ctx) -> Result<String, String> {
    let t = Instant::now();
    let hand = ToySubalgebra::hand_examples();
    let reps: Vec<_> = hand.iter().map(|i| i.verify().map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
    let shape: Vec<_> = reps
        .iter()
        .map(|r| (r.colength, r.block_colengths.iter().sum::<u32>(), r.minimal_generators))
        .collect();
    ensure(shape == [(1, 2, 2), (2, 2, 1), (2, 2, 1)], || format!("worked examples {shape:?}"))?;
    ensure(reps[2].multiplicity == 2, || "split example multiplicity".into())?;
    let random = toy::random_instances(DEFAULT_TOY_SEED, 100);
    let mut applied = 0;
    for (k, i) in random.iter().chain(&hand).enumerate() {
        ensure(i.n() <= 4 && i.blocks.len() <= 3 && (i.p == 5 || i.p == 7), || format!("instance {k} out of range"))?;
        let r = i.verify().map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("instance {k}: {r:?}"))?;
        applied += r.theorem_applies as usize;
    }
    ensure(t.elapsed() < Duration::from_secs(10), || format!("took {:.1?}", t.elapsed()))?;
    Ok(format!("103 instances pass, {applied} meet all hypotheses ({:.1?})", t.elapsed()))
}

const DEFAULT_TOY_SEED: u64 = 2024;

fn run_prop<S: Strategy>(
    name: &str,
    cases: u32,
    s: S,
    f: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&s, f).map_err(|e| format!("{name}: {e}"))
}

fn properties(cx: &mut Ctx) -> Result<String, String> {
    let t = Instant::now();
    run_prop("hnf", 200, small_matrix(), |m| check_hnf(&m))?;
    run_prop("snf", 200, square_with_ops(), |(m, ops)| check_snf(&m, &ops))?;
    run_prop("sum ef", 60, (monic_poly(), prop::sample::select(vec![2u64, 3, 5, 7])), |(f, p)| {
        check_sum_ef(&f, p)
    })?;
    run_prop(
        "valuation",
        60,
        (
            monic_poly(),
            prop::sample::select(vec![2u64, 3, 5]),
            prop::collection::vec(-30i64..=30, 4),
            prop::collection::vec(-30i64..=30, 4),
        ),
        |(f, p, x, y)| check_valuation(&f, p, &x, &y),
    )?;
    let levels = table_divisors();
    for &m in &levels {
        let ms = ModularSymbols::new(m).map_err(|e| e.to_string())?;
        ensure(ms.cuspidal_dim() as i64 == genus(m), || format!("dimension at level {m}"))?;
        let ls: Vec<u64> = [2u64, 3, 5, 7, 11, 13].into_iter().filter(|l| m % l != 0).take(3).collect();
        for w in ls.windows(2) {
            check_hecke_commute(&ms, w[0], w[1]).map_err(|e| format!("level {m}: {e}"))?;
        }
    }
    for (n, p) in [(55u64, 5u64), (57, 3), (66, 5)] {
        let b = sturm_bound(n).map_err(|e| e.to_string())?;
        let base = congruence_scan(&mut cx.engine, n, p, Some(b)).map_err(|e| e.to_string())?;
        let wide = congruence_scan(&mut cx.engine, n, p, Some(2 * b)).map_err(|e| e.to_string())?;
        ensure(base == wide, || format!("{n}/{p}: scan to 2B differs"))?;
    }
    ensure(t.elapsed() < Duration::from_secs(300), || format!("took {:.1?}", t.elapsed()))?;
    Ok(format!(
        "HNF/SNF, valuations, sum ef, dimension and commutativity on {} levels, Sturm 2B ({:.1?})",
        levels.len(),
        t.elapsed()
    ))
}

fn main() {
    let mut cx = Ctx {
        engine: Engine::new(EngineConfig::default()).expect("engine"),
        reports: BTreeMap::new(),
        elapsed: BTreeMap::new(),
    };
    type Criterion = fn(&mut Ctx) -> Result<String, String>;
    let criteria: [(&str, Criterion); 8] = [
        ("table reproduction", table_reproduction),
        ("depth identities", depth_identities),
        ("prime-level equality", prime_levels),
        ("index inequality and multiplicity", index_inequality),
        ("index lower bound", ohta),
        ("two-prime strictness predicate", strictness),
        ("toy commutative-algebra suite", toy_suite),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(|| f(&mut cx))).unwrap_or_else(|_| Err("panicked".into()));
        match res {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail} [{:.1?}]", k + 1, t.elapsed()),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {e} [{:.1?}]", k + 1, t.elapsed());
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

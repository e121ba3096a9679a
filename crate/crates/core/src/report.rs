//! Depth report for one `(N, p)`: the congruence table, valuation bounds,
//! strictness predicates, Eisenstein-ideal data and invariant checks.

use serde::Serialize;

use crate::arith::{gcd_u64, prime_divisors, val_u64};
use crate::congruence::{
    congruence_scan, depth_total, eisenstein_constant, ohta_bound, strictness_prediction, sturm_bound,
    val_phi, val_phi24_numerator, validate_level, validate_prime, CongruenceRecord, Prediction,
};
use crate::error::Result;
use crate::hecke::{index_data, principality_verdict, EisensteinIdeal, HeckeLattice, IndexData, Verdict};
use crate::newform::Engine;

/// Version of the JSON layout of [`DepthReport`].
pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Debug, Default)]
pub struct ReportOptions {
    /// Scan and generator bound; default is the Sturm bound.
    pub bound: Option<u64>,
    /// Skip the Hecke lattice and Eisenstein ideal.
    pub skip_index: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthReport {
    pub schema: u32,
    pub level: u64,
    pub p: u64,
    pub prime_factors: Vec<u64>,
    /// Constant term of the Eisenstein series as `num/den`.
    pub eisenstein_constant: String,
    pub bound: u64,
    pub records: Vec<CongruenceRecord>,
    pub depth: u64,
    pub val_phi: u32,
    pub val_phi24_numerator: u32,
    pub ohta_bound: Option<u32>,
    /// `D > val_p(phi(N))`.
    pub strict: bool,
    pub prediction: Prediction,
    pub index: Option<IndexData>,
    pub verdict: Option<Verdict>,
    pub checks: Vec<Check>,
}

impl DepthReport {
    pub fn compute(engine: &mut Engine, n: u64, p: u64, opts: &ReportOptions) -> Result<Self> {
        validate_level(n)?;
        validate_prime(p)?;
        let bound = match opts.bound {
            Some(b) => b,
            None => sturm_bound(n)?,
        };
        let records = congruence_scan(engine, n, p, Some(bound))?;
        let index = if opts.skip_index {
            None
        } else {
            let t = HeckeLattice::build(engine, n, Some(bound))?;
            let j = EisensteinIdeal::new(&t)?;
            Some(index_data(&t, &j, p)?)
        };
        Ok(Self::assemble(n, p, bound, records, index))
    }

    pub fn assemble(n: u64, p: u64, bound: u64, records: Vec<CongruenceRecord>, index: Option<IndexData>) -> Self {
        let (cn, cd) = eisenstein_constant(n).expect("validated level");
        let depth = depth_total(&records);
        let vphi = val_phi(n, p);
        let ohta = ohta_bound(n, p);
        let prediction = strictness_prediction(n, p);
        let strict = depth > vphi as u64;
        let verdict = index
            .as_ref()
            .filter(|ix| ix.val_index > 0 || depth > 0)
            .and_then(|ix| principality_verdict(depth, ix.val_index).ok());

        let mut checks = Vec::new();
        let mut check = |name: &str, passed: bool, detail: String| {
            checks.push(Check {
                name: name.to_string(),
                passed,
                detail,
            })
        };
        if p >= 5 {
            check("depth-at-least-val-phi", depth >= vphi as u64, format!("D = {depth}, val_p(phi) = {vphi}"));
            if let Some(o) = ohta {
                check("depth-at-least-ohta", depth >= o as u64, format!("D = {depth}, Ohta bound = {o}"));
            }
        }
        if let Some(s) = prediction.predicts_strict() {
            check(
                "prediction-matches-strictness",
                s == strict,
                format!("{}; observed D = {depth}, val_p(phi) = {vphi}", prediction.describe()),
            );
        }
        let qs = prime_divisors(n);
        if qs.len() == 1 && p >= 5 {
            let num = (n - 1) / gcd_u64(n - 1, 12);
            let v = val_u64(num, p);
            check(
                "prime-level-equality",
                depth == v as u64,
                format!("D = {depth}, val_p(num((N-1)/12)) = {v}"),
            );
        }
        if let Some(ix) = &index {
            let v = ix.val_index;
            check(
                "depth-at-least-index",
                depth >= v as u64,
                format!("D = {depth}, val_p(#T/J) = {v}"),
            );
            if p >= 5 {
                if let Some(o) = ohta {
                    check("index-at-least-ohta", v >= o, format!("val_p(#T/J) = {v}, Ohta bound = {o}"));
                }
            }
            match &ix.local {
                Some(loc) => {
                    check(
                        "multiplicity-equals-depth",
                        loc.multiplicity as u64 == depth,
                        format!("e(J,T) = {}, D = {depth}", loc.multiplicity),
                    );
                    check(
                        "verdict-matches-generators",
                        (verdict == Some(Verdict::LocallyPrincipal)) == (loc.minimal_generators == 1),
                        format!("verdict {:?}, minimal generators {}", verdict, loc.minimal_generators),
                    );
                }
                None => check(
                    "no-congruence-without-index",
                    depth == 0,
                    format!("D = {depth}, val_p(#T/J) = 0"),
                ),
            }
        }
        DepthReport {
            schema: REPORT_SCHEMA,
            level: n,
            p,
            prime_factors: qs,
            eisenstein_constant: format!("{cn}/{cd}"),
            bound,
            records,
            depth,
            val_phi: vphi,
            val_phi24_numerator: val_phi24_numerator(n, p),
            ohta_bound: ohta,
            strict,
            prediction,
            index,
            verdict,
            checks,
        }
    }

    pub fn failed_checks(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

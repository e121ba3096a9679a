//! C ABI over the `eisdepth` library.
//!
//! Objects are opaque handles created by `*_new`/`eisdepth_compute` and
//! released by the matching `*_free`. Every fallible call returns an
//! [`EisdepthStatus`]; the message of the last failure on the calling thread
//! is available from [`eisdepth_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;

use eisdepth::congruence::sturm_bound;
use eisdepth::hecke::toy;
use eisdepth::newform::{Engine, EngineConfig};
use eisdepth::report::{DepthReport, ReportOptions};
use eisdepth::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EisdepthStatus {
    Ok = 0,
    NullPointer = 1,
    /// Invalid level, prime or argument.
    InvalidArgument = 2,
    Computation = 3,
    /// A computed result contradicts a theorem-level invariant.
    Invariant = 4,
    Cache = 5,
    Io = 6,
    OutOfRange = 7,
    Panic = 8,
}

/// Opaque engine: newform data and eigenvalue cache.
pub struct EisdepthEngine {
    inner: Engine,
}

/// Opaque depth report for one level and prime.
pub struct EisdepthReport {
    inner: DepthReport,
}

/// One congruence: a prime above `p` in the coefficient field of an orbit.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct EisdepthRecord {
    pub level: u64,
    pub orbit: u64,
    pub degree: u64,
    pub lambda: u64,
    pub e: u32,
    pub f: u32,
    pub r: u32,
    pub residue_field_size: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> EisdepthStatus {
    match e {
        Error::NotSquarefree(_)
        | Error::LevelTooSmall(_)
        | Error::PrimeTwoExcluded
        | Error::NotPrime(_)
        | Error::PrimeDividesLevel { .. } => EisdepthStatus::InvalidArgument,
        Error::Invariant(_) => EisdepthStatus::Invariant,
        Error::Cache(_) => EisdepthStatus::Cache,
        Error::Io(_) => EisdepthStatus::Io,
        _ => EisdepthStatus::Computation,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (EisdepthStatus, String)>) -> EisdepthStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EisdepthStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            EisdepthStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (EisdepthStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (EisdepthStatus, String) {
    (EisdepthStatus::NullPointer, format!("{what} is null"))
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn eisdepth_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Creates an engine. `cache_dir` may be null (no on-disk cache);
/// `threads == 0` uses all cores.
///
/// # Safety
/// `cache_dir` must be null or a valid nul-terminated string; `out` must be
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eisdepth_engine_new(
    cache_dir: *const c_char,
    seed: u64,
    threads: u32,
    out: *mut *mut EisdepthEngine,
) -> EisdepthStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let cache_dir = if cache_dir.is_null() {
            None
        } else {
            let s = CStr::from_ptr(cache_dir)
                .to_str()
                .map_err(|_| (EisdepthStatus::InvalidArgument, "cache_dir is not UTF-8".to_string()))?;
            Some(PathBuf::from(s))
        };
        let engine = Engine::new(EngineConfig {
            cache_dir,
            seed,
            threads: (threads > 0).then_some(threads as usize),
        })
        .map_err(lib_err)?;
        *out = Box::into_raw(Box::new(EisdepthEngine { inner: engine }));
        Ok(())
    })
}

/// # Safety
/// `engine` must be null or a handle from [`eisdepth_engine_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn eisdepth_engine_free(engine: *mut EisdepthEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// Computes the depth report for level `level` and prime `p`. `bound == 0`
/// uses the Sturm bound; `with_index == 0` skips the Eisenstein ideal.
///
/// # Safety
/// `engine` must be a live engine handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eisdepth_compute(
    engine: *mut EisdepthEngine,
    level: u64,
    p: u64,
    bound: u64,
    with_index: i32,
    out: *mut *mut EisdepthReport,
) -> EisdepthStatus {
    guard(|| {
        let engine = engine.as_mut().ok_or_else(|| null("engine"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let opts = ReportOptions {
            bound: (bound > 0).then_some(bound),
            skip_index: with_index == 0,
        };
        let report = DepthReport::compute(&mut engine.inner, level, p, &opts).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(EisdepthReport { inner: report }));
        Ok(())
    })
}

/// # Safety
/// `report` must be null or a handle from [`eisdepth_compute`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn eisdepth_report_free(report: *mut EisdepthReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Total depth `D`, or 0 for a null handle.
///
/// # Safety
/// `report` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn eisdepth_report_depth(report: *const EisdepthReport) -> u64 {
    report.as_ref().map_or(0, |r| r.inner.depth)
}

/// `val_p(phi(N))`.
///
/// # Safety
/// `report` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn eisdepth_report_val_phi(report: *const EisdepthReport) -> u32 {
    report.as_ref().map_or(0, |r| r.inner.val_phi)
}

/// `val_p(#T/J)`, or -1 when the index was not computed.
///
/// # Safety
/// `report` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn eisdepth_report_val_index(report: *const EisdepthReport) -> i64 {
    report
        .as_ref()
        .and_then(|r| r.inner.index.as_ref())
        .map_or(-1, |ix| ix.val_index as i64)
}

/// Minimal number of generators of the local Eisenstein ideal, or -1.
///
/// # Safety
/// `report` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn eisdepth_report_minimal_generators(report: *const EisdepthReport) -> i64 {
    report
        .as_ref()
        .and_then(|r| r.inner.index.as_ref())
        .and_then(|ix| ix.local.as_ref())
        .map_or(-1, |l| l.minimal_generators as i64)
}

/// Number of failed invariant checks in the report.
///
/// # Safety
/// `report` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn eisdepth_report_failed_checks(report: *const EisdepthReport) -> u64 {
    report.as_ref().map_or(0, |r| r.inner.failed_checks().len() as u64)
}

/// # Safety
/// `report` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn eisdepth_report_record_count(report: *const EisdepthReport) -> u64 {
    report.as_ref().map_or(0, |r| r.inner.records.len() as u64)
}

/// Copies record `i` into `out`.
///
/// # Safety
/// `report` must be a live report handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eisdepth_report_record(
    report: *const EisdepthReport,
    i: u64,
    out: *mut EisdepthRecord,
) -> EisdepthStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let c = r.inner.records.get(i as usize).ok_or_else(|| {
            (
                EisdepthStatus::OutOfRange,
                format!("record {i} of {}", r.inner.records.len()),
            )
        })?;
        *out = EisdepthRecord {
            level: c.level,
            orbit: c.orbit as u64,
            degree: c.degree as u64,
            lambda: c.lambda as u64,
            e: c.e,
            f: c.f,
            r: c.r,
            residue_field_size: c.residue_field_size(),
        };
        Ok(())
    })
}

/// The full report as JSON; release with [`eisdepth_string_free`].
///
/// # Safety
/// `report` must be a live report handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eisdepth_report_json(report: *const EisdepthReport, out: *mut *mut c_char) -> EisdepthStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let s = serde_json::to_string(&r.inner).map_err(|e| (EisdepthStatus::Computation, e.to_string()))?;
        *out = CString::new(s).expect("JSON has no nul").into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn eisdepth_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Sturm bound of a squarefree level.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eisdepth_sturm_bound(level: u64, out: *mut u64) -> EisdepthStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = sturm_bound(level).map_err(lib_err)?;
        Ok(())
    })
}

/// Runs `count` seeded random toy instances plus the worked examples and
/// stores the number that passed in `passed` and the total in `total`.
///
/// # Safety
/// `passed` and `total` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn eisdepth_toy_verify(seed: u64, count: u32, passed: *mut u32, total: *mut u32) -> EisdepthStatus {
    guard(|| {
        let passed = passed.as_mut().ok_or_else(|| null("passed"))?;
        let total = total.as_mut().ok_or_else(|| null("total"))?;
        let mut all = eisdepth::hecke::ToySubalgebra::hand_examples();
        all.extend(toy::random_instances(seed, count as usize));
        let mut ok = 0;
        for inst in &all {
            if inst.verify().map_err(lib_err)?.passed() {
                ok += 1;
            }
        }
        *passed = ok;
        *total = all.len() as u32;
        Ok(())
    })
}

//! C ABI over the teamform solvers.
//!
//! Instances arrive as JSON strings (the same document format the CLI
//! reads), solves are dispatched by algorithm name, and results come back
//! as an opaque report handle exposing the objective, the feasibility
//! verdict, and the full JSON rendering. All handles are created and freed
//! here; strings returned as `const char *` borrow from their handle and
//! die with it. Every entry point is null-safe and reports failures
//! through [`TfStatus`] plus a thread-local message behind
//! [`tf_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use teamform::model::DistanceMode;
use teamform::pipeline::{solve, Algorithm, SolveOptions};
use teamform::{Instance, ObjectiveSpec, SolveReport};

/// Status code of every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TfStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The instance JSON failed to parse.
    ParseError = 3,
    /// The instance parsed but violates its invariants.
    InvalidInstance = 4,
    /// The solver ran and proved the instance infeasible.
    Infeasible = 5,
    /// An exhaustive component refused the instance size.
    GuardExceeded = 6,
    /// The algorithm name is not recognized.
    UnknownAlgorithm = 7,
    /// Any other solver error; details behind `tf_last_error`.
    Internal = 8,
}

/// Aggregation mode for one objective term.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TfMode {
    Dia = 0,
    Sum = 1,
}

impl From<TfMode> for DistanceMode {
    fn from(value: TfMode) -> Self {
        match value {
            TfMode::Dia => DistanceMode::Dia,
            TfMode::Sum => DistanceMode::Sum,
        }
    }
}

/// Solver knobs; obtain defaults via `tf_solve_options_default`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct TfSolveOptions {
    pub intra: TfMode,
    pub inter: TfMode,
    /// Wage bucket count for the cons-k algorithms.
    pub k_buckets: u32,
    /// Seed for the random baseline.
    pub seed: u64,
    /// Center enumeration cap of the partition stage.
    pub center_limit: u64,
}

/// Opaque parsed instance.
pub struct TfInstance {
    inner: Instance,
}

/// Opaque solve result.
pub struct TfReport {
    report: SolveReport,
    json: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let owned = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = owned);
}

/// Message describing the most recent failure on this thread. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tf_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Crate version as a static string.
#[no_mangle]
pub extern "C" fn tf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Fills `out` with the default solver options.
///
/// # Safety
/// `out` must point to writable memory for one `TfSolveOptions`.
#[no_mangle]
pub unsafe extern "C" fn tf_solve_options_default(out: *mut TfSolveOptions) -> TfStatus {
    if out.is_null() {
        set_error("out pointer is null");
        return TfStatus::NullPointer;
    }
    let defaults = SolveOptions::default();
    out.write(TfSolveOptions {
        intra: TfMode::Dia,
        inter: TfMode::Sum,
        k_buckets: defaults.k_buckets as u32,
        seed: defaults.seed,
        center_limit: defaults.center_limit,
    });
    TfStatus::Ok
}

/// Parses and validates an instance JSON document. On success `*out` owns
/// a handle that must be released with `tf_instance_free`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_instance_from_json(
    json: *const c_char,
    out: *mut *mut TfInstance,
) -> TfStatus {
    if json.is_null() || out.is_null() {
        set_error("json or out pointer is null");
        return TfStatus::NullPointer;
    }
    let Ok(text) = CStr::from_ptr(json).to_str() else {
        set_error("instance JSON is not valid UTF-8");
        return TfStatus::InvalidUtf8;
    };
    let inst = match Instance::from_json(text) {
        Ok(inst) => inst,
        Err(err) => {
            set_error(&err.to_string());
            return TfStatus::ParseError;
        }
    };
    let violations = inst.validate();
    if !violations.is_empty() {
        let lines: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        set_error(&lines.join("; "));
        return TfStatus::InvalidInstance;
    }
    out.write(Box::into_raw(Box::new(TfInstance { inner: inst })));
    TfStatus::Ok
}

/// Number of workers in the instance; 0 for a null handle.
///
/// # Safety
/// `inst` must be null or a live handle from `tf_instance_from_json`.
#[no_mangle]
pub unsafe extern "C" fn tf_instance_worker_count(inst: *const TfInstance) -> usize {
    if inst.is_null() {
        return 0;
    }
    (*inst).inner.workers.len()
}

/// Releases an instance handle; null is a no-op.
///
/// # Safety
/// `inst` must be null or a handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn tf_instance_free(inst: *mut TfInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

fn algorithm_by_name(name: &str) -> Option<Algorithm> {
    Some(match name {
        "exact" => Algorithm::Exact,
        "opt-grp" => Algorithm::OptGrp,
        "apprx-grp" => Algorithm::ApprxGrp,
        "grp-split" => Algorithm::GrpSplit,
        "greedy" => Algorithm::Greedy,
        "cons-k-opt" => Algorithm::ConsKOpt,
        "cons-k-apprx" => Algorithm::ConsKApprx,
        _ => return None,
    })
}

/// Runs one solver. `algorithm` is one of `exact`, `opt-grp`, `apprx-grp`,
/// `grp-split`, `greedy`, `cons-k-opt`, `cons-k-apprx`; `options` may be
/// null for defaults. On success `*out` owns a report handle to release
/// with `tf_report_free`; `TF_STATUS_INFEASIBLE` means the solver ran and
/// found no feasible group.
///
/// # Safety
/// `inst` must be a live instance handle, `algorithm` NUL-terminated,
/// `options` null or valid, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tf_solve(
    inst: *const TfInstance,
    algorithm: *const c_char,
    options: *const TfSolveOptions,
    out: *mut *mut TfReport,
) -> TfStatus {
    if inst.is_null() || algorithm.is_null() || out.is_null() {
        set_error("instance, algorithm, or out pointer is null");
        return TfStatus::NullPointer;
    }
    let Ok(name) = CStr::from_ptr(algorithm).to_str() else {
        set_error("algorithm name is not valid UTF-8");
        return TfStatus::InvalidUtf8;
    };
    let Some(algorithm) = algorithm_by_name(name) else {
        set_error(&format!("unknown algorithm `{name}`"));
        return TfStatus::UnknownAlgorithm;
    };

    let mut opts = SolveOptions::default();
    if !options.is_null() {
        let raw = *options;
        opts.objective = ObjectiveSpec { intra: raw.intra.into(), inter: raw.inter.into() };
        opts.k_buckets = raw.k_buckets as usize;
        opts.seed = raw.seed;
        opts.center_limit = raw.center_limit;
    }

    match solve(&(*inst).inner, algorithm, &opts) {
        Ok(Some(report)) => {
            let json = CString::new(report.to_json_pretty())
                .expect("report JSON contains no NUL bytes");
            out.write(Box::into_raw(Box::new(TfReport { report, json })));
            TfStatus::Ok
        }
        Ok(None) => {
            set_error("no feasible group under the task constraints");
            TfStatus::Infeasible
        }
        Err(err @ teamform::Error::GuardExceeded(_)) => {
            set_error(&err.to_string());
            TfStatus::GuardExceeded
        }
        Err(err) => {
            set_error(&err.to_string());
            TfStatus::Internal
        }
    }
}

/// Objective value of a report; NaN for a null handle.
///
/// # Safety
/// `report` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn tf_report_objective(report: *const TfReport) -> f64 {
    if report.is_null() {
        return f64::NAN;
    }
    (*report).report.objective
}

/// Whether every constraint flag (skill, cost, critical mass) holds.
///
/// # Safety
/// `report` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn tf_report_feasible(report: *const TfReport) -> bool {
    if report.is_null() {
        return false;
    }
    (*report).report.feasibility.all_ok()
}

/// Number of workers in the selected group.
///
/// # Safety
/// `report` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn tf_report_group_size(report: *const TfReport) -> usize {
    if report.is_null() {
        return 0;
    }
    (*report).report.assembly.len()
}

/// Full JSON rendering of the report; borrowed from the handle.
///
/// # Safety
/// `report` must be a live report handle; the pointer dies with it.
#[no_mangle]
pub unsafe extern "C" fn tf_report_json(report: *const TfReport) -> *const c_char {
    if report.is_null() {
        return std::ptr::null();
    }
    (*report).json.as_ptr()
}

/// Releases a report handle; null is a no-op.
///
/// # Safety
/// `report` must be null or a handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn tf_report_free(report: *mut TfReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

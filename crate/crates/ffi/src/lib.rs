//! C ABI over the `nichols` engine.
//!
//! A run is loaded from config text or a config path and returned as an
//! opaque `NicholsRun` handle. Every fallible call returns a `NicholsStatus`;
//! on failure `nichols_last_error` holds the message for the calling thread.
//! Strings handed out by this library are freed with `nichols_string_free`,
//! runs with `nichols_run_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use nichols::cli::report::{render_human, render_machine};
use nichols::cli::{execute, Config, RunOptions, RunReport, VerifyLevel};
use nichols::Error;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NicholsStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Config = 3,
    Io = 4,
    Computation = 5,
    IndexOutOfRange = 6,
    Panic = 7,
    InvalidArgument = 8,
}

/// Verification depth for a run.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NicholsVerifyLevel {
    /// Use the level given in the config.
    FromConfig = 0,
    Fast = 1,
    Full = 2,
}

/// Finished run: Hilbert series, graded traces and check verdicts.
pub struct NicholsRun {
    report: RunReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn fail(status: NicholsStatus, message: impl Into<String>) -> NicholsStatus {
    set_error(message);
    status
}

fn status_of(e: &Error) -> NicholsStatus {
    match e {
        Error::Config { .. } => NicholsStatus::Config,
        Error::Io(_) => NicholsStatus::Io,
        _ => NicholsStatus::Computation,
    }
}

fn guard(body: impl FnOnce() -> NicholsStatus) -> NicholsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(NicholsStatus::Panic, msg)
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, NicholsStatus> {
    if s.is_null() {
        return Err(fail(NicholsStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| fail(NicholsStatus::InvalidUtf8, e.to_string()))
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

fn run_config(cfg: Config, level: u32, out: *mut *mut NicholsRun) -> NicholsStatus {
    let verify_level = match level {
        l if l == NicholsVerifyLevel::FromConfig as u32 => None,
        l if l == NicholsVerifyLevel::Fast as u32 => Some(VerifyLevel::Fast),
        l if l == NicholsVerifyLevel::Full as u32 => Some(VerifyLevel::Full),
        l => {
            return fail(
                NicholsStatus::InvalidArgument,
                format!("unknown verify level {l}"),
            )
        }
    };
    let options = RunOptions {
        cache_dir: None,
        verify_level,
    };
    match execute(&cfg, &options) {
        Ok(report) => {
            unsafe { *out = Box::into_raw(Box::new(NicholsRun { report })) };
            NicholsStatus::Ok
        }
        Err(e) => fail(status_of(&e), e.to_string()),
    }
}

/// Parses `text` as a config (reported under `name`) and runs it.
/// `level` is a `NicholsVerifyLevel`.
///
/// # Safety
/// `name` and `text` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nichols_run_from_text(
    name: *const c_char,
    text: *const c_char,
    level: u32,
    out: *mut *mut NicholsRun,
) -> NicholsStatus {
    guard(|| {
        if out.is_null() {
            return fail(NicholsStatus::NullArgument, "null output pointer");
        }
        let (name, text) = match (read_str(name), read_str(text)) {
            (Ok(n), Ok(t)) => (n, t),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        match Config::parse(Path::new(name), text) {
            Ok(cfg) => run_config(cfg, level, out),
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Loads the config file at `path` and runs it.
/// `level` is a `NicholsVerifyLevel`.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nichols_run_from_path(
    path: *const c_char,
    level: u32,
    out: *mut *mut NicholsRun,
) -> NicholsStatus {
    guard(|| {
        if out.is_null() {
            return fail(NicholsStatus::NullArgument, "null output pointer");
        }
        let path = match read_str(path) {
            Ok(p) => p,
            Err(s) => return s,
        };
        match Config::load(Path::new(path)) {
            Ok(cfg) => run_config(cfg, level, out),
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `run` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nichols_run_free(run: *mut NicholsRun) {
    if !run.is_null() {
        drop(Box::from_raw(run));
    }
}

/// # Safety
/// `s` must be a string returned by this library, or null.
#[no_mangle]
pub unsafe extern "C" fn nichols_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or null. Owned by the library.
#[no_mangle]
pub extern "C" fn nichols_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version, static.
#[no_mangle]
pub extern "C" fn nichols_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

unsafe fn run_ref<'a>(run: *const NicholsRun) -> Option<&'a RunReport> {
    run.as_ref().map(|r| &r.report)
}

/// Total dimension, 0 for a null handle or a run without an algebra.
///
/// # Safety
/// `run` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn nichols_run_dimension(run: *const NicholsRun) -> usize {
    run_ref(run).map_or(0, RunReport::dimension)
}

/// 1 when every check passed, 0 otherwise.
///
/// # Safety
/// `run` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn nichols_run_passed(run: *const NicholsRun) -> i32 {
    run_ref(run).is_some_and(RunReport::passed) as i32
}

/// Number of checks that failed.
///
/// # Safety
/// `run` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn nichols_run_failed_checks(run: *const NicholsRun) -> usize {
    run_ref(run).map_or(0, |r| r.checks.iter().filter(|c| !c.passed).count())
}

/// Copies up to `cap` Hilbert coefficients into `buf`; returns how many exist.
///
/// # Safety
/// `run` must be a live handle or null; `buf` must hold `cap` entries or be null.
#[no_mangle]
pub unsafe extern "C" fn nichols_run_hilbert(
    run: *const NicholsRun,
    buf: *mut usize,
    cap: usize,
) -> usize {
    let Some(r) = run_ref(run) else { return 0 };
    if !buf.is_null() {
        for (i, d) in r.hilbert.iter().take(cap).enumerate() {
            *buf.add(i) = *d;
        }
    }
    r.hilbert.len()
}

/// Number of graded traces in the run.
///
/// # Safety
/// `run` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn nichols_run_trace_count(run: *const NicholsRun) -> usize {
    run_ref(run).map_or(0, |r| r.lines.len())
}

/// Which field of a trace line to fetch.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NicholsTraceField {
    Label = 0,
    /// Space-separated coefficients in the field encoding used by the machine
    /// report, constant term first.
    Coefficients = 1,
    /// Factorization in `(k)_{λt^d}` notation.
    Factorization = 2,
    /// Factorization in the line-oriented machine format.
    FactorizationMachine = 3,
}

/// Text for one field (a `NicholsTraceField`) of trace line `index`, written
/// to `out`. Free it with `nichols_string_free`.
///
/// # Safety
/// `run` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nichols_run_trace_text(
    run: *const NicholsRun,
    index: usize,
    field: u32,
    out: *mut *mut c_char,
) -> NicholsStatus {
    guard(|| {
        let Some(r) = run_ref(run) else {
            return fail(NicholsStatus::NullArgument, "null run handle");
        };
        if out.is_null() {
            return fail(NicholsStatus::NullArgument, "null output pointer");
        }
        let Some(line) = r.lines.get(index) else {
            return fail(
                NicholsStatus::IndexOutOfRange,
                format!(
                    "trace index {index} out of range ({} traces)",
                    r.lines.len()
                ),
            );
        };
        let f = &r.field;
        let text = match field {
            x if x == NicholsTraceField::Label as u32 => line.label.clone(),
            x if x == NicholsTraceField::Coefficients as u32 => line.trace.encode(f),
            x if x == NicholsTraceField::Factorization as u32 => line.factorization.notation(f),
            x if x == NicholsTraceField::FactorizationMachine as u32 => {
                line.factorization.machine(f)
            }
            x => {
                return fail(
                    NicholsStatus::InvalidArgument,
                    format!("unknown trace field {x}"),
                )
            }
        };
        *out = to_c(text);
        NicholsStatus::Ok
    })
}

/// Which rendering of the whole run to fetch.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NicholsReportKind {
    Human = 0,
    Machine = 1,
}

/// Rendered report (`kind` is a `NicholsReportKind`), or null for a null
/// handle or unknown kind. Free with `nichols_string_free`.
///
/// # Safety
/// `run` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn nichols_run_report(run: *const NicholsRun, kind: u32) -> *mut c_char {
    let Some(r) = run_ref(run) else {
        return ptr::null_mut();
    };
    match kind {
        k if k == NicholsReportKind::Human as u32 => to_c(render_human(r)),
        k if k == NicholsReportKind::Machine as u32 => to_c(render_machine(r)),
        k => {
            set_error(format!("unknown report kind {k}"));
            ptr::null_mut()
        }
    }
}

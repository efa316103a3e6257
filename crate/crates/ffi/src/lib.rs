//! C ABI over `zfc-opt`.
//!
//! Instances and run reports are opaque heap handles released with their
//! `*_free` function. Every fallible call returns a `ZfcStatus`; on failure
//! [`zfc_last_error_message`] describes the error for the calling thread.
//! Vertex ids are 0-based.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use zfc_opt::control::{cost, verify};
use zfc_opt::exact::solve_exact;
use zfc_opt::io::read_pattern;
use zfc_opt::io::parse_matrix_text;
use zfc_opt::mcmc::{run_chains, AnnealConfig, Mode, RunReport};
use zfc_opt::{CostParams, Error, LoopDigraph, PatternMatrix, SControlInstance, VertexSet};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZfcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Io = 3,
    Parse = 4,
    Dimension = 5,
    Domain = 6,
    SizeGuard = 7,
    InvalidConfig = 8,
    BufferTooSmall = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZfcMode {
    Faithful = 0,
    BestFeasible = 1,
}

/// Annealing parameters. Obtain defaults from `zfc_anneal_config_default`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZfcAnnealConfig {
    pub t0: f64,
    pub alpha: f64,
    pub t_stop: f64,
    pub epoch_len: usize,
    pub epsilon: f64,
    pub seed: u64,
    pub mode: ZfcMode,
    pub chains: usize,
}

/// Opaque problem instance.
pub struct ZfcInstance(SControlInstance);

/// Opaque result of `zfc_solve`.
pub struct ZfcRunReport(RunReport);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let clean = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = clean);
}

fn status_of(e: &Error) -> ZfcStatus {
    match e {
        Error::Dimension { .. } => ZfcStatus::Dimension,
        Error::Domain(_) => ZfcStatus::Domain,
        Error::Parse { .. } => ZfcStatus::Parse,
        Error::SizeGuard { .. } => ZfcStatus::SizeGuard,
        Error::InvalidConfig(_) => ZfcStatus::InvalidConfig,
        Error::Io { .. } => ZfcStatus::Io,
    }
}

struct Failure(ZfcStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(ZfcStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, converting errors and panics into a status code.
fn guard<F: FnOnce() -> Result<(), Failure>>(body: F) -> ZfcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error("");
            ZfcStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(&message);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            ZfcStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(ZfcStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn slice_arg<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn instance_arg<'a>(p: *const ZfcInstance) -> Result<&'a SControlInstance, Failure> {
    p.as_ref().map(|i| &i.0).ok_or_else(|| null("instance"))
}

unsafe fn set_arg(inst: &SControlInstance, ids: *const usize, len: usize) -> Result<VertexSet, Failure> {
    let ids = slice_arg(ids, len, "ids")?;
    Ok(VertexSet::from_indices(inst.n(), ids.iter().copied())?)
}

unsafe fn emit<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = value;
    Ok(())
}

/// Message for the most recent failing call on this thread, or an empty
/// string. Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn zfc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub extern "C" fn zfc_anneal_config_default() -> ZfcAnnealConfig {
    let c = AnnealConfig::default();
    ZfcAnnealConfig {
        t0: c.t0,
        alpha: c.alpha,
        t_stop: c.t_stop,
        epoch_len: c.epoch_len,
        epsilon: c.epsilon,
        seed: c.seed,
        mode: ZfcMode::BestFeasible,
        chains: 1,
    }
}

/// Parses a pattern matrix written as rows of `0` and `x`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zfc_instance_from_matrix_text(text: *const c_char, out: *mut *mut ZfcInstance) -> ZfcStatus {
    guard(|| {
        let a = parse_matrix_text(str_arg(text, "text")?)?;
        emit(out, ZfcInstance(SControlInstance::new(a)))
    })
}

/// Builds an instance from `len` directed edges `src[k] -> dst[k]` on `n`
/// vertices.
///
/// # Safety
/// `src` and `dst` must point to `len` elements each (or `len` is 0);
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn zfc_instance_from_edges(
    n: usize,
    src: *const usize,
    dst: *const usize,
    len: usize,
    out: *mut *mut ZfcInstance,
) -> ZfcStatus {
    guard(|| {
        let src = slice_arg(src, len, "src")?;
        let dst = slice_arg(dst, len, "dst")?;
        let (g, _) = LoopDigraph::from_edges(n, src.iter().copied().zip(dst.iter().copied()))?;
        let a = PatternMatrix::from_graph(&g)?;
        emit(out, ZfcInstance(SControlInstance::new(a)))
    })
}

/// Loads a matrix or edge-list file, detecting the format.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zfc_instance_load(path: *const c_char, out: *mut *mut ZfcInstance) -> ZfcStatus {
    guard(|| {
        let (a, _) = read_pattern(Path::new(str_arg(path, "path")?), None, None)?;
        emit(out, ZfcInstance(SControlInstance::new(a)))
    })
}

/// # Safety
/// `inst` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn zfc_instance_free(inst: *mut ZfcInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Number of states, or 0 for a null handle.
///
/// # Safety
/// `inst` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn zfc_instance_vertex_count(inst: *const ZfcInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.0.n())
}

/// Whether driving the states `ids[0..len]` gives strong structural
/// controllability.
///
/// # Safety
/// `inst` must be live, `ids` must point to `len` elements, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn zfc_verify(inst: *const ZfcInstance, ids: *const usize, len: usize, out: *mut bool) -> ZfcStatus {
    guard(|| {
        let inst = instance_arg(inst)?;
        let set = set_arg(inst, ids, len)?;
        write_out(out, verify(inst, &set)?)
    })
}

/// Penalised cost of a candidate set.
///
/// # Safety
/// As for `zfc_verify`.
#[no_mangle]
pub unsafe extern "C" fn zfc_cost(
    inst: *const ZfcInstance,
    ids: *const usize,
    len: usize,
    epsilon: f64,
    out: *mut f64,
) -> ZfcStatus {
    guard(|| {
        let inst = instance_arg(inst)?;
        let set = set_arg(inst, ids, len)?;
        write_out(out, cost(inst, &set, CostParams::new(epsilon)?)?.value())
    })
}

/// Runs the annealer. A null `config` means defaults.
///
/// # Safety
/// `inst` must be live; `config` null or valid; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn zfc_solve(
    inst: *const ZfcInstance,
    config: *const ZfcAnnealConfig,
    out: *mut *mut ZfcRunReport,
) -> ZfcStatus {
    guard(|| {
        let inst = instance_arg(inst)?;
        let c = config.as_ref().copied().unwrap_or_else(|| zfc_anneal_config_default());
        let anneal = AnnealConfig {
            t0: c.t0,
            alpha: c.alpha,
            t_stop: c.t_stop,
            epoch_len: c.epoch_len,
            epsilon: c.epsilon,
            seed: c.seed,
            mode: match c.mode {
                ZfcMode::Faithful => Mode::Faithful,
                ZfcMode::BestFeasible => Mode::BestFeasible,
            },
        };
        emit(out, ZfcRunReport(run_chains(inst, &anneal, c.chains)?))
    })
}

/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn zfc_report_cardinality(report: *const ZfcRunReport) -> usize {
    report.as_ref().map_or(0, |r| r.0.output_cardinality)
}

/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn zfc_report_feasible(report: *const ZfcRunReport) -> bool {
    report.as_ref().is_some_and(|r| r.0.feasible)
}

/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn zfc_report_iterations(report: *const ZfcRunReport) -> u64 {
    report.as_ref().map_or(0, |r| r.0.iterations)
}

/// Copies the output set into `buf`. `*out_len` always receives the set
/// size; `ZFC_STATUS_BUFFER_TOO_SMALL` is returned when `cap` is short.
///
/// # Safety
/// `report` live, `buf` writable for `cap` elements, `out_len` valid.
#[no_mangle]
pub unsafe extern "C" fn zfc_report_output_set(
    report: *const ZfcRunReport,
    buf: *mut usize,
    cap: usize,
    out_len: *mut usize,
) -> ZfcStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        let ids = r.0.output_set.to_vec();
        write_out(out_len, ids.len())?;
        if ids.len() > cap {
            return Err(Failure(ZfcStatus::BufferTooSmall, format!("need {} slots, got {cap}", ids.len())));
        }
        if !ids.is_empty() {
            if buf.is_null() {
                return Err(null("buf"));
            }
            ptr::copy_nonoverlapping(ids.as_ptr(), buf, ids.len());
        }
        Ok(())
    })
}

/// Full report as JSON. Release the string with `zfc_string_free`.
///
/// # Safety
/// `report` live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn zfc_report_to_json(report: *const ZfcRunReport, out: *mut *mut c_char) -> ZfcStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        let text = serde_json::to_string(&r.0).expect("report serialises");
        write_out(out, CString::new(text).expect("JSON has no NUL").into_raw())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn zfc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `report` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn zfc_report_free(report: *mut ZfcRunReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Exact minimum input-set size by enumeration; fails with
/// `ZFC_STATUS_SIZE_GUARD` above `max_n` states.
///
/// # Safety
/// `inst` live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn zfc_exact_optimum(inst: *const ZfcInstance, max_n: usize, out: *mut usize) -> ZfcStatus {
    guard(|| {
        let inst = instance_arg(inst)?;
        write_out(out, solve_exact(inst, max_n)?.optimum)
    })
}

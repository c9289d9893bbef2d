//! C ABI over `mcflow`.
//!
//! Every fallible function returns a [`McflowStatus`] and writes its result
//! through an out-pointer. On failure the message is available from
//! [`mcflow_last_error_message`] on the same thread. Handles and strings
//! returned by this library must be released with the matching `*_free`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mcflow::cli::{self, Command, CommandRequest, ReportDocument, RunOptions};
use mcflow::mcframe::Sl2Frame;
use mcflow::parser::{parse_system, SystemSpec};
use mcflow::systems::builtin;

/// Result codes. The first four agree with the `mcflow` exit statuses.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum McflowStatus {
    Ok = 0,
    CheckFailed = 1,
    InvalidInput = 2,
    Singular = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    Panic = 6,
}

impl McflowStatus {
    fn from_exit(code: i32) -> Self {
        match code {
            0 => McflowStatus::Ok,
            1 => McflowStatus::CheckFailed,
            3 => McflowStatus::Singular,
            _ => McflowStatus::InvalidInput,
        }
    }
}

enum Origin {
    Builtin,
    Source(String),
}

/// Opaque system handle.
pub struct McflowSystem {
    spec: SystemSpec,
    origin: Origin,
}

/// Opaque verification report handle.
pub struct McflowReport {
    doc: ReportDocument,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

type Fallible<T> = Result<T, McflowStatus>;

fn fail<T>(status: McflowStatus, msg: impl Into<String>) -> Fallible<T> {
    set_error(msg);
    Err(status)
}

/// Runs `body` with panics converted to [`McflowStatus::Panic`].
fn guard(body: impl FnOnce() -> Fallible<McflowStatus>) -> McflowStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(s)) | Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            McflowStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Fallible<&'a str> {
    if p.is_null() {
        return fail(McflowStatus::NullPointer, format!("{what} is null"));
    }
    match CStr::from_ptr(p).to_str() {
        Ok(s) => Ok(s),
        Err(_) => fail(McflowStatus::InvalidUtf8, format!("{what} is not valid UTF-8")),
    }
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Fallible<McflowStatus> {
    *out = Box::into_raw(Box::new(value));
    Ok(McflowStatus::Ok)
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Fallible<McflowStatus> {
    *out = CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw();
    Ok(McflowStatus::Ok)
}

fn check_out<T>(out: *mut *mut T) -> Fallible<()> {
    if out.is_null() {
        return fail(McflowStatus::NullPointer, "output pointer is null");
    }
    Ok(())
}

unsafe fn system_ref<'a>(s: *const McflowSystem) -> Fallible<&'a McflowSystem> {
    s.as_ref().map_or_else(|| fail(McflowStatus::NullPointer, "system handle is null"), Ok)
}

unsafe fn report_ref<'a>(r: *const McflowReport) -> Fallible<&'a McflowReport> {
    r.as_ref().map_or_else(|| fail(McflowStatus::NullPointer, "report handle is null"), Ok)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mcflow_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn mcflow_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Looks up a builtin system: `guillot`, `dh_classic`, `dh_symmetric`,
/// `heisenberg_example`.
#[no_mangle]
pub unsafe extern "C" fn mcflow_system_builtin(name: *const c_char, out: *mut *mut McflowSystem) -> McflowStatus {
    guard(|| {
        check_out(out)?;
        let name = read_str(name, "name")?;
        match builtin(name) {
            Ok(b) => write_out(out, McflowSystem { spec: b.spec, origin: Origin::Builtin }),
            Err(e) => fail(McflowStatus::InvalidInput, e.to_string()),
        }
    })
}

/// Parses `.sys` source text.
#[no_mangle]
pub unsafe extern "C" fn mcflow_system_parse(source: *const c_char, out: *mut *mut McflowSystem) -> McflowStatus {
    guard(|| {
        check_out(out)?;
        let text = read_str(source, "source")?;
        match parse_system(text) {
            Ok(spec) => write_out(out, McflowSystem { spec, origin: Origin::Source(text.to_owned()) }),
            Err(e) => fail(McflowStatus::InvalidInput, e.to_string()),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn mcflow_system_free(system: *mut McflowSystem) {
    if !system.is_null() {
        drop(Box::from_raw(system));
    }
}

/// Declared system name, as an owned string.
#[no_mangle]
pub unsafe extern "C" fn mcflow_system_name(system: *const McflowSystem, out: *mut *mut c_char) -> McflowStatus {
    guard(|| {
        check_out(out)?;
        let s = system_ref(system)?;
        write_string(out, s.spec.name.clone())
    })
}

/// Last multiplier `M = 1/((v×u)·w)` in canonical text form.
#[no_mangle]
pub unsafe extern "C" fn mcflow_derive_multiplier(system: *const McflowSystem, out: *mut *mut c_char) -> McflowStatus {
    guard(|| {
        check_out(out)?;
        let s = system_ref(system)?;
        let (Some(u), Some(w)) = (s.spec.u_field(), s.spec.w_field()) else {
            return fail(McflowStatus::Singular, format!("system `{}` has no companion fields u, w", s.spec.name));
        };
        match Sl2Frame::new(s.spec.v_field(), u, w) {
            Ok(f) => write_string(out, f.m.to_string()),
            Err(e) => fail(McflowStatus::Singular, e.to_string()),
        }
    })
}

/// Runs the full verification suite with default options. The status
/// mirrors the report's exit status; the report is written whenever the
/// status is below [`McflowStatus::NullPointer`], failures included.
#[no_mangle]
pub unsafe extern "C" fn mcflow_verify(system: *const McflowSystem, out: *mut *mut McflowReport) -> McflowStatus {
    guard(|| {
        check_out(out)?;
        let s = system_ref(system)?;
        let doc = match &s.origin {
            Origin::Builtin => cli::run(&CommandRequest::new(Command::Verify, &s.spec.name)),
            Origin::Source(text) => cli::verify_source(text, &RunOptions::default()),
        };
        let status = McflowStatus::from_exit(doc.exit_status);
        if let Some(e) = &doc.error {
            set_error(e.clone());
        }
        *out = Box::into_raw(Box::new(McflowReport { doc }));
        Ok(status)
    })
}

#[no_mangle]
pub unsafe extern "C" fn mcflow_report_free(report: *mut McflowReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// 1 when every check holds and the numeric oracle agrees, 0 otherwise or
/// for a null handle.
#[no_mangle]
pub unsafe extern "C" fn mcflow_report_all_hold(report: *const McflowReport) -> i32 {
    report.as_ref().map_or(0, |r| i32::from(r.doc.exit_status == 0))
}

/// Number of checks in the report, 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn mcflow_report_check_count(report: *const McflowReport) -> usize {
    report.as_ref().map_or(0, |r| r.doc.checks.len())
}

/// Exit status the command-line tool would return, or -1 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn mcflow_report_exit_status(report: *const McflowReport) -> i32 {
    report.as_ref().map_or(-1, |r| r.doc.exit_status)
}

/// The report as a JSON document, as an owned string.
#[no_mangle]
pub unsafe extern "C" fn mcflow_report_to_json(report: *const McflowReport, out: *mut *mut c_char) -> McflowStatus {
    guard(|| {
        check_out(out)?;
        let r = report_ref(report)?;
        write_string(out, cli::render_json(&r.doc))
    })
}

/// Releases a string returned through an out-pointer.
#[no_mangle]
pub unsafe extern "C" fn mcflow_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

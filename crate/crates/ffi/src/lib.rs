//! C ABI over the instance harness.
//!
//! Documents go in and reports come out as JSON strings. Every function
//! returns an [`IfStatus`]; on failure the message is available from
//! [`indepforge_last_error`] on the same thread. Strings handed out by the
//! library are released with [`indepforge_string_free`], instances with
//! [`indepforge_instance_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use indepforge::harness::{
    error_report, generate_instance, report, run_document, Caps, GeneratorConfig, GeneratorKind,
    InstanceDocument,
};
use indepforge::{Error, FieldSpec};

/// Status codes. Values 1-3 match the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IfStatus {
    Ok = 0,
    Invalid = 1,
    CapExceeded = 2,
    TheoremFalsified = 3,
    NullPointer = 4,
    Utf8 = 5,
    Panic = 6,
}

/// Resource caps for a run.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct IfCaps {
    pub max_dim: usize,
    pub max_seq: usize,
    pub max_det: usize,
}

impl From<IfCaps> for Caps {
    fn from(c: IfCaps) -> Caps {
        Caps {
            max_dim: c.max_dim,
            max_seq: c.max_seq,
            max_det: c.max_det,
        }
    }
}

/// A parsed instance document.
pub struct IfInstance {
    doc: InstanceDocument,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> IfStatus {
    match err.exit_code() {
        2 => IfStatus::CapExceeded,
        3 => IfStatus::TheoremFalsified,
        _ => IfStatus::Invalid,
    }
}

fn fail(status: IfStatus, msg: &str) -> IfStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> IfStatus) -> IfStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(IfStatus::Panic, "internal panic"))
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, IfStatus> {
    if p.is_null() {
        return Err(fail(IfStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(IfStatus::Utf8, "argument is not UTF-8"))
}

unsafe fn hand_out(text: String, out: *mut *mut c_char) {
    *out = CString::new(text)
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut());
}

/// The default caps (dimension 512, sequence length 12, determinant size 8).
#[no_mangle]
pub extern "C" fn indepforge_caps_default() -> IfCaps {
    let c = Caps::default();
    IfCaps {
        max_dim: c.max_dim,
        max_seq: c.max_seq,
        max_det: c.max_det,
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn indepforge_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL. Valid until
/// the next call into the library from this thread.
#[no_mangle]
pub extern "C" fn indepforge_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses an instance document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn indepforge_instance_parse(
    json: *const c_char,
    out: *mut *mut IfInstance,
) -> IfStatus {
    guard(|| {
        if out.is_null() {
            return fail(IfStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let src = match read_str(json) {
            Ok(s) => s,
            Err(s) => return s,
        };
        match InstanceDocument::from_json(src) {
            Ok(doc) => {
                *out = Box::into_raw(Box::new(IfInstance { doc }));
                IfStatus::Ok
            }
            Err(e) => fail(status_of(&e), &e.to_string()),
        }
    })
}

/// Replaces the command name (and, when `route` is not NULL, the route).
///
/// # Safety
/// `inst` must come from [`indepforge_instance_parse`]; strings must be
/// NUL-terminated; `route` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn indepforge_instance_set_command(
    inst: *mut IfInstance,
    name: *const c_char,
    route: *const c_char,
) -> IfStatus {
    guard(|| {
        let Some(inst) = inst.as_mut() else {
            return fail(IfStatus::NullPointer, "null instance");
        };
        let name = match read_str(name) {
            Ok(s) => s.to_string(),
            Err(s) => return s,
        };
        let route = if route.is_null() {
            None
        } else {
            match read_str(route) {
                Ok(s) => Some(s.to_string()),
                Err(s) => return s,
            }
        };
        inst.doc.command.name = name;
        if route.is_some() {
            inst.doc.command.params.route = route;
        }
        IfStatus::Ok
    })
}

/// Runs the instance's command. On success and on harness errors
/// `*report_out` receives the JSON report (an error report in the latter
/// case), which the caller frees with [`indepforge_string_free`].
///
/// # Safety
/// `inst` must come from [`indepforge_instance_parse`]; `report_out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn indepforge_run(
    inst: *const IfInstance,
    caps: IfCaps,
    report_out: *mut *mut c_char,
) -> IfStatus {
    guard(|| {
        if report_out.is_null() {
            return fail(IfStatus::NullPointer, "null output pointer");
        }
        *report_out = ptr::null_mut();
        let Some(inst) = inst.as_ref() else {
            return fail(IfStatus::NullPointer, "null instance");
        };
        match run_document(&inst.doc, caps.into()) {
            Ok(v) => {
                hand_out(report::emit(&v), report_out);
                IfStatus::Ok
            }
            Err(e) => {
                hand_out(report::emit(&error_report(Some(&inst.doc), &e)), report_out);
                fail(status_of(&e), &e.to_string())
            }
        }
    })
}

/// Draws a random instance document of the given kind over `field`
/// (for example `"GF(101)"` or `"QQ"`).
///
/// # Safety
/// Strings must be NUL-terminated; `json_out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn indepforge_generate(
    kind: *const c_char,
    field: *const c_char,
    seed: u64,
    json_out: *mut *mut c_char,
) -> IfStatus {
    guard(|| {
        if json_out.is_null() {
            return fail(IfStatus::NullPointer, "null output pointer");
        }
        *json_out = ptr::null_mut();
        let (kind, field) = match (read_str(kind), read_str(field)) {
            (Ok(k), Ok(f)) => (k, f),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        let doc = kind.parse::<GeneratorKind>().and_then(|kind| {
            let cfg = GeneratorConfig {
                seed,
                field: FieldSpec::parse(field)?,
                ..GeneratorConfig::default()
            };
            generate_instance(&cfg, kind)
        });
        match doc {
            Ok(d) => {
                hand_out(d.to_json(), json_out);
                IfStatus::Ok
            }
            Err(e) => fail(status_of(&e), &e.to_string()),
        }
    })
}

/// # Safety
/// `inst` must come from [`indepforge_instance_parse`] or be NULL.
#[no_mangle]
pub unsafe extern "C" fn indepforge_instance_free(inst: *mut IfInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// # Safety
/// `s` must be a string returned by this library or NULL.
#[no_mangle]
pub unsafe extern "C" fn indepforge_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

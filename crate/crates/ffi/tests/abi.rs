use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use indepforge_ffi::*;

const LINE: &str = r#"{
  "schema": "indepforge/instance/1",
  "field": "GF(101)",
  "rings": {"A": {"vars": ["x"], "truncation": 8}},
  "command": {"name": "strong-indep", "params": {"ideal": ["x^3"]}}
}"#;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { indepforge_string_free(s) };
    out
}

fn last_error() -> String {
    let p = indepforge_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn parse(src: &str) -> *mut IfInstance {
    let c = CString::new(src).unwrap();
    let mut inst = ptr::null_mut();
    assert_eq!(
        unsafe { indepforge_instance_parse(c.as_ptr(), &mut inst) },
        IfStatus::Ok
    );
    inst
}

fn run(inst: *const IfInstance, caps: IfCaps) -> (IfStatus, serde_json::Value) {
    let mut rep = ptr::null_mut();
    let st = unsafe { indepforge_run(inst, caps, &mut rep) };
    (st, serde_json::from_str(&take(rep)).unwrap())
}

#[test]
fn run_and_override_command() {
    let inst = parse(LINE);
    let (st, v) = run(inst, indepforge_caps_default());
    assert_eq!(st, IfStatus::Ok);
    assert_eq!(v["result"]["strongly_independent"], false);
    assert_eq!(v["result"]["failing_power"], 2);
    assert!(indepforge_last_error().is_null());

    let name = CString::new("edim").unwrap();
    assert_eq!(
        unsafe { indepforge_instance_set_command(inst, name.as_ptr(), ptr::null()) },
        IfStatus::Ok
    );
    let (st, v) = run(inst, indepforge_caps_default());
    assert_eq!(st, IfStatus::Ok);
    assert_eq!(v["command"]["name"], "edim");
    assert_eq!(v["result"]["edim"], 1);
    unsafe { indepforge_instance_free(inst) };
}

#[test]
fn error_codes_match_exit_codes() {
    let c = CString::new(LINE.replace("x^3", "y^3")).unwrap();
    let inst = parse(c.to_str().unwrap());
    let (st, v) = run(inst, indepforge_caps_default());
    assert_eq!(st, IfStatus::Invalid);
    assert_eq!(v["error"]["exit_code"], 1);
    assert!(last_error().contains("`y`"));

    let caps = IfCaps {
        max_dim: 4,
        ..indepforge_caps_default()
    };
    let (st, _) = run(inst, caps);
    assert_eq!(st, IfStatus::CapExceeded);
    unsafe { indepforge_instance_free(inst) };

    let bad = CString::new("{\"schema\": 1}").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { indepforge_instance_parse(bad.as_ptr(), &mut out) },
        IfStatus::Invalid
    );
    assert!(out.is_null());
    assert_eq!(
        unsafe { indepforge_instance_parse(ptr::null(), &mut out) },
        IfStatus::NullPointer
    );
    let mut rep = ptr::null_mut();
    assert_eq!(
        unsafe { indepforge_run(ptr::null(), indepforge_caps_default(), &mut rep) },
        IfStatus::NullPointer
    );
    unsafe { indepforge_instance_free(ptr::null_mut()) };
}

#[test]
fn generate_then_run_is_deterministic() {
    let kind = CString::new("liaison").unwrap();
    let field = CString::new("GF(101)").unwrap();
    let gen = || {
        let mut out = ptr::null_mut();
        assert_eq!(
            unsafe { indepforge_generate(kind.as_ptr(), field.as_ptr(), 5, &mut out) },
            IfStatus::Ok
        );
        take(out)
    };
    let doc = gen();
    assert_eq!(doc, gen());
    let inst = parse(&doc);
    let (st, a) = run(inst, indepforge_caps_default());
    let (_, b) = run(inst, indepforge_caps_default());
    assert_eq!(st, IfStatus::Ok);
    assert_eq!(a, b);
    assert_eq!(a["result"]["all_hold"], true);
    unsafe { indepforge_instance_free(inst) };

    let nope = CString::new("nope").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { indepforge_generate(nope.as_ptr(), field.as_ptr(), 5, &mut out) },
        IfStatus::Invalid
    );
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(indepforge_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_api_and_compiles() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/indepforge.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "indepforge_instance_parse",
        "indepforge_instance_set_command",
        "indepforge_run",
        "indepforge_generate",
        "indepforge_instance_free",
        "indepforge_string_free",
        "indepforge_last_error",
        "indepforge_caps_default",
        "typedef struct IfInstance IfInstance",
        "IF_STATUS_THEOREM_FALSIFIED = 3",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
    // a C compiler, when present, must accept the header as is
    if let Ok(out) = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"])
        .arg(&header)
        .output()
    {
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn c_program_links_against_the_static_library() {
    let Ok(exe) = std::env::current_exe() else {
        return;
    };
    // target/<profile>/deps/<test> -> target/<profile>/libindepforge_ffi.a
    let lib = exe
        .parent()
        .and_then(Path::parent)
        .map(|p| p.join("libindepforge_ffi.a"));
    let Some(lib) = lib.filter(|l| l.exists()) else {
        return;
    };
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let tmp = tempfile::tempdir().unwrap();
    let bin = tmp.path().join("smoke");
    let Ok(out) = Command::new("cc")
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .output()
    else {
        return;
    };
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let run = Command::new(&bin).output().unwrap();
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stdout)
    );
}

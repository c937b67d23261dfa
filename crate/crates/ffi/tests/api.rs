use std::ffi::{c_char, CStr, CString};
use std::ptr;

use groupoid_homology_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    gh_string_free(p);
    s
}

unsafe fn last_error() -> String {
    let p = gh_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

unsafe fn homology(spec: &str, max_degree: u32, budget: u64) -> Result<*mut GhHomology, (GhStatus, String)> {
    let mut s = ptr::null_mut();
    let st = gh_spec_parse_json(cstr(spec).as_ptr(), &mut s);
    if st != GhStatus::Ok {
        return Err((st, last_error()));
    }
    let mut h = ptr::null_mut();
    let st = gh_homology_compute(s, max_degree, budget, &mut h);
    gh_spec_free(s);
    if st == GhStatus::Ok {
        Ok(h)
    } else {
        Err((st, last_error()))
    }
}

unsafe fn table(json: &str) -> *mut GhTable {
    let mut t = ptr::null_mut();
    assert_eq!(gh_table_parse_json(cstr(json).as_ptr(), 0, &mut t), GhStatus::Ok);
    t
}

const SHIFT2: &str = r#"{"matrix":[[2]]}"#;

fn element(pairs: &str) -> String {
    format!(r#"{{"graph":{SHIFT2},"pairs":{pairs}}}"#)
}

#[test]
fn homology_round_trip() {
    unsafe {
        let h = homology(r#"{"type":"kgraph","edge_counts":[3,5]}"#, 0, 0).unwrap();
        let (mut rank, mut tors) = (9, 9);
        assert_eq!(gh_homology_degree(h, 1, &mut rank, &mut tors), GhStatus::Ok);
        assert_eq!((rank, tors), (0, 1));
        let mut out = ptr::null_mut();
        assert_eq!(gh_homology_to_json(h, &mut out), GhStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["groups"]["0"]["torsion"], serde_json::json!([2]));
        gh_homology_free(h);
    }
}

#[test]
fn invariants_for_penrose() {
    unsafe {
        let spec = r#"{"type":"graded","homology":{"groups":{"0":{"rank":8,"torsion":[]},"1":{"rank":5,"torsion":[]},"2":{"rank":1,"torsion":[]}}}}"#;
        let h = homology(spec, 0, 0).unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(gh_invariants_json(h, 8, ptr::null(), &mut out), GhStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["series_full"], serde_json::json!([1, 5, 11, 15, 16, 16, 16, 16, 16]));
        assert_eq!(v["series_derived"], serde_json::json!([1, 0, 1, 0, 1, 0, 1, 0, 1]));
        assert_eq!(v["amplified"]["scope"], "amplified-only");
        let bad = cstr("minimal,shiny");
        assert_eq!(gh_invariants_json(h, 8, bad.as_ptr(), &mut out), GhStatus::InvalidInput);
        assert!(last_error().contains("shiny"));
        gh_homology_free(h);
    }
}

#[test]
fn status_codes() {
    unsafe {
        let (st, msg) = homology(r#"{"type":"sft","matrix":[[2,-1]]}"#, 0, 0).unwrap_err();
        assert_eq!(st, GhStatus::InvalidInput);
        assert!(!msg.is_empty());
        let z2 = r#"{"type":"finite","units":1,"arrows":[{"id":0,"src":0,"tgt":0,"inv":0},{"id":1,"src":0,"tgt":0,"inv":1}],"compose":[[0,0,0],[0,1,1],[1,0,1],[1,1,0]]}"#;
        let (st, msg) = homology(z2, 30, 1024).unwrap_err();
        assert_eq!(st, GhStatus::Refused);
        assert!(msg.contains("budget"));
        let h = homology(z2, 2, 0).unwrap();
        let (mut r, mut t) = (0, 0);
        assert_eq!(gh_homology_degree(h, 3, &mut r, &mut t), GhStatus::InvalidInput);
        assert_eq!(gh_homology_degree(h, 1, ptr::null_mut(), &mut t), GhStatus::NullPointer);
        gh_homology_free(h);
        let mut s = ptr::null_mut();
        assert_eq!(gh_spec_parse_json(ptr::null(), &mut s), GhStatus::NullPointer);
        let bytes = [0xffu8, 0];
        assert_eq!(gh_spec_parse_json(bytes.as_ptr().cast(), &mut s), GhStatus::InvalidUtf8);
        assert_eq!(gh_homology_compute(ptr::null(), 0, 0, &mut ptr::null_mut()), GhStatus::NullPointer);
    }
}

#[test]
fn table_arithmetic() {
    unsafe {
        let s = table(&element(r#"[{"u":"e0","v":"e1"},{"u":"e1","v":"e0"}]"#));
        let t = table(&element(r#"[{"u":"e0 e0","v":"e0"},{"u":"e0 e1","v":"e1 e0"},{"u":"e1","v":"e1 e1"}]"#));
        let mut st = ptr::null_mut();
        assert_eq!(gh_table_compose(s, t, &mut st), GhStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(gh_table_compact(st, &mut out), GhStatus::Ok);
        assert_eq!(take(out), "{(00→1),(01→00),(1→01)}");

        let mut inv = ptr::null_mut();
        assert_eq!(gh_table_inverse(st, &mut inv), GhStatus::Ok);
        let mut id = ptr::null_mut();
        assert_eq!(gh_table_compose(st, inv, &mut id), GhStatus::Ok);
        let ident = table(&element(r#"[{"u":"","v":""}]"#));
        let mut eq = false;
        assert_eq!(gh_table_equals(id, ident, &mut eq), GhStatus::Ok);
        assert!(eq);

        let mut order = 0;
        assert_eq!(gh_table_order(s, 8, &mut order), GhStatus::Ok);
        assert_eq!(order, 2);
        assert_eq!(gh_table_order(t, 8, &mut order), GhStatus::Ok);
        assert_eq!(order, 0);

        let copies = [1u32, 2];
        let mut e = ptr::null_mut();
        assert_eq!(gh_table_embed(s, copies.as_ptr(), 2, &mut e), GhStatus::Ok);
        let mut bad = ptr::null_mut();
        assert_eq!(gh_table_compose(e, t, &mut bad), GhStatus::Mismatch);
        assert!(last_error().contains("supports"));
        assert_eq!(gh_table_to_json(e, &mut out), GhStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["pairs"].as_array().unwrap().len(), 3);

        for p in [s, t, st, inv, id, ident, e] {
            gh_table_free(p);
        }
    }
}

#[test]
fn table_refusals() {
    unsafe {
        let mut t = ptr::null_mut();
        let perm = cstr(r#"{"graph":{"matrix":[[0,1],[1,0]]},"pairs":[{"u":"","v":""}]}"#);
        assert_eq!(gh_table_parse_json(perm.as_ptr(), 0, &mut t), GhStatus::Refused);
        let gap = cstr(&element(r#"[{"u":"e0","v":"e0"}]"#));
        assert_eq!(gh_table_parse_json(gap.as_ptr(), 0, &mut t), GhStatus::InvalidInput);
        assert!(last_error().contains("1:1"));
        gh_table_free(ptr::null_mut());
        gh_string_free(ptr::null_mut());
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(gh_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

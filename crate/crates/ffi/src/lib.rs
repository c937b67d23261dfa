//! C ABI over the groupoid-homology library.
//!
//! Objects cross the boundary as opaque handles created by `gh_*_parse` or
//! `gh_*_compute` and released by the matching `gh_*_free`. Every fallible
//! call returns a [`GhStatus`]; on failure a message is available from
//! [`gh_last_error`] until the next call on the same thread. Strings
//! returned through `char **` out-parameters are owned by the caller and
//! released with [`gh_string_free`].

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use groupoid_homology::bigjson::JsonInt;
use groupoid_homology::graded::{poincare_derived, poincare_full, rationalize, GradedAbGroup};
use groupoid_homology::homology::{compute, BruteForceOptions, HomologyError, HomologyOptions};
use groupoid_homology::invariants::{
    ah_resolve, amplified_note, rational_derived, rational_full, series_exact_through, vanishing_report,
    Declarations,
};
use groupoid_homology::models::{self, GroupoidSpec, ModelError};
use groupoid_homology::tfg::{self, Order, PrefixTable, TfgError};
use serde_json::json;

fn ints<T: Into<JsonInt>>(v: Vec<T>) -> Vec<JsonInt> {
    v.into_iter().map(Into::into).collect()
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GhStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed document or failed validation.
    InvalidInput = 3,
    /// Budget, hypothesis or depth-cap refusal.
    Refused = 4,
    /// Operands live on different graphs or supports.
    Mismatch = 5,
    /// A Rust panic was caught at the boundary.
    Internal = 6,
}

/// Parsed groupoid spec.
pub struct GhSpec {
    spec: GroupoidSpec,
}

/// Graded homology `H_*(G)`.
pub struct GhHomology {
    homology: GradedAbGroup,
}

/// Full-group element as a prefix-exchange table.
pub struct GhTable {
    table: PrefixTable,
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

struct Failure(GhStatus, String);

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Self {
        Failure(GhStatus::InvalidInput, e.to_string())
    }
}

impl From<HomologyError> for Failure {
    fn from(e: HomologyError) -> Self {
        let status = match e {
            HomologyError::NonFiniteSupport(_) | HomologyError::LevelOutOfRange { .. } => GhStatus::InvalidInput,
            _ => GhStatus::Refused,
        };
        Failure(status, e.to_string())
    }
}

impl From<TfgError> for Failure {
    fn from(e: TfgError) -> Self {
        let status = match e {
            TfgError::Hypothesis(_) | TfgError::DepthExceeded { .. } => GhStatus::Refused,
            TfgError::GraphMismatch | TfgError::SupportMismatch { .. } | TfgError::NotContained { .. } => {
                GhStatus::Mismatch
            }
            _ => GhStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> GhStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GhStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            GhStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(GhStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(GhStatus::InvalidUtf8, "string is not valid UTF-8".into()))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(GhStatus::NullPointer, format!("null {what}")))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(GhStatus::NullPointer, "null out-parameter".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(GhStatus::NullPointer, "null out-parameter".into()));
    }
    let c = CString::new(s).map_err(|_| Failure(GhStatus::Internal, "string contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn check_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure(GhStatus::NullPointer, "null out-parameter".into()))
    } else {
        Ok(())
    }
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next `gh_*` call on the same thread.
#[no_mangle]
pub extern "C" fn gh_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn gh_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` is NULL or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a groupoid spec from JSON text.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gh_spec_parse_json(json: *const c_char, out: *mut *mut GhSpec) -> GhStatus {
    guard(|| {
        let spec = models::parse_spec(text(json)?, models::Format::Json)?;
        put(out, GhSpec { spec })
    })
}

/// # Safety
/// `spec` is NULL or a live handle from [`gh_spec_parse_json`].
#[no_mangle]
pub unsafe extern "C" fn gh_spec_free(spec: *mut GhSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// Computes `H_*` of a spec. Finite groupoids are reduced through
/// `max_degree` within `memory_budget` bytes; 0 selects the defaults.
///
/// # Safety
/// `spec` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gh_homology_compute(
    spec: *const GhSpec,
    max_degree: u32,
    memory_budget: u64,
    out: *mut *mut GhHomology,
) -> GhStatus {
    guard(|| {
        let spec = deref(spec, "spec")?;
        let mut opts = HomologyOptions::default();
        if max_degree > 0 {
            opts.max_degree = max_degree as usize;
        }
        if memory_budget > 0 {
            opts.bruteforce = BruteForceOptions {
                memory_budget,
                ..opts.bruteforce
            };
        }
        let c = compute(&spec.spec, &opts)?;
        put(out, GhHomology { homology: c.homology })
    })
}

/// # Safety
/// `h` is NULL or a live handle from [`gh_homology_compute`].
#[no_mangle]
pub unsafe extern "C" fn gh_homology_free(h: *mut GhHomology) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Free rank and number of torsion summands of `H_degree`. Fails with
/// `InvalidInput` past the known range of a truncated result.
///
/// # Safety
/// `h` is a live handle; `rank` and `torsion_count` are writable.
#[no_mangle]
pub unsafe extern "C" fn gh_homology_degree(
    h: *const GhHomology,
    degree: u32,
    rank: *mut usize,
    torsion_count: *mut usize,
) -> GhStatus {
    guard(|| {
        let h = deref(h, "homology")?;
        check_out(rank)?;
        check_out(torsion_count)?;
        let g = h
            .homology
            .try_get(degree as usize)
            .ok_or_else(|| Failure(GhStatus::InvalidInput, format!("degree {degree} is past the known range")))?;
        *rank = g.rank();
        *torsion_count = g.torsion().len();
        Ok(())
    })
}

/// # Safety
/// `h` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gh_homology_to_json(h: *const GhHomology, out: *mut *mut c_char) -> GhStatus {
    guard(|| {
        let h = deref(h, "homology")?;
        put_string(out, serde_json::to_string(&h.homology).expect("homology serializes"))
    })
}

/// Rational homology, Poincaré series through degree `n`, vanishing
/// verdict and AH resolution as one JSON object. `declare` is NULL or a
/// comma-separated list of `minimal`, `comparison`, `no-isolated-points`.
///
/// # Safety
/// `h` is a live handle; `declare` is NULL or NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gh_invariants_json(
    h: *const GhHomology,
    n: u32,
    declare: *const c_char,
    out: *mut *mut c_char,
) -> GhStatus {
    guard(|| {
        let h = &deref(h, "homology")?.homology;
        let declared = if declare.is_null() {
            Declarations::default()
        } else {
            Declarations::parse_list(text(declare)?).map_err(|m| Failure(GhStatus::InvalidInput, m))?
        };
        let n = n as usize;
        let d = rationalize(h);
        let ah = ah_resolve(h);
        let note = amplified_note(&ah, &declared);
        let doc = json!({
            "through": n,
            "exact_through": series_exact_through(h, n),
            "rational_full": ints(rational_full(h, n).dense(n)),
            "rational_derived": ints(rational_derived(h, n).dense(n)),
            "series_full": ints(poincare_full(&d, n).coeffs().to_vec()),
            "series_derived": ints(poincare_derived(&d, n).coeffs().to_vec()),
            "vanishing": vanishing_report(h),
            "ah": ah,
            "amplified": note,
        });
        put_string(out, doc.to_string())
    })
}

/// Parses an element document `{"graph": …, "pairs": […]}`. A zero
/// `depth_cap` selects the default.
///
/// # Safety
/// `json` is NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gh_table_parse_json(json: *const c_char, depth_cap: u32, out: *mut *mut GhTable) -> GhStatus {
    guard(|| {
        let cap = if depth_cap == 0 { tfg::DEFAULT_DEPTH_CAP } else { depth_cap as usize };
        let table = tfg::table_from_json(text(json)?, cap)?;
        put(out, GhTable { table })
    })
}

/// # Safety
/// `t` is NULL or a live table handle.
#[no_mangle]
pub unsafe extern "C" fn gh_table_free(t: *mut GhTable) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// `a ∘ b`: apply `b`, then `a`.
///
/// # Safety
/// `a` and `b` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gh_table_compose(a: *const GhTable, b: *const GhTable, out: *mut *mut GhTable) -> GhStatus {
    guard(|| {
        let (a, b) = (deref(a, "table")?, deref(b, "table")?);
        let table = a.table.compose(&b.table)?;
        put(out, GhTable { table })
    })
}

/// # Safety
/// `t` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gh_table_inverse(t: *const GhTable, out: *mut *mut GhTable) -> GhStatus {
    guard(|| {
        let table = deref(t, "table")?.table.inverse();
        put(out, GhTable { table })
    })
}

/// Extends `t` by the identity to the `len` copy indices in `copies`.
///
/// # Safety
/// `t` is a live handle; `copies` points to `len` readable values; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gh_table_embed(
    t: *const GhTable,
    copies: *const u32,
    len: usize,
    out: *mut *mut GhTable,
) -> GhStatus {
    guard(|| {
        let t = deref(t, "table")?;
        if copies.is_null() && len > 0 {
            return Err(Failure(GhStatus::NullPointer, "null copies".into()));
        }
        let set: BTreeSet<u32> = if len == 0 {
            BTreeSet::new()
        } else {
            std::slice::from_raw_parts(copies, len).iter().copied().collect()
        };
        let table = t.table.corner_embed(&set)?;
        put(out, GhTable { table })
    })
}

/// # Safety
/// `a` and `b` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gh_table_equals(a: *const GhTable, b: *const GhTable, out: *mut bool) -> GhStatus {
    guard(|| {
        let (a, b) = (deref(a, "table")?, deref(b, "table")?);
        check_out(out)?;
        if a.table.graph().spec() != b.table.graph().spec() {
            return Err(TfgError::GraphMismatch.into());
        }
        *out = a.table.equals(&b.table);
        Ok(())
    })
}

/// Order of `t` if at most `cap`; writes 0 when the order exceeds `cap`
/// or a power outgrows the depth cap.
///
/// # Safety
/// `t` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gh_table_order(t: *const GhTable, cap: u64, out: *mut u64) -> GhStatus {
    guard(|| {
        let t = deref(t, "table")?;
        check_out(out)?;
        *out = match t.table.order(cap)? {
            Order::Finite { order } => order,
            Order::ExceedsCap { .. } | Order::DepthExceeded { .. } => 0,
        };
        Ok(())
    })
}

/// # Safety
/// `t` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gh_table_to_json(t: *const GhTable, out: *mut *mut c_char) -> GhStatus {
    guard(|| {
        let t = deref(t, "table")?;
        put_string(out, tfg::table_to_json(&t.table).to_string())
    })
}

/// Compact form such as `{(00→1),(01→00),(1→01)}`, in UTF-8.
///
/// # Safety
/// `t` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn gh_table_compact(t: *const GhTable, out: *mut *mut c_char) -> GhStatus {
    guard(|| {
        let t = deref(t, "table")?;
        put_string(out, t.table.to_string())
    })
}

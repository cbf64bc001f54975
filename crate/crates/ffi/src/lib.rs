//! C ABI over `lieaff`.
//!
//! Algebras are passed around as opaque [`LieaffAlgebra`] handles. Every
//! fallible function returns a [`LieaffStatus`]; on failure a message is
//! available from [`lieaff_last_error`] on the same thread. Strings handed
//! out by the library must be released with [`lieaff_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lieaff::format::parse_algebra;
use lieaff::lie::{builtin, LieAlgebra};
use lieaff::obstructions::{decide_existence, Verdict};
use lieaff::report;
use lieaff::search::SearchConfig;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LieaffStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed JSON or coefficient strings.
    Parse = 3,
    /// Well-formed input that is not a Lie algebra, or an unknown name.
    InvalidAlgebra = 4,
    Internal = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LieaffVerdict {
    Yes = 0,
    No = 1,
    Unknown = 2,
}

impl From<Verdict> for LieaffVerdict {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Yes => LieaffVerdict::Yes,
            Verdict::No => LieaffVerdict::No,
            Verdict::Unknown => LieaffVerdict::Unknown,
        }
    }
}

/// Opaque handle to a validated Lie algebra.
pub struct LieaffAlgebra {
    inner: LieAlgebra,
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

struct Failure(LieaffStatus, String);

type FfiResult<T> = Result<T, Failure>;

/// Runs `f`, translating errors and panics into a status code.
fn guard(f: impl FnOnce() -> FfiResult<()>) -> LieaffStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LieaffStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            LieaffStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> FfiResult<&'a str> {
    if s.is_null() {
        return Err(Failure(
            LieaffStatus::NullPointer,
            format!("{what} is null"),
        ));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Failure(LieaffStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn algebra_ref<'a>(g: *const LieaffAlgebra) -> FfiResult<&'a LieAlgebra> {
    g.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| Failure(LieaffStatus::NullPointer, "algebra handle is null".into()))
}

unsafe fn out_ptr<'a, T>(out: *mut T) -> FfiResult<&'a mut T> {
    out.as_mut()
        .ok_or_else(|| Failure(LieaffStatus::NullPointer, "output pointer is null".into()))
}

fn to_c_string(s: String) -> FfiResult<*mut c_char> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(LieaffStatus::Internal, "output contains a NUL byte".into()))
}

fn config(starts: u32, seed: u64) -> SearchConfig {
    SearchConfig {
        starts: starts as usize,
        seed,
        ..SearchConfig::default()
    }
}

/// Parses an algebra from its JSON description.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn lieaff_algebra_from_json(
    json: *const c_char,
    out: *mut *mut LieaffAlgebra,
) -> LieaffStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        let text = read_str(json, "json")?;
        let inner = parse_algebra(text).map_err(|e| {
            let status = match e {
                lieaff::format::FormatError::Lie(_) => LieaffStatus::InvalidAlgebra,
                _ => LieaffStatus::Parse,
            };
            Failure(status, e.to_string())
        })?;
        *out = Box::into_raw(Box::new(LieaffAlgebra { inner }));
        Ok(())
    })
}

/// Looks up a built-in algebra: `abelian3`, `heis3`, `sol3` or `sl2`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn lieaff_algebra_builtin(
    name: *const c_char,
    out: *mut *mut LieaffAlgebra,
) -> LieaffStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        let name = read_str(name, "name")?;
        let inner =
            builtin(name).map_err(|e| Failure(LieaffStatus::InvalidAlgebra, e.to_string()))?;
        *out = Box::into_raw(Box::new(LieaffAlgebra { inner }));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn lieaff_algebra_free(g: *mut LieaffAlgebra) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn lieaff_algebra_dim(
    g: *const LieaffAlgebra,
    out: *mut usize,
) -> LieaffStatus {
    guard(|| {
        let g = algebra_ref(g)?;
        *out_ptr(out)? = g.dim();
        Ok(())
    })
}

/// Decides existence of a flat torsion-free invariant connection, using
/// `starts` numerical starts from `seed` when a search is needed.
///
/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn lieaff_decide(
    g: *const LieaffAlgebra,
    starts: u32,
    seed: u64,
    out: *mut LieaffVerdict,
) -> LieaffStatus {
    guard(|| {
        let g = algebra_ref(g)?;
        let out = out_ptr(out)?;
        *out = decide_existence(g, &config(starts, seed)).verdict.into();
        Ok(())
    })
}

/// Full analysis report as JSON. Free the result with
/// [`lieaff_string_free`].
///
/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn lieaff_analyze_json(
    g: *const LieaffAlgebra,
    starts: u32,
    seed: u64,
    out: *mut *mut c_char,
) -> LieaffStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        let g = algebra_ref(g)?;
        let r = report::analyze(g, &config(starts, seed));
        let json = serde_json::to_string(&r)
            .map_err(|e| Failure(LieaffStatus::Internal, e.to_string()))?;
        *out = to_c_string(json)?;
        Ok(())
    })
}

/// The three-dimensional classification table as JSON.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn lieaff_classify_dim3_json(
    starts: u32,
    seed: u64,
    out: *mut *mut c_char,
) -> LieaffStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        let t = report::classify_dim3(&config(starts, seed));
        let json = serde_json::to_string(&t)
            .map_err(|e| Failure(LieaffStatus::Internal, e.to_string()))?;
        *out = to_c_string(json)?;
        Ok(())
    })
}

/// Copy of the last error message on this thread, or null if the last call
/// succeeded. Free with [`lieaff_string_free`].
#[no_mangle]
pub extern "C" fn lieaff_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map_or(ptr::null_mut(), |s| s.clone().into_raw())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn lieaff_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

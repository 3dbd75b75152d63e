//! C ABI over `jetgeom`.
//!
//! Objects cross the boundary as opaque handles created by `jg_*_new`-style
//! constructors and released with the matching `jg_*_free`. Every fallible
//! call returns a [`JgStatus`]; on failure the thread-local message from
//! [`jg_last_error_message`] describes what went wrong. Strings returned
//! through `char **` are owned by the caller and released with
//! [`jg_string_free`]. Panics never unwind into C; they surface as
//! `JG_STATUS_INTERNAL`.

use jetgeom::cartan::CartanPlane;
use jetgeom::grassmann::{dim_formulas, lift, CartanSubspace};
use jetgeom::io::{parse_subspace, SubspaceOutput};
use jetgeom::pdesing::{ma_example, singular_membership, Membership, Pde3};
use jetgeom::polar::{dim_polar_formula, polar_report, sharp_target_dim};
use jetgeom::rng::SeededRng;
use jetgeom::symalg::Context;
use jetgeom::Error;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JgStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidInput = 2,
    Parse = 3,
    InvalidContext = 4,
    NotIntegral = 5,
    Unsupported = 6,
    Undecided = 7,
    Falsified = 8,
    Internal = 9,
}

/// Outcome of a singularity-equation membership query.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JgMembership {
    NotMember = 0,
    /// a rational witness point exists
    Member = 1,
    /// witnesses exist only at irrational parameters
    MemberIrrational = 2,
}

/// Closed-form dimensions for `(n, m, k, s)`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct JgDims {
    pub flag: usize,
    pub isotropic: usize,
    pub fiber: usize,
    pub stabilizer: usize,
    pub polar: usize,
    pub sharp_target: usize,
}

/// Opaque handle to a subspace of a Cartan plane.
pub struct JgSubspace(CartanSubspace);

/// Opaque handle to a parsed third-order equation in two variables.
pub struct JgPde(Pde3);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> JgStatus {
    match e {
        Error::Parse { .. } => JgStatus::Parse,
        Error::InvalidContext(_) | Error::ContextMismatch(_) => JgStatus::InvalidContext,
        Error::NotIntegralElement | Error::NotHorizontal | Error::NotTangent(..) => JgStatus::NotIntegral,
        Error::UnsupportedOrder(..) => JgStatus::Unsupported,
        Error::Undecided(_) => JgStatus::Undecided,
        Error::NoSolution => JgStatus::Falsified,
        _ => JgStatus::InvalidInput,
    }
}

/// Runs `f`, recording errors and trapping panics.
fn guard(f: impl FnOnce() -> Result<(), (JgStatus, String)>) -> JgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            JgStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error (panic)".into());
            JgStatus::Internal
        }
    }
}

fn lib_err(e: Error) -> (JgStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(name: &str) -> (JgStatus, String) {
    (JgStatus::NullArgument, format!("{name} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, (JgStatus, String)> {
    if p.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (JgStatus::InvalidInput, format!("{name} is not valid UTF-8")))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (JgStatus, String)> {
    let c = CString::new(s).map_err(|_| (JgStatus::Internal, "output contains a nul byte".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

/// Message for the most recent failure on this thread, or null after a
/// success. Valid until the next `jg_*` call on the same thread.
#[no_mangle]
pub extern "C" fn jg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn jg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn jg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Closed-form dimensions; fails unless `1 <= s <= n` and the context is valid.
///
/// # Safety
/// `out` must be null or point to writable memory for a `JgDims`.
#[no_mangle]
pub unsafe extern "C" fn jg_dims(n: usize, m: usize, k: usize, s: usize, out: *mut JgDims) -> JgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let ctx = Context::new(n, m, k).map_err(lib_err)?;
        if s == 0 || s > n {
            return Err((JgStatus::InvalidInput, format!("need 1 <= s <= n, got s = {s}, n = {n}")));
        }
        let f = dim_formulas(&ctx, s);
        *out = JgDims {
            flag: f.flag,
            isotropic: f.isotropic,
            fiber: f.fiber,
            stabilizer: f.stabilizer,
            polar: dim_polar_formula(&ctx, s),
            sharp_target: sharp_target_dim(&ctx, s),
        };
        Ok(())
    })
}

/// Parses the JSON subspace format used by the command-line tool.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jg_subspace_from_json(text: *const c_char, out: *mut *mut JgSubspace) -> JgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = read_str(text, "text")?;
        let sigma = parse_subspace(text).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(JgSubspace(sigma)));
        Ok(())
    })
}

/// Seeded random integral element of dimension `s`: the lift of a random
/// `s`-dimensional shadow by a random degree-`k` polynomial.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jg_subspace_random_integral(
    n: usize,
    m: usize,
    k: usize,
    s: usize,
    seed: u64,
    out: *mut *mut JgSubspace,
) -> JgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let ctx = Context::new(n, m, k).map_err(lib_err)?;
        if s > n {
            return Err((JgStatus::InvalidInput, format!("s = {s} exceeds n = {n}")));
        }
        let plane = Arc::new(CartanPlane::new(ctx));
        let mut rng = SeededRng::new(seed);
        let sigma0 = rng.subspace(n, s);
        let p = rng.sym_poly(&ctx, k);
        let sigma = lift(&plane, &sigma0, &p).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(JgSubspace(sigma)));
        Ok(())
    })
}

/// Releases a subspace handle. Null is ignored.
///
/// # Safety
/// `h` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn jg_subspace_free(h: *mut JgSubspace) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jg_subspace_dim(h: *const JgSubspace, out: *mut usize) -> JgStatus {
    guard(|| {
        let (Some(h), false) = (h.as_ref(), out.is_null()) else {
            return Err(null("handle or out"));
        };
        *out = h.0.dim();
        Ok(())
    })
}

/// Whether the subspace is horizontal and isotropic.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jg_subspace_is_integral(h: *const JgSubspace, out: *mut bool) -> JgStatus {
    guard(|| {
        let (Some(h), false) = (h.as_ref(), out.is_null()) else {
            return Err(null("handle or out"));
        };
        *out = h.0.is_integral_element();
        Ok(())
    })
}

/// Serializes the subspace in the JSON input format.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jg_subspace_to_json(h: *const JgSubspace, out: *mut *mut c_char) -> JgStatus {
    guard(|| {
        let (Some(h), false) = (h.as_ref(), out.is_null()) else {
            return Err(null("handle or out"));
        };
        write_string(out, json(&SubspaceOutput::new(&h.0)))
    })
}

/// Polar-plane report (tangent dimension, rank of the sharp map, polar
/// dimension, each against its closed form) as JSON.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jg_polar_report_json(h: *const JgSubspace, out: *mut *mut c_char) -> JgStatus {
    guard(|| {
        let (Some(h), false) = (h.as_ref(), out.is_null()) else {
            return Err(null("handle or out"));
        };
        let report = polar_report(&h.0).map_err(lib_err)?;
        write_string(out, json(&report))
    })
}

/// Parses `F(u_xxx, u_xxy, u_xyy, u_yyy)`.
///
/// # Safety
/// `source` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jg_pde_parse(source: *const c_char, out: *mut *mut JgPde) -> JgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let source = read_str(source, "source")?;
        let pde = Pde3::parse(source).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(JgPde(pde)));
        Ok(())
    })
}

/// Releases an equation handle. Null is ignored.
///
/// # Safety
/// `h` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn jg_pde_free(h: *mut JgPde) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Whether the line `line` (a 1-dimensional subspace for `n = 2, m = 1,
/// k = 3`) belongs to the singularity equation of `pde`.
///
/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jg_pde_membership(
    pde: *const JgPde,
    line: *const JgSubspace,
    out: *mut JgMembership,
) -> JgStatus {
    guard(|| {
        let (Some(pde), Some(line), false) = (pde.as_ref(), line.as_ref(), out.is_null()) else {
            return Err(null("pde, line or out"));
        };
        *out = match singular_membership(&line.0, &pde.0).map_err(lib_err)? {
            Membership::Member(_) => JgMembership::Member,
            Membership::MemberAtIrrational { .. } => JgMembership::MemberIrrational,
            Membership::NotMember => JgMembership::NotMember,
        };
        Ok(())
    })
}

/// The full Monge-Ampere example report as JSON, with the same sample
/// counts as the command-line tool.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jg_ma_example_json(seed: u64, out: *mut *mut c_char) -> JgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let report = ma_example(seed, 20, 50, 10).map_err(lib_err)?;
        write_string(out, json(&report))
    })
}

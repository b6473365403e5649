//! C ABI for the rsdyn library: opaque handles, integer status codes, and
//! a thread-local last-error message. The header `include/rsdyn.h` is
//! regenerated by the build script.
//!
//! Ownership rules: every handle-producing function transfers ownership of
//! the written handle to the caller, who must release it with the matching
//! `*_free`. Strings returned through `char**` are released with
//! `rsdyn_string_free`. All operations only read the handles they take.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};

use rsdyn::perfectness::max_separating_modulus;
use rsdyn::semigroup::{
    backward_orbit_cloud, forward_invariant_escape_region, repelling_cloud,
    self_similarity_defect, SemigroupSpec,
};
use rsdyn::sphere::{hausdorff_dist, PointCloud, SpherePoint};
use rsdyn::Error;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RsdynStatus {
    Ok = 0,
    /// Malformed input: bad JSON, unknown example, invalid parameters.
    InvalidInput = 1,
    /// A numerical procedure failed to converge.
    NumericalFailure = 2,
    /// A required pointer argument was null.
    NullPointer = 3,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 4,
}

/// Opaque semigroup handle.
pub struct RsdynSpec {
    inner: SemigroupSpec,
}

/// Opaque point-cloud handle.
pub struct RsdynCloud {
    inner: PointCloud,
    spec_hash: String,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(err: &Error) -> RsdynStatus {
    set_error(&err.to_string());
    if err.is_numerical() {
        RsdynStatus::NumericalFailure
    } else {
        RsdynStatus::InvalidInput
    }
}

/// Message for the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread; never free it.
#[no_mangle]
pub extern "C" fn rsdyn_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, RsdynStatus> {
    if ptr.is_null() {
        return Err(RsdynStatus::NullPointer);
    }
    // SAFETY: caller passes a NUL-terminated string (checked non-null).
    unsafe { CStr::from_ptr(ptr) }.to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        RsdynStatus::InvalidUtf8
    })
}

macro_rules! out_write {
    ($ptr:expr, $value:expr) => {{
        if $ptr.is_null() {
            return RsdynStatus::NullPointer;
        }
        // SAFETY: non-null out pointer provided by the caller.
        unsafe { *$ptr = $value };
    }};
}

macro_rules! deref {
    ($ptr:expr) => {{
        if $ptr.is_null() {
            return RsdynStatus::NullPointer;
        }
        // SAFETY: non-null handle created by this library.
        unsafe { &*$ptr }
    }};
}

/// Parse a semigroup spec from its JSON form.
#[no_mangle]
pub extern "C" fn rsdyn_spec_from_json(
    json: *const c_char,
    out: *mut *mut RsdynSpec,
) -> RsdynStatus {
    let text = match read_str(json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match serde_json::from_str::<SemigroupSpec>(text) {
        Ok(inner) => {
            out_write!(out, Box::into_raw(Box::new(RsdynSpec { inner })));
            RsdynStatus::Ok
        }
        Err(e) => {
            set_error(&e.to_string());
            RsdynStatus::InvalidInput
        }
    }
}

/// Look up a built-in example (cantor, koch, example4[:N], schottky[:N]).
#[no_mangle]
pub extern "C" fn rsdyn_spec_example(
    name: *const c_char,
    out: *mut *mut RsdynSpec,
) -> RsdynStatus {
    let name = match read_str(name) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match rsdyn::examples::by_name(name) {
        Ok(cfg) => {
            out_write!(out, Box::into_raw(Box::new(RsdynSpec { inner: cfg.spec })));
            RsdynStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Serialize the spec back to JSON. Free the string with
/// `rsdyn_string_free`.
#[no_mangle]
pub extern "C" fn rsdyn_spec_to_json(
    spec: *const RsdynSpec,
    out: *mut *mut c_char,
) -> RsdynStatus {
    let spec = deref!(spec);
    match serde_json::to_string(&spec.inner) {
        Ok(json) => {
            let c = CString::new(json).expect("JSON has no NUL bytes");
            out_write!(out, c.into_raw());
            RsdynStatus::Ok
        }
        Err(e) => {
            set_error(&e.to_string());
            RsdynStatus::InvalidInput
        }
    }
}

#[no_mangle]
pub extern "C" fn rsdyn_spec_generator_count(
    spec: *const RsdynSpec,
    out: *mut usize,
) -> RsdynStatus {
    let spec = deref!(spec);
    out_write!(out, spec.inner.generators().len());
    RsdynStatus::Ok
}

#[no_mangle]
pub extern "C" fn rsdyn_spec_free(spec: *mut RsdynSpec) {
    if !spec.is_null() {
        // SAFETY: pointer originated from Box::into_raw in this library.
        drop(unsafe { Box::from_raw(spec) });
    }
}

/// sup of the spherical Lipschitz constants of the generators.
#[no_mangle]
pub extern "C" fn rsdyn_lip_sup(spec: *const RsdynSpec, tol: f64, out: *mut f64) -> RsdynStatus {
    let spec = deref!(spec);
    if !(tol > 0.0) {
        set_error("tol must be positive");
        return RsdynStatus::InvalidInput;
    }
    let sup = spec
        .inner
        .generators()
        .iter()
        .map(|g| g.lipschitz_constant(tol))
        .fold(0.0, f64::max);
    out_write!(out, sup);
    RsdynStatus::Ok
}

/// Repelling fixed points of all words of length ≤ max_len.
#[no_mangle]
pub extern "C" fn rsdyn_repelling_cloud(
    spec: *const RsdynSpec,
    max_len: usize,
    out: *mut *mut RsdynCloud,
) -> RsdynStatus {
    let spec = deref!(spec);
    match repelling_cloud(&spec.inner, max_len) {
        Ok(approx) => {
            out_write!(
                out,
                Box::into_raw(Box::new(RsdynCloud {
                    inner: approx.cloud,
                    spec_hash: approx.spec_hash,
                }))
            );
            RsdynStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Randomized backward orbit from (seed_re, seed_im), or from ∞ when
/// seed_is_inf is nonzero. Deterministic in rng_seed.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub extern "C" fn rsdyn_backward_cloud(
    spec: *const RsdynSpec,
    seed_re: f64,
    seed_im: f64,
    seed_is_inf: c_int,
    n_samples: usize,
    burn_in: usize,
    rng_seed: u64,
    out: *mut *mut RsdynCloud,
) -> RsdynStatus {
    let spec = deref!(spec);
    let seed = if seed_is_inf != 0 {
        SpherePoint::Infinity
    } else {
        if !seed_re.is_finite() || !seed_im.is_finite() {
            set_error("seed coordinates must be finite");
            return RsdynStatus::InvalidInput;
        }
        SpherePoint::finite(seed_re, seed_im)
    };
    match backward_orbit_cloud(&spec.inner, seed, n_samples, burn_in, rng_seed) {
        Ok(approx) => {
            out_write!(
                out,
                Box::into_raw(Box::new(RsdynCloud {
                    inner: approx.cloud,
                    spec_hash: approx.spec_hash,
                }))
            );
            RsdynStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

#[no_mangle]
pub extern "C" fn rsdyn_cloud_len(cloud: *const RsdynCloud, out: *mut usize) -> RsdynStatus {
    let cloud = deref!(cloud);
    out_write!(out, cloud.inner.len());
    RsdynStatus::Ok
}

/// Read point `index`: writes coordinates and whether the point is ∞.
#[no_mangle]
pub extern "C" fn rsdyn_cloud_point(
    cloud: *const RsdynCloud,
    index: usize,
    out_re: *mut f64,
    out_im: *mut f64,
    out_is_inf: *mut c_int,
) -> RsdynStatus {
    let cloud = deref!(cloud);
    let Some(p) = cloud.inner.points.get(index) else {
        set_error("cloud index out of range");
        return RsdynStatus::InvalidInput;
    };
    match p {
        SpherePoint::Finite(z) => {
            out_write!(out_re, z.re);
            out_write!(out_im, z.im);
            out_write!(out_is_inf, 0);
        }
        SpherePoint::Infinity => {
            out_write!(out_re, 0.0);
            out_write!(out_im, 0.0);
            out_write!(out_is_inf, 1);
        }
    }
    RsdynStatus::Ok
}

/// SHA-256 digest of the producing spec. Free with `rsdyn_string_free`.
#[no_mangle]
pub extern "C" fn rsdyn_cloud_spec_hash(
    cloud: *const RsdynCloud,
    out: *mut *mut c_char,
) -> RsdynStatus {
    let cloud = deref!(cloud);
    let c = CString::new(cloud.spec_hash.clone()).expect("hex digest has no NUL");
    out_write!(out, c.into_raw());
    RsdynStatus::Ok
}

#[no_mangle]
pub extern "C" fn rsdyn_cloud_free(cloud: *mut RsdynCloud) {
    if !cloud.is_null() {
        // SAFETY: pointer originated from Box::into_raw in this library.
        drop(unsafe { Box::from_raw(cloud) });
    }
}

/// Symmetric Hausdorff distance between two clouds (chordal metric).
#[no_mangle]
pub extern "C" fn rsdyn_hausdorff_dist(
    a: *const RsdynCloud,
    b: *const RsdynCloud,
    out: *mut f64,
) -> RsdynStatus {
    let a = deref!(a);
    let b = deref!(b);
    match hausdorff_dist(&a.inner, &b.inner) {
        Ok(d) => {
            out_write!(out, d);
            RsdynStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Hausdorff defect of the cloud against its generator pullbacks.
#[no_mangle]
pub extern "C" fn rsdyn_self_similarity_defect(
    spec: *const RsdynSpec,
    cloud: *const RsdynCloud,
    out: *mut f64,
) -> RsdynStatus {
    let spec = deref!(spec);
    let cloud = deref!(cloud);
    match self_similarity_defect(&spec.inner, &cloud.inner) {
        Ok(d) => {
            out_write!(out, d);
            RsdynStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Smallest certified escape radius ≤ r_max; found is 0 when absent.
#[no_mangle]
pub extern "C" fn rsdyn_escape_radius(
    spec: *const RsdynSpec,
    r_max: f64,
    out_found: *mut c_int,
    out_radius: *mut f64,
) -> RsdynStatus {
    let spec = deref!(spec);
    match forward_invariant_escape_region(&spec.inner, r_max) {
        Some(r) => {
            out_write!(out_found, 1);
            out_write!(out_radius, r);
        }
        None => {
            out_write!(out_found, 0);
            out_write!(out_radius, 0.0);
        }
    }
    RsdynStatus::Ok
}

/// Maximum-modulus separating round annulus at the given scale floor;
/// found is 0 when no candidate separates.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub extern "C" fn rsdyn_max_separating_modulus(
    cloud: *const RsdynCloud,
    scale_floor: f64,
    out_found: *mut c_int,
    out_modulus: *mut f64,
    out_center_re: *mut f64,
    out_center_im: *mut f64,
    out_r1: *mut f64,
    out_r2: *mut f64,
) -> RsdynStatus {
    let cloud = deref!(cloud);
    match max_separating_modulus(&cloud.inner, scale_floor) {
        Ok(Some((modulus, annulus))) => {
            out_write!(out_found, 1);
            out_write!(out_modulus, modulus);
            out_write!(out_center_re, annulus.center.re);
            out_write!(out_center_im, annulus.center.im);
            out_write!(out_r1, annulus.r1);
            out_write!(out_r2, annulus.r2);
            RsdynStatus::Ok
        }
        Ok(None) => {
            out_write!(out_found, 0);
            out_write!(out_modulus, 0.0);
            RsdynStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Free a string returned by this library.
#[no_mangle]
pub extern "C" fn rsdyn_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: pointer originated from CString::into_raw in this library.
        drop(unsafe { CString::from_raw(s) });
    }
}

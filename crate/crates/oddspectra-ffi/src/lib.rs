//! C bindings. Handles are opaque heap pointers; every fallible call
//! returns an OddStatus and writes results through out-pointers. Spectra
//! cross the boundary as parallel arrays (value, multiplicity) sorted by
//! value; callers size the buffers with the reported length.

use std::os::raw::c_char;
use std::sync::Arc;

use oddspectra::field::Field;
use oddspectra::funcs::{self, FunctionTable};
use oddspectra::{boom, charsum, diff, Error};

pub struct OddField {
    inner: Arc<Field>,
}

pub struct OddFn {
    inner: FunctionTable,
}

/// Call outcome. Zero is success; everything else leaves out-params
/// untouched except where noted.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OddStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotPrime = 3,
    EvenCharacteristic = 4,
    TooLarge = 5,
    ResidueMismatch = 6,
    DivisionByZero = 7,
    /// The spectrum needs more entries than the caller's buffer holds;
    /// the required length has been written to len_out.
    BufferTooSmall = 8,
    InternalError = 9,
}

fn status_of(e: &Error) -> OddStatus {
    match e {
        Error::NotPrime(_) => OddStatus::NotPrime,
        Error::EvenCharacteristic => OddStatus::EvenCharacteristic,
        Error::FieldTooLarge { .. } | Error::FullTableCap { .. } => OddStatus::TooLarge,
        Error::DivisionByZero => OddStatus::DivisionByZero,
        Error::SqrtUnsupported { .. } | Error::ResidueMismatch { .. } => {
            OddStatus::ResidueMismatch
        }
        Error::IdentityViolation(_) => OddStatus::InternalError,
        Error::InvalidDegree
        | Error::IndexOutOfRange { .. }
        | Error::MixedFields
        | Error::InvalidArgument(_) => OddStatus::InvalidArgument,
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn oddspectra_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Static human-readable name for a status code.
#[no_mangle]
pub extern "C" fn oddspectra_status_str(status: OddStatus) -> *const c_char {
    let s: &'static str = match status {
        OddStatus::Ok => "ok\0",
        OddStatus::NullPointer => "null pointer\0",
        OddStatus::InvalidArgument => "invalid argument\0",
        OddStatus::NotPrime => "characteristic is not prime\0",
        OddStatus::EvenCharacteristic => "characteristic must be odd\0",
        OddStatus::TooLarge => "size limit exceeded\0",
        OddStatus::ResidueMismatch => "field order has the wrong residue\0",
        OddStatus::DivisionByZero => "division by zero\0",
        OddStatus::BufferTooSmall => "buffer too small\0",
        OddStatus::InternalError => "internal consistency check failed\0",
    };
    s.as_ptr() as *const c_char
}

/// Builds F_{p^n}. On success writes a handle the caller must release
/// with oddspectra_field_free.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn oddspectra_field_new(
    p: u64,
    n: u32,
    out: *mut *mut OddField,
) -> OddStatus {
    if out.is_null() {
        return OddStatus::NullPointer;
    }
    match Field::new(p, n) {
        Ok(f) => {
            *out = Box::into_raw(Box::new(OddField { inner: Arc::new(f) }));
            OddStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Releases a field handle. Null is a no-op.
///
/// # Safety
/// `f` must be null or a pointer from oddspectra_field_new, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn oddspectra_field_free(f: *mut OddField) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Field order q, or 0 on a null handle.
///
/// # Safety
/// `f` must be null or a live field handle.
#[no_mangle]
pub unsafe extern "C" fn oddspectra_field_q(f: *const OddField) -> u64 {
    f.as_ref().map_or(0, |f| f.inner.q())
}

/// Characteristic p, or 0 on a null handle.
///
/// # Safety
/// `f` must be null or a live field handle.
#[no_mangle]
pub unsafe extern "C" fn oddspectra_field_p(f: *const OddField) -> u64 {
    f.as_ref().map_or(0, |f| f.inner.p())
}

/// Extension degree n, or 0 on a null handle.
///
/// # Safety
/// `f` must be null or a live field handle.
#[no_mangle]
pub unsafe extern "C" fn oddspectra_field_n(f: *const OddField) -> u32 {
    f.as_ref().map_or(0, |f| f.inner.n())
}

/// The exponent (q+1)/4; fails with ResidueMismatch unless q = 3 (mod 4).
///
/// # Safety
/// `f` and `out` must be valid pointers; `f` must be a live field handle.
#[no_mangle]
pub unsafe extern "C" fn oddspectra_field_r(f: *const OddField, out: *mut u64) -> OddStatus {
    let (Some(f), false) = (f.as_ref(), out.is_null()) else {
        return OddStatus::NullPointer;
    };
    match f.inner.r() {
        Some(r) => {
            *out = r;
            OddStatus::Ok
        }
        None => OddStatus::ResidueMismatch,
    }
}

/// Quadratic character of the element with canonical index x: -1, 0, or 1.
///
/// # Safety
/// `f` and `out` must be valid pointers; `f` must be a live field handle.
#[no_mangle]
pub unsafe extern "C" fn oddspectra_field_chi(
    f: *const OddField,
    x: u64,
    out: *mut i32,
) -> OddStatus {
    let (Some(f), false) = (f.as_ref(), out.is_null()) else {
        return OddStatus::NullPointer;
    };
    if x >= f.inner.q() {
        return OddStatus::InvalidArgument;
    }
    *out = f.inner.chi_idx(x as u32);
    OddStatus::Ok
}

/// Builds x^r * (1 + u*chi(x)) with u given as a canonical index. Pass
/// r = 0 for the default exponent (q+1)/4.
///
/// # Safety
/// `f` and `out` must be valid pointers; `f` must be a live field handle.
#[no_mangle]
pub unsafe extern "C" fn oddspectra_binomial_new(
    f: *const OddField,
    r: u64,
    u: u64,
    out: *mut *mut OddFn,
) -> OddStatus {
    let (Some(f), false) = (f.as_ref(), out.is_null()) else {
        return OddStatus::NullPointer;
    };
    let u = match f.inner.element(u) {
        Ok(u) => u,
        Err(e) => return status_of(&e),
    };
    let r = if r == 0 { None } else { Some(r) };
    match funcs::build_binomial(&f.inner, r, u) {
        Ok(t) => {
            *out = Box::into_raw(Box::new(OddFn { inner: t }));
            OddStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Builds the power map x^d, d >= 1.
///
/// # Safety
/// `f` and `out` must be valid pointers; `f` must be a live field handle.
#[no_mangle]
pub unsafe extern "C" fn oddspectra_power_new(
    f: *const OddField,
    d: u64,
    out: *mut *mut OddFn,
) -> OddStatus {
    let (Some(f), false) = (f.as_ref(), out.is_null()) else {
        return OddStatus::NullPointer;
    };
    match funcs::build_power(&f.inner, d) {
        Ok(t) => {
            *out = Box::into_raw(Box::new(OddFn { inner: t }));
            OddStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Releases a function handle. Null is a no-op.
///
/// # Safety
/// `g` must be null or a pointer from a *_new call, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn oddspectra_fn_free(g: *mut OddFn) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Evaluates the function at the element with canonical index x.
///
/// # Safety
/// `g` and `out` must be valid pointers; `g` must be a live function handle.
#[no_mangle]
pub unsafe extern "C" fn oddspectra_fn_eval(
    g: *const OddFn,
    x: u64,
    out: *mut u64,
) -> OddStatus {
    let (Some(g), false) = (g.as_ref(), out.is_null()) else {
        return OddStatus::NullPointer;
    };
    if x >= g.inner.field().q() {
        return OddStatus::InvalidArgument;
    }
    *out = g.inner.eval_idx(x as u32) as u64;
    OddStatus::Ok
}

/// Whether the function permutes the field.
///
/// # Safety
/// `g` and `out` must be valid pointers; `g` must be a live function handle.
#[no_mangle]
pub unsafe extern "C" fn oddspectra_fn_is_permutation(
    g: *const OddFn,
    out: *mut bool,
) -> OddStatus {
    let (Some(g), false) = (g.as_ref(), out.is_null()) else {
        return OddStatus::NullPointer;
    };
    *out = g.inner.is_permutation();
    OddStatus::Ok
}

/// Differential uniformity: the largest difference count over a != 0.
///
/// # Safety
/// `g` and `out` must be valid pointers; `g` must be a live function handle.
#[no_mangle]
pub unsafe extern "C" fn oddspectra_diff_uniformity(
    g: *const OddFn,
    out: *mut u64,
) -> OddStatus {
    let (Some(g), false) = (g.as_ref(), out.is_null()) else {
        return OddStatus::NullPointer;
    };
    *out = diff::differential_uniformity(&g.inner);
    OddStatus::Ok
}

fn write_spectrum(
    counts: &std::collections::BTreeMap<u64, u64>,
    values_out: *mut u64,
    mults_out: *mut u64,
    cap: usize,
    len_out: *mut usize,
) -> OddStatus {
    unsafe {
        *len_out = counts.len();
        if counts.len() > cap {
            return OddStatus::BufferTooSmall;
        }
        if counts.len() > 0 && (values_out.is_null() || mults_out.is_null()) {
            return OddStatus::NullPointer;
        }
        for (i, (v, m)) in counts.iter().enumerate() {
            *values_out.add(i) = *v;
            *mults_out.add(i) = *m;
        }
    }
    OddStatus::Ok
}

/// Row-1 difference spectrum over all b, as sorted (value, multiplicity)
/// pairs split across two arrays of capacity `cap`. The entry count goes
/// to len_out; BufferTooSmall means run again with at least that much.
///
/// # Safety
/// `g` and `len_out` must be valid; `values_out` and `mults_out` must
/// hold `cap` writable entries each.
#[no_mangle]
pub unsafe extern "C" fn oddspectra_diff_spectrum(
    g: *const OddFn,
    values_out: *mut u64,
    mults_out: *mut u64,
    cap: usize,
    len_out: *mut usize,
) -> OddStatus {
    let (Some(g), false) = (g.as_ref(), len_out.is_null()) else {
        return OddStatus::NullPointer;
    };
    match diff::diff_spectrum(&g.inner) {
        Ok(s) => write_spectrum(&s.counts, values_out, mults_out, cap, len_out),
        Err(e) => status_of(&e),
    }
}

/// Boomerang uniformity over a != 0, b != 0. The full table walk refuses
/// fields larger than `table_cap` with TooLarge.
///
/// # Safety
/// `g` and `out` must be valid pointers; `g` must be a live function handle.
#[no_mangle]
pub unsafe extern "C" fn oddspectra_boom_uniformity(
    g: *const OddFn,
    table_cap: u64,
    out: *mut u64,
) -> OddStatus {
    let (Some(g), false) = (g.as_ref(), out.is_null()) else {
        return OddStatus::NullPointer;
    };
    match boom::boomerang_uniformity(&g.inner, table_cap) {
        Ok(v) => {
            *out = v;
            OddStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Row-1 pair spectrum over b != 0, same buffer contract as the
/// difference spectrum.
///
/// # Safety
/// `g` and `len_out` must be valid; `values_out` and `mults_out` must
/// hold `cap` writable entries each.
#[no_mangle]
pub unsafe extern "C" fn oddspectra_boom_spectrum(
    g: *const OddFn,
    values_out: *mut u64,
    mults_out: *mut u64,
    cap: usize,
    len_out: *mut usize,
) -> OddStatus {
    let (Some(g), false) = (g.as_ref(), len_out.is_null()) else {
        return OddStatus::NullPointer;
    };
    match boom::boom_spectrum(&g.inner) {
        Ok(s) => write_spectrum(&s.counts, values_out, mults_out, cap, len_out),
        Err(e) => status_of(&e),
    }
}

/// The restricted cubic character sum steering the pair spectrum;
/// defined for q = 7 (mod 8) only.
///
/// # Safety
/// `f` and `out` must be valid pointers; `f` must be a live field handle.
#[no_mangle]
pub unsafe extern "C" fn oddspectra_gamma(f: *const OddField, out: *mut i64) -> OddStatus {
    let (Some(f), false) = (f.as_ref(), out.is_null()) else {
        return OddStatus::NullPointer;
    };
    match charsum::gamma(&f.inner) {
        Ok(g) => {
            *out = g;
            OddStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

//! C ABI over the library: opaque handles for fields and binomials, integer
//! status codes, and JSON strings for structured results.
//!
//! Conventions:
//! - Every fallible function returns an [`ApnForgeStatus`]; out-parameters
//!   are written only on `Ok`.
//! - Strings returned through out-parameters are owned by the caller and
//!   must be released with [`apnforge_string_free`].
//! - On failure, [`apnforge_last_error`] returns a message that stays valid
//!   until the next failing call on the same thread.
//! - Panics never cross the boundary; they surface as `PanicCaught`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use apnforge::apn::{classify, normalize_binomial, Budget, QuadBinomial};
use apnforge::gf2m::{parse_modulus_hex, FieldCtx};
use apnforge::verify::{count_points_off_diagonal, differential_uniformity, PolySpec, QuadFunction};
use apnforge::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ApnForgeStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The input was rejected (parse failure, constraint violation, …).
    InvalidInput = 3,
    /// A size cap refused the computation (field too large, exponent cap).
    CapExceeded = 4,
    /// A search budget ran out before the computation finished.
    BudgetExhausted = 5,
    /// A panic was caught at the boundary.
    PanicCaught = 6,
    /// An internal invariant failed.
    InternalError = 7,
}

/// Opaque handle to a binary field GF(2^m).
pub struct ApnForgeField(FieldCtx);

/// Opaque handle to a quadratic binomial in normal form.
pub struct ApnForgeBinomial(QuadBinomial);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn remember_error(message: &str) {
    let clean = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(clean).unwrap_or_default();
    });
}

fn status_of(e: &Error) -> ApnForgeStatus {
    match e {
        Error::FieldTooLarge(..) | Error::ExponentCap(..) => ApnForgeStatus::CapExceeded,
        Error::BudgetExhausted(..) => ApnForgeStatus::BudgetExhausted,
        Error::Internal(..) => ApnForgeStatus::InternalError,
        _ => ApnForgeStatus::InvalidInput,
    }
}

fn fail(e: &Error) -> ApnForgeStatus {
    remember_error(&e.to_string());
    status_of(e)
}

/// Run `body` with panics converted to `PanicCaught`.
fn guarded(body: impl FnOnce() -> ApnForgeStatus) -> ApnForgeStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            remember_error("panic caught at the C boundary");
            ApnForgeStatus::PanicCaught
        }
    }
}

/// # Safety
/// `text` must be a valid NUL-terminated C string or null.
unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, ApnForgeStatus> {
    if text.is_null() {
        remember_error("null string argument");
        return Err(ApnForgeStatus::NullArgument);
    }
    CStr::from_ptr(text).to_str().map_err(|_| {
        remember_error("string argument is not valid UTF-8");
        ApnForgeStatus::InvalidUtf8
    })
}

fn give_string(text: String, out: &mut *mut c_char) -> ApnForgeStatus {
    match CString::new(text) {
        Ok(s) => {
            *out = s.into_raw();
            ApnForgeStatus::Ok
        }
        Err(_) => {
            remember_error("result contained an interior NUL byte");
            ApnForgeStatus::InternalError
        }
    }
}

macro_rules! require {
    ($ptr:expr) => {
        match unsafe { $ptr.as_ref() } {
            Some(r) => r,
            None => {
                remember_error("null handle argument");
                return ApnForgeStatus::NullArgument;
            }
        }
    };
}

macro_rules! require_out {
    ($ptr:expr) => {
        match unsafe { $ptr.as_mut() } {
            Some(r) => r,
            None => {
                remember_error("null out-parameter");
                return ApnForgeStatus::NullArgument;
            }
        }
    };
}

/// Build GF(2^m) with the built-in modulus for m.
///
/// # Safety
/// `out` must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn apnforge_field_new(
    m: u32,
    out: *mut *mut ApnForgeField,
) -> ApnForgeStatus {
    guarded(|| {
        let out = require_out!(out);
        match FieldCtx::new(m) {
            Ok(ctx) => {
                *out = Box::into_raw(Box::new(ApnForgeField(ctx)));
                ApnForgeStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Build GF(2^m) with an explicit irreducible modulus, given as hex bits
/// ("0x409" is x^10 + x^3 + 1).
///
/// # Safety
/// `modulus_hex` must be a valid C string; `out` as in `apnforge_field_new`.
#[no_mangle]
pub unsafe extern "C" fn apnforge_field_new_with_modulus(
    m: u32,
    modulus_hex: *const c_char,
    out: *mut *mut ApnForgeField,
) -> ApnForgeStatus {
    guarded(|| {
        let out = require_out!(out);
        let hex = match unsafe { read_str(modulus_hex) } {
            Ok(s) => s,
            Err(status) => return status,
        };
        let bits = match parse_modulus_hex(hex) {
            Ok(b) => b,
            Err(e) => return fail(&e),
        };
        match FieldCtx::with_modulus(m, &bits) {
            Ok(ctx) => {
                *out = Box::into_raw(Box::new(ApnForgeField(ctx)));
                ApnForgeStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Degree m of the field, or 0 for a null handle.
///
/// # Safety
/// `field` must be a live handle from this library, or null.
#[no_mangle]
pub unsafe extern "C" fn apnforge_field_degree(field: *const ApnForgeField) -> u32 {
    match unsafe { field.as_ref() } {
        Some(f) => f.0.degree(),
        None => 0,
    }
}

/// Release a field handle.  Null is ignored.
///
/// # Safety
/// `field` must be a handle from this library, not yet freed, or null.
#[no_mangle]
pub unsafe extern "C" fn apnforge_field_free(field: *mut ApnForgeField) {
    if !field.is_null() {
        drop(unsafe { Box::from_raw(field) });
    }
}

/// Build the binomial x^(2^i+1) + delta*x^(2^s(2^t+1)) over the given
/// field.  `delta` accepts hex bits, a decimal bit pattern, or a generator
/// power like "a^374".
///
/// # Safety
/// `field` must be a live handle; `delta` a valid C string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn apnforge_binomial_new(
    field: *const ApnForgeField,
    i: u32,
    s: u32,
    t: u32,
    delta: *const c_char,
    out: *mut *mut ApnForgeBinomial,
) -> ApnForgeStatus {
    guarded(|| {
        let field = require!(field);
        let out = require_out!(out);
        let delta_text = match unsafe { read_str(delta) } {
            Ok(s) => s,
            Err(status) => return status,
        };
        let delta = match field.0.parse_elem(delta_text) {
            Ok(d) => d,
            Err(e) => return fail(&e),
        };
        match QuadBinomial::new(&field.0, i, s, t, delta) {
            Ok(f) => {
                *out = Box::into_raw(Box::new(ApnForgeBinomial(f)));
                ApnForgeStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Bring a raw binomial c1*x^e1 + c2*x^e2 to normal form.  Both exponents
/// must be sums of two powers of two (quadratic terms).
///
/// # Safety
/// As for `apnforge_binomial_new`; `c1` and `c2` must be valid C strings.
#[no_mangle]
pub unsafe extern "C" fn apnforge_binomial_normalize(
    field: *const ApnForgeField,
    c1: *const c_char,
    e1: u64,
    c2: *const c_char,
    e2: u64,
    out: *mut *mut ApnForgeBinomial,
) -> ApnForgeStatus {
    guarded(|| {
        let field = require!(field);
        let out = require_out!(out);
        let c1_text = match unsafe { read_str(c1) } {
            Ok(s) => s,
            Err(status) => return status,
        };
        let c2_text = match unsafe { read_str(c2) } {
            Ok(s) => s,
            Err(status) => return status,
        };
        let parsed = field
            .0
            .parse_elem(c1_text)
            .and_then(|a| field.0.parse_elem(c2_text).map(|b| (a, b)));
        let (c1, c2) = match parsed {
            Ok(pair) => pair,
            Err(e) => return fail(&e),
        };
        match normalize_binomial(&c1, e1, &c2, e2) {
            Ok((f, _trace)) => {
                *out = Box::into_raw(Box::new(ApnForgeBinomial(f)));
                ApnForgeStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Release a binomial handle.  Null is ignored.
///
/// # Safety
/// `binomial` must be a handle from this library, not yet freed, or null.
#[no_mangle]
pub unsafe extern "C" fn apnforge_binomial_free(binomial: *mut ApnForgeBinomial) {
    if !binomial.is_null() {
        drop(unsafe { Box::from_raw(binomial) });
    }
}

/// Classify the binomial and return the full report as a JSON string.
/// Pass 0 for either budget argument to use the default.
///
/// # Safety
/// `binomial` must be a live handle; `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn apnforge_classify_json(
    binomial: *const ApnForgeBinomial,
    max_beta_trials: u64,
    max_spec_degree: u64,
    out_json: *mut *mut c_char,
) -> ApnForgeStatus {
    guarded(|| {
        let binomial = require!(binomial);
        let out = require_out!(out_json);
        let defaults = Budget::default();
        let budget = Budget {
            max_beta_trials: if max_beta_trials == 0 {
                defaults.max_beta_trials
            } else {
                max_beta_trials
            },
            max_specialization_degree: if max_spec_degree == 0 {
                defaults.max_specialization_degree
            } else {
                max_spec_degree
            },
        };
        let report = match classify(&binomial.0, &budget) {
            Ok(r) => r,
            Err(e) => return fail(&e),
        };
        match serde_json::to_string(&report) {
            Ok(text) => give_string(text, out),
            Err(e) => {
                remember_error(&format!("serialization: {e}"));
                ApnForgeStatus::InternalError
            }
        }
    })
}

/// Differential uniformity of the binomial over its coefficient field.
///
/// # Safety
/// `binomial` must be a live handle; `out_du` writable.
#[no_mangle]
pub unsafe extern "C" fn apnforge_differential_uniformity(
    binomial: *const ApnForgeBinomial,
    out_du: *mut u64,
) -> ApnForgeStatus {
    guarded(|| {
        let binomial = require!(binomial);
        let out = require_out!(out_du);
        let f = &binomial.0;
        let (e1, e2) = f.exponents();
        let spec = match PolySpec::sum_of_terms(
            f.ctx(),
            vec![(f.ctx().one(), e1), (f.delta().clone(), e2)],
        ) {
            Ok(s) => s,
            Err(e) => return fail(&e),
        };
        match differential_uniformity(&spec, f.ctx()) {
            Ok(result) => {
                *out = result.du;
                ApnForgeStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Count off-diagonal zeros of the difference polynomial over the degree-n
/// extension of the coefficient field (n = 1 counts over the field itself).
///
/// # Safety
/// `binomial` must be a live handle; `out_count` writable.
#[no_mangle]
pub unsafe extern "C" fn apnforge_count_points(
    binomial: *const ApnForgeBinomial,
    extension_degree: u32,
    out_count: *mut u64,
) -> ApnForgeStatus {
    guarded(|| {
        let binomial = require!(binomial);
        let out = require_out!(out_count);
        if extension_degree == 0 {
            remember_error("extension degree must be positive");
            return ApnForgeStatus::InvalidInput;
        }
        let f = &binomial.0;
        let ambient = if extension_degree == 1 {
            f.ctx().clone()
        } else {
            match FieldCtx::new(f.ctx().degree() * extension_degree) {
                Ok(ctx) => ctx,
                Err(e) => return fail(&e),
            }
        };
        match count_points_off_diagonal(&QuadFunction::from(f), &ambient) {
            Ok(result) => {
                *out = result.count;
                ApnForgeStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Release a string returned by this library.  Null is ignored.
///
/// # Safety
/// `text` must have been returned by this library, not yet freed, or null.
#[no_mangle]
pub unsafe extern "C" fn apnforge_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(unsafe { CString::from_raw(text) });
    }
}

/// Message for the most recent failure on this thread.  The pointer stays
/// valid until the next failing call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn apnforge_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

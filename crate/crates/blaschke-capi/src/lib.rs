//! C ABI over the blaschke library.
//!
//! Conventions:
//! - Objects are opaque handles created by `*_new`/`*_parse` constructors and
//!   released by the matching `*_free`; every other function borrows.
//! - Every fallible call returns a [`BlaschkeStatus`]; results travel through
//!   out-pointers that are written only on [`BlaschkeStatus::Ok`].
//! - On failure a thread-local message is set; fetch it with
//!   [`blaschke_last_error`].
//! - Panics never unwind across the boundary: they surface as
//!   [`BlaschkeStatus::Panic`].
//!
//! The C header is generated into `include/blaschke.h` by the build script.

use std::cell::RefCell;
use std::ffi::CStr;
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use blaschke::exceptional::IntervalSet;
use blaschke::product::{eval_b, eval_logderiv};
use blaschke::verify::{angle_grid, radius_ladder, verify_circular};
use blaschke::weights::{Weight, WeightFunction};
use blaschke::zeros::{AngleRule, ZeroSequence};
use blaschke::Error;
use num_complex::Complex64;

/// Status code returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlaschkeStatus {
    /// Success; out-pointers hold the result.
    Ok = 0,
    /// An argument is outside its documented domain.
    InvalidArgument = 1,
    /// The computation itself is infeasible (degenerate fit, saturated
    /// exceptional set, diverging measure).
    Math = 2,
    /// File system failure.
    Io = 3,
    /// A required pointer was NULL.
    NullPointer = 4,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 5,
    /// Internal panic, caught at the boundary.
    Panic = 6,
}

/// A zero sequence handle.
pub struct BlaschkeSequence(ZeroSequence);

/// A weight function handle.
pub struct BlaschkeWeight(WeightFunction);

/// A circular exceptional set handle.
pub struct BlaschkeIntervalSet(IntervalSet);

thread_local! {
    static LAST_ERROR: RefCell<Vec<u8>> = const { RefCell::new(Vec::new()) };
}

fn set_last_error(msg: &str) {
    LAST_ERROR.with(|slot| {
        let mut buf = slot.borrow_mut();
        buf.clear();
        buf.extend_from_slice(msg.as_bytes());
        buf.push(0);
    });
}

fn status_for(e: &Error) -> BlaschkeStatus {
    match e {
        Error::Io(_) => BlaschkeStatus::Io,
        Error::InsufficientSamples { .. }
        | Error::NonPositiveSample
        | Error::DegenerateFit
        | Error::ExceptionalSaturated(_)
        | Error::DegenerateInterval => BlaschkeStatus::Math,
        _ => BlaschkeStatus::InvalidArgument,
    }
}

fn fail(e: &Error) -> BlaschkeStatus {
    set_last_error(&e.to_string());
    status_for(e)
}

fn null_arg(name: &str) -> BlaschkeStatus {
    set_last_error(&format!("{name} must not be NULL"));
    BlaschkeStatus::NullPointer
}

/// Run `f` with panics converted to [`BlaschkeStatus::Panic`].
fn guarded(f: impl FnOnce() -> BlaschkeStatus) -> BlaschkeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_last_error("internal panic caught at the C boundary");
            BlaschkeStatus::Panic
        }
    }
}

/// Copy the current thread's last error message into `buf` as a
/// NUL-terminated string. Returns the full length of the message including
/// the NUL; if it exceeds `cap` the copy is truncated (still terminated).
/// With no recorded error the result is an empty string of length 1.
///
/// # Safety
/// `buf` must point to `cap` writable bytes, or be NULL (then only the
/// required length is returned).
#[no_mangle]
pub unsafe extern "C" fn blaschke_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let stored = slot.borrow();
        let msg: &[u8] = if stored.is_empty() { &[0] } else { &stored };
        if !buf.is_null() && cap > 0 {
            let n = msg.len().min(cap);
            std::ptr::copy_nonoverlapping(msg.as_ptr(), buf as *mut u8, n);
            *buf.add(n - 1) = 0;
        }
        msg.len()
    })
}

/// Static name of a status code ("ok", "invalid-argument", ...).
#[no_mangle]
pub extern "C" fn blaschke_status_name(status: BlaschkeStatus) -> *const c_char {
    let name: &'static [u8] = match status {
        BlaschkeStatus::Ok => b"ok\0",
        BlaschkeStatus::InvalidArgument => b"invalid-argument\0",
        BlaschkeStatus::Math => b"math\0",
        BlaschkeStatus::Io => b"io\0",
        BlaschkeStatus::NullPointer => b"null-pointer\0",
        BlaschkeStatus::InvalidUtf8 => b"invalid-utf8\0",
        BlaschkeStatus::Panic => b"panic\0",
    };
    name.as_ptr() as *const c_char
}

// ---------------------------------------------------------------------------
// Sequences
// ---------------------------------------------------------------------------

/// Build the geometric family `1 - r_n = c^n`, `n = 1..=count`, with the
/// deterministic golden-rotation angle rule.
///
/// # Safety
/// `out` must be a valid pointer; on `Ok` it receives an owned handle that
/// must be released with [`blaschke_sequence_free`].
#[no_mangle]
pub unsafe extern "C" fn blaschke_sequence_geometric(
    c: f64,
    count: usize,
    out: *mut *mut BlaschkeSequence,
) -> BlaschkeStatus {
    if out.is_null() {
        return null_arg("out");
    }
    guarded(|| match ZeroSequence::gen_geometric(c, count, AngleRule::GoldenRotation) {
        Ok(seq) => {
            *out = Box::into_raw(Box::new(BlaschkeSequence(seq)));
            BlaschkeStatus::Ok
        }
        Err(e) => fail(&e),
    })
}

/// Build the power-law family `1 - r_n = (n+1)^{-p}`, `n = 1..=count`, with
/// the deterministic golden-rotation angle rule.
///
/// # Safety
/// `out` must be a valid pointer; on `Ok` it receives an owned handle that
/// must be released with [`blaschke_sequence_free`].
#[no_mangle]
pub unsafe extern "C" fn blaschke_sequence_power_law(
    p: f64,
    count: usize,
    out: *mut *mut BlaschkeSequence,
) -> BlaschkeStatus {
    if out.is_null() {
        return null_arg("out");
    }
    guarded(|| match ZeroSequence::gen_power_law(p, count, AngleRule::GoldenRotation) {
        Ok(seq) => {
            *out = Box::into_raw(Box::new(BlaschkeSequence(seq)));
            BlaschkeStatus::Ok
        }
        Err(e) => fail(&e),
    })
}

/// Parse a sequence from the zero-file text format: one `r theta` pair per
/// line, `#` comments allowed.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be a valid pointer and
/// on `Ok` receives an owned handle (release with [`blaschke_sequence_free`]).
#[no_mangle]
pub unsafe extern "C" fn blaschke_sequence_parse(
    text: *const c_char,
    out: *mut *mut BlaschkeSequence,
) -> BlaschkeStatus {
    if text.is_null() {
        return null_arg("text");
    }
    if out.is_null() {
        return null_arg("out");
    }
    let text = match CStr::from_ptr(text).to_str() {
        Ok(s) => s,
        Err(e) => {
            set_last_error(&format!("text is not valid UTF-8: {e}"));
            return BlaschkeStatus::InvalidUtf8;
        }
    };
    guarded(|| match ZeroSequence::parse_text(text) {
        Ok(seq) => {
            *out = Box::into_raw(Box::new(BlaschkeSequence(seq)));
            BlaschkeStatus::Ok
        }
        Err(e) => fail(&e),
    })
}

/// Number of zeros in the sequence; 0 for NULL.
///
/// # Safety
/// `seq` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn blaschke_sequence_len(seq: *const BlaschkeSequence) -> usize {
    if seq.is_null() {
        0
    } else {
        (*seq).0.len()
    }
}

/// Fetch zero `index` (0-based, original order) as `(r, theta)`.
///
/// # Safety
/// `seq` must be a live handle; `out_r` and `out_theta` must be valid
/// pointers.
#[no_mangle]
pub unsafe extern "C" fn blaschke_sequence_zero(
    seq: *const BlaschkeSequence,
    index: usize,
    out_r: *mut f64,
    out_theta: *mut f64,
) -> BlaschkeStatus {
    if seq.is_null() {
        return null_arg("seq");
    }
    if out_r.is_null() || out_theta.is_null() {
        return null_arg("out_r/out_theta");
    }
    let zeros = (*seq).0.zeros();
    match zeros.get(index) {
        Some(&(r, theta)) => {
            *out_r = r;
            *out_theta = theta;
            BlaschkeStatus::Ok
        }
        None => {
            set_last_error(&format!(
                "index {index} out of range for {} zeros",
                zeros.len()
            ));
            BlaschkeStatus::InvalidArgument
        }
    }
}

/// Release a sequence handle. NULL is a no-op.
///
/// # Safety
/// `seq` must come from a constructor of this library and not be used again.
#[no_mangle]
pub unsafe extern "C" fn blaschke_sequence_free(seq: *mut BlaschkeSequence) {
    if !seq.is_null() {
        drop(Box::from_raw(seq));
    }
}

// ---------------------------------------------------------------------------
// Weights
// ---------------------------------------------------------------------------

/// Build the weight `h(t) = t^alpha * prod_k (log_k 1/t)^{e_k}` from `alpha`
/// and `len` iterated-log exponents (`log_exponents` may be NULL when
/// `len == 0`).
///
/// # Safety
/// `log_exponents` must point to `len` doubles (or be NULL with `len == 0`);
/// `out` must be a valid pointer and on `Ok` receives an owned handle
/// (release with [`blaschke_weight_free`]).
#[no_mangle]
pub unsafe extern "C" fn blaschke_weight_new(
    alpha: f64,
    log_exponents: *const f64,
    len: usize,
    out: *mut *mut BlaschkeWeight,
) -> BlaschkeStatus {
    if out.is_null() {
        return null_arg("out");
    }
    if log_exponents.is_null() && len > 0 {
        return null_arg("log_exponents");
    }
    let exponents = if len == 0 {
        Vec::new()
    } else {
        std::slice::from_raw_parts(log_exponents, len).to_vec()
    };
    guarded(|| match WeightFunction::new(alpha, exponents) {
        Ok(h) => {
            *out = Box::into_raw(Box::new(BlaschkeWeight(h)));
            BlaschkeStatus::Ok
        }
        Err(e) => fail(&e),
    })
}

/// Evaluate the weight at `t` (within its domain `(0, cutoff)`).
///
/// # Safety
/// `weight` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn blaschke_weight_eval(
    weight: *const BlaschkeWeight,
    t: f64,
    out: *mut f64,
) -> BlaschkeStatus {
    if weight.is_null() {
        return null_arg("weight");
    }
    if out.is_null() {
        return null_arg("out");
    }
    guarded(|| match (*weight).0.eval(t) {
        Ok(v) => {
            *out = v;
            BlaschkeStatus::Ok
        }
        Err(e) => fail(&e),
    })
}

/// Release a weight handle. NULL is a no-op.
///
/// # Safety
/// `weight` must come from [`blaschke_weight_new`] and not be used again.
#[no_mangle]
pub unsafe extern "C" fn blaschke_weight_free(weight: *mut BlaschkeWeight) {
    if !weight.is_null() {
        drop(Box::from_raw(weight));
    }
}

// ---------------------------------------------------------------------------
// Product evaluation
// ---------------------------------------------------------------------------

/// Evaluate the Blaschke product at `z = re + i im`, `|z| < 1`.
///
/// # Safety
/// `seq` must be a live handle; `out_re` and `out_im` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn blaschke_eval_product(
    seq: *const BlaschkeSequence,
    re: f64,
    im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> BlaschkeStatus {
    if seq.is_null() {
        return null_arg("seq");
    }
    if out_re.is_null() || out_im.is_null() {
        return null_arg("out_re/out_im");
    }
    guarded(|| match eval_b(&(*seq).0, Complex64::new(re, im)) {
        Ok(eval) => {
            *out_re = eval.value.re;
            *out_im = eval.value.im;
            BlaschkeStatus::Ok
        }
        Err(e) => fail(&e),
    })
}

/// Evaluate the logarithmic derivative `B'(z)/B(z)` at `z = re + i im`.
///
/// # Safety
/// `seq` must be a live handle; `out_re` and `out_im` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn blaschke_eval_logderiv(
    seq: *const BlaschkeSequence,
    re: f64,
    im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> BlaschkeStatus {
    if seq.is_null() {
        return null_arg("seq");
    }
    if out_re.is_null() || out_im.is_null() {
        return null_arg("out_re/out_im");
    }
    guarded(|| match eval_logderiv(&(*seq).0, Complex64::new(re, im)) {
        Ok(eval) => {
            *out_re = eval.value.re;
            *out_im = eval.value.im;
            BlaschkeStatus::Ok
        }
        Err(e) => fail(&e),
    })
}

// ---------------------------------------------------------------------------
// Exceptional sets
// ---------------------------------------------------------------------------

/// Build the circular exceptional set: one radial interval
/// `(r_n - w_n, r_n + w_n)` with `w_n = (1 - r_n)^beta h(1 - r_n)` per zero,
/// overlaps merged.
///
/// # Safety
/// `seq` and `weight` must be live handles; `out` must be a valid pointer
/// and on `Ok` receives an owned handle (release with
/// [`blaschke_exset_free`]).
#[no_mangle]
pub unsafe extern "C" fn blaschke_exset_build(
    seq: *const BlaschkeSequence,
    weight: *const BlaschkeWeight,
    beta: f64,
    out: *mut *mut BlaschkeIntervalSet,
) -> BlaschkeStatus {
    if seq.is_null() {
        return null_arg("seq");
    }
    if weight.is_null() {
        return null_arg("weight");
    }
    if out.is_null() {
        return null_arg("out");
    }
    guarded(
        || match IntervalSet::build_circular(&(*seq).0, &(*weight).0, beta) {
            Ok(set) => {
                *out = Box::into_raw(Box::new(BlaschkeIntervalSet(set)));
                BlaschkeStatus::Ok
            }
            Err(e) => fail(&e),
        },
    )
}

/// Number of merged intervals; 0 for NULL.
///
/// # Safety
/// `set` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn blaschke_exset_len(set: *const BlaschkeIntervalSet) -> usize {
    if set.is_null() {
        0
    } else {
        (*set).0.len()
    }
}

/// Total Lebesgue measure of the merged intervals (clipped to `(0, 1)`).
///
/// # Safety
/// `set` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn blaschke_exset_measure(
    set: *const BlaschkeIntervalSet,
    out: *mut f64,
) -> BlaschkeStatus {
    if set.is_null() {
        return null_arg("set");
    }
    if out.is_null() {
        return null_arg("out");
    }
    *out = (*set).0.total_measure();
    BlaschkeStatus::Ok
}

/// Whether radius `r` lies inside the (open) exceptional set.
///
/// # Safety
/// `set` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn blaschke_exset_contains(
    set: *const BlaschkeIntervalSet,
    r: f64,
    out: *mut bool,
) -> BlaschkeStatus {
    if set.is_null() {
        return null_arg("set");
    }
    if out.is_null() {
        return null_arg("out");
    }
    *out = (*set).0.contains(r);
    BlaschkeStatus::Ok
}

/// Release an exceptional-set handle. NULL is a no-op.
///
/// # Safety
/// `set` must come from [`blaschke_exset_build`] and not be used again.
#[no_mangle]
pub unsafe extern "C" fn blaschke_exset_free(set: *mut BlaschkeIntervalSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

/// Run the circular growth verification on the dyadic radius ladder
/// `1 - 2^{-k}`, `k_min..=k_max`: fit the growth exponent of
/// `max_theta |B'/B|` off the exceptional set and compare it against the
/// predicted `beta + 2 alpha` plus `epsilon`.
///
/// `out_pass` receives the overall verdict; `out_fitted` and
/// `out_predicted` receive the fitted slope and the predicted exponent.
///
/// # Safety
/// `seq` and `weight` must be live handles; the three out-pointers must be
/// valid.
#[no_mangle]
pub unsafe extern "C" fn blaschke_verify_circular(
    seq: *const BlaschkeSequence,
    weight: *const BlaschkeWeight,
    beta: f64,
    k_min: u32,
    k_max: u32,
    angle_fill: usize,
    epsilon: f64,
    out_fitted: *mut f64,
    out_predicted: *mut f64,
    out_pass: *mut bool,
) -> BlaschkeStatus {
    if seq.is_null() {
        return null_arg("seq");
    }
    if weight.is_null() {
        return null_arg("weight");
    }
    if out_fitted.is_null() || out_predicted.is_null() || out_pass.is_null() {
        return null_arg("out_fitted/out_predicted/out_pass");
    }
    guarded(|| {
        let run = || -> Result<_, Error> {
            let radii = radius_ladder(k_min, k_max)?;
            let angles = angle_grid(&(*seq).0, angle_fill);
            verify_circular(&(*seq).0, &(*weight).0, beta, &radii, &angles, epsilon)
        };
        match run() {
            Ok(report) => {
                *out_fitted = report.fitted_slope;
                *out_predicted = report.predicted_exponent;
                *out_pass = report.pass();
                BlaschkeStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

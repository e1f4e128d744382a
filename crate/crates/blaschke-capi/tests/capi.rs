//! Exercises the C ABI exactly as a C caller would: handles in, status
//! codes out, results through out-pointers, messages via the thread-local
//! error slot.

use std::ffi::CStr;
use std::os::raw::c_char;
use std::ptr;

use blaschke_capi::*;

fn last_error() -> String {
    let mut buf = vec![0u8; 512];
    let needed = unsafe { blaschke_last_error(buf.as_mut_ptr() as *mut c_char, buf.len()) };
    assert!(needed >= 1, "length always counts the terminator");
    CStr::from_bytes_until_nul(&buf)
        .expect("message is NUL-terminated")
        .to_str()
        .expect("message is UTF-8")
        .to_owned()
}

fn geometric(c: f64, count: usize) -> *mut BlaschkeSequence {
    let mut seq = ptr::null_mut();
    let status = unsafe { blaschke_sequence_geometric(c, count, &mut seq) };
    assert_eq!(status, BlaschkeStatus::Ok, "{}", last_error());
    assert!(!seq.is_null());
    seq
}

fn weight(alpha: f64) -> *mut BlaschkeWeight {
    let mut w = ptr::null_mut();
    let status = unsafe { blaschke_weight_new(alpha, ptr::null(), 0, &mut w) };
    assert_eq!(status, BlaschkeStatus::Ok, "{}", last_error());
    assert!(!w.is_null());
    w
}

#[test]
fn geometric_sequence_roundtrip() {
    let seq = geometric(0.5, 3);
    assert_eq!(unsafe { blaschke_sequence_len(seq) }, 3);
    let (mut r, mut theta) = (0.0, 0.0);
    let status = unsafe { blaschke_sequence_zero(seq, 0, &mut r, &mut theta) };
    assert_eq!(status, BlaschkeStatus::Ok);
    assert_eq!(r, 0.5);
    let status = unsafe { blaschke_sequence_zero(seq, 2, &mut r, &mut theta) };
    assert_eq!(status, BlaschkeStatus::Ok);
    assert_eq!(r, 0.875);
    let status = unsafe { blaschke_sequence_zero(seq, 3, &mut r, &mut theta) };
    assert_eq!(status, BlaschkeStatus::InvalidArgument);
    assert!(last_error().contains("out of range"), "{}", last_error());
    unsafe { blaschke_sequence_free(seq) };
}

#[test]
fn invalid_arguments_set_the_error_message() {
    let mut seq = ptr::null_mut();
    let status = unsafe { blaschke_sequence_geometric(1.5, 3, &mut seq) };
    assert_eq!(status, BlaschkeStatus::InvalidArgument);
    assert!(seq.is_null(), "out must stay untouched on failure");
    assert!(last_error().contains("ratio"), "{}", last_error());

    let mut w = ptr::null_mut();
    let status = unsafe { blaschke_weight_new(0.0, ptr::null(), 0, &mut w) };
    assert_eq!(status, BlaschkeStatus::InvalidArgument);
    assert!(last_error().contains("alpha"), "{}", last_error());
}

#[test]
fn null_pointers_are_rejected_not_dereferenced() {
    let status = unsafe { blaschke_sequence_geometric(0.5, 3, ptr::null_mut()) };
    assert_eq!(status, BlaschkeStatus::NullPointer);
    let (mut re, mut im) = (0.0, 0.0);
    let status = unsafe { blaschke_eval_product(ptr::null(), 0.0, 0.0, &mut re, &mut im) };
    assert_eq!(status, BlaschkeStatus::NullPointer);
    assert!(last_error().contains("NULL"), "{}", last_error());
    assert_eq!(unsafe { blaschke_sequence_len(ptr::null()) }, 0);
    assert_eq!(unsafe { blaschke_exset_len(ptr::null()) }, 0);
    unsafe { blaschke_sequence_free(ptr::null_mut()) };
    unsafe { blaschke_weight_free(ptr::null_mut()) };
    unsafe { blaschke_exset_free(ptr::null_mut()) };
}

#[test]
fn parse_and_evaluate_a_single_zero() {
    let text = b"# one zero\n5.0e-1 0.0e0\n\0";
    let mut seq = ptr::null_mut();
    let status =
        unsafe { blaschke_sequence_parse(text.as_ptr() as *const c_char, &mut seq) };
    assert_eq!(status, BlaschkeStatus::Ok, "{}", last_error());
    assert_eq!(unsafe { blaschke_sequence_len(seq) }, 1);

    // B(0) = |z_1| for a single normalized factor.
    let (mut re, mut im) = (f64::NAN, f64::NAN);
    let status = unsafe { blaschke_eval_product(seq, 0.0, 0.0, &mut re, &mut im) };
    assert_eq!(status, BlaschkeStatus::Ok, "{}", last_error());
    assert!((re - 0.5).abs() < 1e-15 && im.abs() < 1e-15, "B(0) = {re} + {im}i");

    // B'/B(0) = (1 - r^2) / ((1 - 0)(0 - r)) = 0.75 / (-0.5) = -1.5.
    let status = unsafe { blaschke_eval_logderiv(seq, 0.0, 0.0, &mut re, &mut im) };
    assert_eq!(status, BlaschkeStatus::Ok, "{}", last_error());
    assert!((re + 1.5).abs() < 1e-14 && im.abs() < 1e-15, "B'/B(0) = {re} + {im}i");

    // Outside the disc: rejected with the modulus named.
    let status = unsafe { blaschke_eval_product(seq, 2.0, 0.0, &mut re, &mut im) };
    assert_eq!(status, BlaschkeStatus::InvalidArgument);
    assert!(last_error().contains("|z|"), "{}", last_error());

    unsafe { blaschke_sequence_free(seq) };
}

#[test]
fn parse_errors_name_the_line() {
    let text = b"nonsense\n\0";
    let mut seq = ptr::null_mut();
    let status =
        unsafe { blaschke_sequence_parse(text.as_ptr() as *const c_char, &mut seq) };
    assert_eq!(status, BlaschkeStatus::InvalidArgument);
    assert!(last_error().contains("line 1"), "{}", last_error());
}

#[test]
fn weight_evaluation_matches_the_closed_form() {
    let w = weight(0.5);
    let mut value = f64::NAN;
    let status = unsafe { blaschke_weight_eval(w, 0.25, &mut value) };
    assert_eq!(status, BlaschkeStatus::Ok, "{}", last_error());
    assert_eq!(value, 0.5, "sqrt(1/4)");
    let status = unsafe { blaschke_weight_eval(w, 2.0, &mut value) };
    assert_eq!(status, BlaschkeStatus::InvalidArgument);
    unsafe { blaschke_weight_free(w) };
}

#[test]
fn exceptional_set_queries_on_a_single_zero() {
    // Zero at r = 0.75 with h = t, beta = 1: the gap 0.25 sits strictly
    // inside the weight domain, so the half-width is exactly
    // 0.25^1 * 0.25 = 0.0625 and the interval is (0.6875, 0.8125).
    let text = b"7.5e-1 0.0e0\n\0";
    let mut seq = ptr::null_mut();
    unsafe { blaschke_sequence_parse(text.as_ptr() as *const c_char, &mut seq) };
    let w = weight(1.0);
    let mut set = ptr::null_mut();
    let status = unsafe { blaschke_exset_build(seq, w, 1.0, &mut set) };
    assert_eq!(status, BlaschkeStatus::Ok, "{}", last_error());
    assert_eq!(unsafe { blaschke_exset_len(set) }, 1);

    let mut measure = f64::NAN;
    assert_eq!(
        unsafe { blaschke_exset_measure(set, &mut measure) },
        BlaschkeStatus::Ok
    );
    assert!((measure - 0.125).abs() < 1e-15, "measure = {measure}");

    let mut inside = false;
    assert_eq!(
        unsafe { blaschke_exset_contains(set, 0.75, &mut inside) },
        BlaschkeStatus::Ok
    );
    assert!(inside);
    assert_eq!(
        unsafe { blaschke_exset_contains(set, 0.9, &mut inside) },
        BlaschkeStatus::Ok
    );
    assert!(!inside);

    unsafe { blaschke_exset_free(set) };
    unsafe { blaschke_weight_free(w) };
    unsafe { blaschke_sequence_free(seq) };
}

#[test]
fn verify_circular_smoke_on_a_single_zero() {
    let text = b"5.0e-1 0.0e0\n\0";
    let mut seq = ptr::null_mut();
    unsafe { blaschke_sequence_parse(text.as_ptr() as *const c_char, &mut seq) };
    let w = weight(1.0);
    let (mut fitted, mut predicted, mut pass) = (f64::NAN, f64::NAN, false);
    let status = unsafe {
        blaschke_verify_circular(seq, w, 1.0, 2, 13, 16, 0.5, &mut fitted, &mut predicted, &mut pass)
    };
    assert_eq!(status, BlaschkeStatus::Ok, "{}", last_error());
    assert_eq!(predicted, 3.0, "beta + 2 alpha");
    assert!(pass, "single zero must verify: fitted = {fitted}");
    assert!(fitted < 1.0, "a lone zero contributes bounded growth");

    // A reversed ladder is invalid input, reported without touching outputs.
    fitted = f64::NAN;
    let status = unsafe {
        blaschke_verify_circular(seq, w, 1.0, 9, 4, 16, 0.5, &mut fitted, &mut predicted, &mut pass)
    };
    assert_eq!(status, BlaschkeStatus::InvalidArgument);
    assert!(fitted.is_nan());

    unsafe { blaschke_weight_free(w) };
    unsafe { blaschke_sequence_free(seq) };
}

#[test]
fn status_names_are_stable() {
    let name = |s| {
        unsafe { CStr::from_ptr(blaschke_status_name(s)) }
            .to_str()
            .unwrap()
    };
    assert_eq!(name(BlaschkeStatus::Ok), "ok");
    assert_eq!(name(BlaschkeStatus::InvalidArgument), "invalid-argument");
    assert_eq!(name(BlaschkeStatus::Math), "math");
    assert_eq!(name(BlaschkeStatus::NullPointer), "null-pointer");
}

#[test]
fn generated_header_declares_the_surface() {
    let header = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/include/blaschke.h"
    ))
    .expect("build script generates the header");
    for symbol in [
        "BlaschkeStatus",
        "blaschke_sequence_geometric",
        "blaschke_sequence_parse",
        "blaschke_eval_product",
        "blaschke_eval_logderiv",
        "blaschke_exset_build",
        "blaschke_verify_circular",
        "blaschke_last_error",
    ] {
        assert!(header.contains(symbol), "header must declare {symbol}");
    }
}

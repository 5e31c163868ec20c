//! C interface over the series types. Handles are opaque; every operation
//! returns a status code and leaves a human-readable message retrievable
//! through rdcas_last_error_message on failure.
//!
//! Ownership rules: *_parse_json and the arithmetic entry points allocate
//! handles released by *_free; every char* produced here is released by
//! rdcas_string_free. Inputs are borrowed and never freed by this library.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fmt::Display;

use rdcas::coeff::parse_coeff_expr;
use rdcas::dirichletseries::Dps;
use rdcas::document::SeriesDocument;
use rdcas::powerseries::{theorem1_transform, Fps};
use rdcas::rdgroup::theorem3_transform;
use rdcas::suites::{run_suite, Suite};
use rdcas::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RdcasStatus {
    Ok = 0,
    OrderMismatch = 1,
    NotInvertible = 2,
    NotUnipotent = 3,
    NotProper = 4,
    NotDivisible = 5,
    NotADivisor = 6,
    InsufficientOrder = 7,
    ParseError = 8,
    InvalidArgument = 9,
    IdentityFailed = 10,
}

/// Truncated ordinary power series with exact symbolic coefficients.
pub struct RdcasFps {
    inner: Fps,
}

/// Truncated Dirichlet series with exact symbolic coefficients.
pub struct RdcasDps {
    inner: Dps,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Display) {
    let text = message.to_string().replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = Some(CString::new(text).unwrap());
    });
}

fn fail(status: RdcasStatus, message: impl Display) -> RdcasStatus {
    set_error(message);
    status
}

fn from_error(err: Error) -> RdcasStatus {
    let status = match err {
        Error::OrderMismatch { .. } => RdcasStatus::OrderMismatch,
        Error::NotInvertible => RdcasStatus::NotInvertible,
        Error::NotUnipotent => RdcasStatus::NotUnipotent,
        Error::NotProper => RdcasStatus::NotProper,
        Error::NotDivisible => RdcasStatus::NotDivisible,
        Error::NotADivisor { .. } => RdcasStatus::NotADivisor,
        Error::InsufficientOrder { .. } => RdcasStatus::InsufficientOrder,
        Error::Parse(_) => RdcasStatus::ParseError,
    };
    fail(status, err)
}

fn arg_str<'a>(ptr: *const c_char, name: &str) -> Result<&'a str, RdcasStatus> {
    if ptr.is_null() {
        return Err(fail(RdcasStatus::InvalidArgument, format!("{} is null", name)));
    }
    unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .map_err(|_| fail(RdcasStatus::InvalidArgument, format!("{} is not UTF-8", name)))
}

fn fps_ref<'a>(ptr: *const RdcasFps) -> Result<&'a Fps, RdcasStatus> {
    if ptr.is_null() {
        return Err(fail(RdcasStatus::InvalidArgument, "series handle is null"));
    }
    Ok(unsafe { &(*ptr).inner })
}

fn dps_ref<'a>(ptr: *const RdcasDps) -> Result<&'a Dps, RdcasStatus> {
    if ptr.is_null() {
        return Err(fail(RdcasStatus::InvalidArgument, "series handle is null"));
    }
    Ok(unsafe { &(*ptr).inner })
}

fn give_fps(value: Fps, out: *mut *mut RdcasFps) -> RdcasStatus {
    if out.is_null() {
        return fail(RdcasStatus::InvalidArgument, "output pointer is null");
    }
    unsafe { *out = Box::into_raw(Box::new(RdcasFps { inner: value })) };
    RdcasStatus::Ok
}

fn give_dps(value: Dps, out: *mut *mut RdcasDps) -> RdcasStatus {
    if out.is_null() {
        return fail(RdcasStatus::InvalidArgument, "output pointer is null");
    }
    unsafe { *out = Box::into_raw(Box::new(RdcasDps { inner: value })) };
    RdcasStatus::Ok
}

fn give_string(value: String, out: *mut *mut c_char) -> RdcasStatus {
    if out.is_null() {
        return fail(RdcasStatus::InvalidArgument, "output pointer is null");
    }
    let owned = CString::new(value.replace('\0', " ")).unwrap();
    unsafe { *out = owned.into_raw() };
    RdcasStatus::Ok
}

/// Last failure message for the calling thread, or null if none was
/// recorded. The caller frees the returned string with rdcas_string_free.
#[no_mangle]
pub extern "C" fn rdcas_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| match slot.borrow().as_ref() {
        Some(text) => text.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// Releases a string produced by this library. Null is ignored.
///
/// # Safety
/// The pointer must have been returned by this library and not freed yet.
#[no_mangle]
pub unsafe extern "C" fn rdcas_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(unsafe { CString::from_raw(text) });
    }
}

/// Parses a series document {"kind":"fps","order":N,"coeffs":{...}}.
#[no_mangle]
pub extern "C" fn rdcas_fps_parse_json(json: *const c_char, out: *mut *mut RdcasFps) -> RdcasStatus {
    let text = match arg_str(json, "json") {
        Ok(t) => t,
        Err(status) => return status,
    };
    let doc: SeriesDocument = match serde_json::from_str(text) {
        Ok(doc) => doc,
        Err(err) => return fail(RdcasStatus::ParseError, err),
    };
    match doc.to_fps() {
        Ok(series) => give_fps(series, out),
        Err(message) => fail(RdcasStatus::ParseError, message),
    }
}

/// Parses a series document {"kind":"dps","order":N,"coeffs":{...}}.
#[no_mangle]
pub extern "C" fn rdcas_dps_parse_json(json: *const c_char, out: *mut *mut RdcasDps) -> RdcasStatus {
    let text = match arg_str(json, "json") {
        Ok(t) => t,
        Err(status) => return status,
    };
    let doc: SeriesDocument = match serde_json::from_str(text) {
        Ok(doc) => doc,
        Err(err) => return fail(RdcasStatus::ParseError, err),
    };
    match doc.to_dps() {
        Ok(series) => give_dps(series, out),
        Err(message) => fail(RdcasStatus::ParseError, message),
    }
}

/// Renders the series as a pretty-printed JSON document.
#[no_mangle]
pub extern "C" fn rdcas_fps_to_json(handle: *const RdcasFps, out: *mut *mut c_char) -> RdcasStatus {
    let series = match fps_ref(handle) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let doc = SeriesDocument::from_fps(series);
    give_string(serde_json::to_string_pretty(&doc).unwrap(), out)
}

/// Renders the series as a pretty-printed JSON document.
#[no_mangle]
pub extern "C" fn rdcas_dps_to_json(handle: *const RdcasDps, out: *mut *mut c_char) -> RdcasStatus {
    let series = match dps_ref(handle) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let doc = SeriesDocument::from_dps(series);
    give_string(serde_json::to_string_pretty(&doc).unwrap(), out)
}

/// Releases a power-series handle. Null is ignored.
///
/// # Safety
/// The handle must have been returned by this library and not freed yet.
#[no_mangle]
pub unsafe extern "C" fn rdcas_fps_free(handle: *mut RdcasFps) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}

/// Releases a Dirichlet-series handle. Null is ignored.
///
/// # Safety
/// The handle must have been returned by this library and not freed yet.
#[no_mangle]
pub unsafe extern "C" fn rdcas_dps_free(handle: *mut RdcasDps) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}

/// Truncation order of the series (last tracked index).
#[no_mangle]
pub extern "C" fn rdcas_fps_order(handle: *const RdcasFps) -> u64 {
    fps_ref(handle).map(|s| s.order() as u64).unwrap_or(0)
}

/// Truncation order of the series (last tracked index).
#[no_mangle]
pub extern "C" fn rdcas_dps_order(handle: *const RdcasDps) -> u64 {
    dps_ref(handle).map(|s| s.order() as u64).unwrap_or(0)
}

/// Renders one coefficient in the expression grammar accepted back by pow
/// and transform, for example "1/2*phi^2+l2".
#[no_mangle]
pub extern "C" fn rdcas_fps_coeff(handle: *const RdcasFps, n: u64, out: *mut *mut c_char) -> RdcasStatus {
    let series = match fps_ref(handle) {
        Ok(s) => s,
        Err(status) => return status,
    };
    if n as usize > series.order() {
        return fail(RdcasStatus::InvalidArgument, format!("index {} exceeds order {}", n, series.order()));
    }
    give_string(series.coeff(n as usize).to_string(), out)
}

/// Renders one coefficient; indices are 1-based as for any Dirichlet series.
#[no_mangle]
pub extern "C" fn rdcas_dps_coeff(handle: *const RdcasDps, n: u64, out: *mut *mut c_char) -> RdcasStatus {
    let series = match dps_ref(handle) {
        Ok(s) => s,
        Err(status) => return status,
    };
    if n == 0 || n as usize > series.order() {
        return fail(RdcasStatus::InvalidArgument, format!("index {} outside 1..={}", n, series.order()));
    }
    give_string(series.coeff(n as usize).to_string(), out)
}

#[no_mangle]
pub extern "C" fn rdcas_fps_mul(a: *const RdcasFps, b: *const RdcasFps, out: *mut *mut RdcasFps) -> RdcasStatus {
    let (a, b) = match (fps_ref(a), fps_ref(b)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(status), _) | (_, Err(status)) => return status,
    };
    match a.mul(b) {
        Ok(product) => give_fps(product, out),
        Err(err) => from_error(err),
    }
}

#[no_mangle]
pub extern "C" fn rdcas_dps_mul(a: *const RdcasDps, b: *const RdcasDps, out: *mut *mut RdcasDps) -> RdcasStatus {
    let (a, b) = match (dps_ref(a), dps_ref(b)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(status), _) | (_, Err(status)) => return status,
    };
    match a.mul(b) {
        Ok(product) => give_dps(product, out),
        Err(err) => from_error(err),
    }
}

/// Multiplicative inverse; fails unless the leading coefficient is a
/// nonzero rational.
#[no_mangle]
pub extern "C" fn rdcas_fps_inv(handle: *const RdcasFps, out: *mut *mut RdcasFps) -> RdcasStatus {
    match fps_ref(handle).and_then(|s| s.inv().map_err(from_error)) {
        Ok(inverse) => give_fps(inverse, out),
        Err(status) => status,
    }
}

/// Multiplicative inverse; fails unless the coefficient at 1 is a nonzero
/// rational.
#[no_mangle]
pub extern "C" fn rdcas_dps_inv(handle: *const RdcasDps, out: *mut *mut RdcasDps) -> RdcasStatus {
    match dps_ref(handle).and_then(|s| s.inv().map_err(from_error)) {
        Ok(inverse) => give_dps(inverse, out),
        Err(status) => status,
    }
}

/// Logarithm of a unipotent series.
#[no_mangle]
pub extern "C" fn rdcas_fps_log(handle: *const RdcasFps, out: *mut *mut RdcasFps) -> RdcasStatus {
    match fps_ref(handle).and_then(|s| s.log().map_err(from_error)) {
        Ok(log) => give_fps(log, out),
        Err(status) => status,
    }
}

/// Logarithm of a unipotent series.
#[no_mangle]
pub extern "C" fn rdcas_dps_log(handle: *const RdcasDps, out: *mut *mut RdcasDps) -> RdcasStatus {
    match dps_ref(handle).and_then(|s| s.log().map_err(from_error)) {
        Ok(log) => give_dps(log, out),
        Err(status) => status,
    }
}

/// Raises a unipotent series to a symbolic exponent given in the expression
/// grammar, for example "phi" or "-2*beta+1".
#[no_mangle]
pub extern "C" fn rdcas_fps_pow(handle: *const RdcasFps, exponent: *const c_char, out: *mut *mut RdcasFps) -> RdcasStatus {
    let series = match fps_ref(handle) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let exponent = match arg_str(exponent, "exponent") {
        Ok(text) => match parse_coeff_expr(text) {
            Ok(poly) => poly,
            Err(err) => return from_error(err),
        },
        Err(status) => return status,
    };
    match series.pow_sym(&exponent) {
        Ok(power) => give_fps(power, out),
        Err(err) => from_error(err),
    }
}

/// Raises a unipotent series to a symbolic exponent given in the expression
/// grammar.
#[no_mangle]
pub extern "C" fn rdcas_dps_pow(handle: *const RdcasDps, exponent: *const c_char, out: *mut *mut RdcasDps) -> RdcasStatus {
    let series = match dps_ref(handle) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let exponent = match arg_str(exponent, "exponent") {
        Ok(text) => match parse_coeff_expr(text) {
            Ok(poly) => poly,
            Err(err) => return from_error(err),
        },
        Err(status) => return status,
    };
    match series.pow_sym(&exponent) {
        Ok(power) => give_dps(power, out),
        Err(err) => from_error(err),
    }
}

/// Formal derivative. The order drops by one.
#[no_mangle]
pub extern "C" fn rdcas_fps_derive(handle: *const RdcasFps, out: *mut *mut RdcasFps) -> RdcasStatus {
    match fps_ref(handle) {
        Ok(series) => give_fps(series.derive(), out),
        Err(status) => status,
    }
}

/// Log-scaled derivation n -> -ln(n) a_n. The order is unchanged.
#[no_mangle]
pub extern "C" fn rdcas_dps_derive(handle: *const RdcasDps, out: *mut *mut RdcasDps) -> RdcasStatus {
    match dps_ref(handle) {
        Ok(series) => give_dps(series.derive(), out),
        Err(status) => status,
    }
}

/// Beta-shift transform of a unipotent power series: coefficient n becomes
/// phi/(phi+beta*n) [x^n] a^(phi+beta*n).
#[no_mangle]
pub extern "C" fn rdcas_fps_transform(handle: *const RdcasFps, beta: *const c_char, out: *mut *mut RdcasFps) -> RdcasStatus {
    let series = match fps_ref(handle) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let beta = match arg_str(beta, "beta") {
        Ok(text) => match parse_coeff_expr(text) {
            Ok(poly) => poly,
            Err(err) => return from_error(err),
        },
        Err(status) => return status,
    };
    match theorem1_transform(series, &beta) {
        Ok(coeffs) => give_fps(Fps::from_coeffs(coeffs), out),
        Err(err) => from_error(err),
    }
}

/// Beta-shift transform of a unipotent Dirichlet series: coefficient n
/// becomes phi/(phi+beta*ln n) [n^-s] a^(phi+beta*ln n).
#[no_mangle]
pub extern "C" fn rdcas_dps_transform(handle: *const RdcasDps, beta: *const c_char, out: *mut *mut RdcasDps) -> RdcasStatus {
    let series = match dps_ref(handle) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let beta = match arg_str(beta, "beta") {
        Ok(text) => match parse_coeff_expr(text) {
            Ok(poly) => poly,
            Err(err) => return from_error(err),
        },
        Err(status) => return status,
    };
    match theorem3_transform(series, &beta) {
        Ok(coeffs) => {
            let order = series.order();
            give_dps(Dps::from_fn(order, |n| coeffs[n].clone()), out)
        }
        Err(err) => from_error(err),
    }
}

/// Runs one verification suite and writes its reports to out_path, one JSON
/// object per line. Suite names and default bounds match the rdcas binary;
/// pass n_max 0 to use the suite default. Returns IdentityFailed when any
/// report in the stream failed.
#[no_mangle]
pub extern "C" fn rdcas_verify(suite: *const c_char, n_max: u64, seed: u64, out_path: *const c_char) -> RdcasStatus {
    let name = match arg_str(suite, "suite") {
        Ok(t) => t,
        Err(status) => return status,
    };
    let path = match arg_str(out_path, "out_path") {
        Ok(t) => t,
        Err(status) => return status,
    };
    let suite = match Suite::parse(name) {
        Some(suite) => suite,
        None => return fail(RdcasStatus::InvalidArgument, format!("unknown suite {}", name)),
    };
    let bound = if n_max == 0 { suite.default_n_max() } else { n_max as usize };
    let reports = match run_suite(suite, bound, seed) {
        Ok(reports) => reports,
        Err(err) => return from_error(err),
    };
    let mut text = String::new();
    for report in &reports {
        text.push_str(&serde_json::to_string(report).unwrap());
        text.push('\n');
    }
    if let Err(err) = std::fs::write(path, text) {
        return fail(RdcasStatus::InvalidArgument, err);
    }
    let failed = reports.iter().filter(|r| !r.is_verified()).count();
    if failed > 0 {
        return fail(RdcasStatus::IdentityFailed, format!("{} of {} reports failed", failed, reports.len()));
    }
    RdcasStatus::Ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    fn c(text: &str) -> CString {
        CString::new(text).unwrap()
    }

    fn take_string(ptr: *mut c_char) -> String {
        assert!(!ptr.is_null());
        let text = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string();
        unsafe { rdcas_string_free(ptr) };
        text
    }

    #[test]
    fn fps_round_trip_and_pow() {
        let json = c(r#"{"kind":"fps","order":2,"coeffs":{"0":"1","1":"1","2":"1/2"}}"#);
        let mut handle: *mut RdcasFps = ptr::null_mut();
        assert_eq!(rdcas_fps_parse_json(json.as_ptr(), &mut handle), RdcasStatus::Ok);
        assert_eq!(rdcas_fps_order(handle), 2);

        let exponent = c("phi");
        let mut power: *mut RdcasFps = ptr::null_mut();
        assert_eq!(rdcas_fps_pow(handle, exponent.as_ptr(), &mut power), RdcasStatus::Ok);
        let mut coeff: *mut c_char = ptr::null_mut();
        assert_eq!(rdcas_fps_coeff(power, 2, &mut coeff), RdcasStatus::Ok);
        assert_eq!(take_string(coeff), "1/2*phi^2");

        let mut json_out: *mut c_char = ptr::null_mut();
        assert_eq!(rdcas_fps_to_json(power, &mut json_out), RdcasStatus::Ok);
        let rendered = take_string(json_out);
        let mut back: *mut RdcasFps = ptr::null_mut();
        let rendered_c = c(&rendered);
        assert_eq!(rdcas_fps_parse_json(rendered_c.as_ptr(), &mut back), RdcasStatus::Ok);
        let mut coeff: *mut c_char = ptr::null_mut();
        assert_eq!(rdcas_fps_coeff(back, 1, &mut coeff), RdcasStatus::Ok);
        assert_eq!(take_string(coeff), "phi");

        unsafe { rdcas_fps_free(handle) };
        unsafe { rdcas_fps_free(power) };
        unsafe { rdcas_fps_free(back) };
    }

    #[test]
    fn dps_transform_epsilon() {
        let json = c(r#"{"kind":"dps","order":6,"coeffs":{"1":"1","2":"1","3":"1","4":"1/2","5":"1","6":"1"}}"#);
        let mut handle: *mut RdcasDps = ptr::null_mut();
        assert_eq!(rdcas_dps_parse_json(json.as_ptr(), &mut handle), RdcasStatus::Ok);

        let beta = c("1");
        let mut shifted: *mut RdcasDps = ptr::null_mut();
        assert_eq!(rdcas_dps_transform(handle, beta.as_ptr(), &mut shifted), RdcasStatus::Ok);
        let mut coeff: *mut c_char = ptr::null_mut();
        assert_eq!(rdcas_dps_coeff(shifted, 6, &mut coeff), RdcasStatus::Ok);
        assert_eq!(take_string(coeff), "phi^2+l2*phi+l3*phi");

        unsafe { rdcas_dps_free(handle) };
        unsafe { rdcas_dps_free(shifted) };
    }

    #[test]
    fn errors_set_status_and_message() {
        let json = c(r#"{"kind":"dps","order":4,"coeffs":{}}"#);
        let mut handle: *mut RdcasDps = ptr::null_mut();
        assert_eq!(rdcas_dps_parse_json(json.as_ptr(), &mut handle), RdcasStatus::Ok);
        let mut inverse: *mut RdcasDps = ptr::null_mut();
        assert_eq!(rdcas_dps_inv(handle, &mut inverse), RdcasStatus::NotInvertible);
        assert!(inverse.is_null());
        let message = take_string(rdcas_last_error_message());
        assert!(message.contains("not invertible"));
        unsafe { rdcas_dps_free(handle) };

        let mut parsed: *mut RdcasFps = ptr::null_mut();
        let bad = c("{\"kind\":\"fps\"");
        assert_eq!(rdcas_fps_parse_json(bad.as_ptr(), &mut parsed), RdcasStatus::ParseError);
        assert_eq!(rdcas_fps_parse_json(ptr::null(), &mut parsed), RdcasStatus::InvalidArgument);

        let json = c(r#"{"kind":"fps","order":3,"coeffs":{"0":"2"}}"#);
        let mut doubled: *mut RdcasFps = ptr::null_mut();
        assert_eq!(rdcas_fps_parse_json(json.as_ptr(), &mut doubled), RdcasStatus::Ok);
        let beta = c("1");
        let mut shifted: *mut RdcasFps = ptr::null_mut();
        assert_eq!(rdcas_fps_transform(doubled, beta.as_ptr(), &mut shifted), RdcasStatus::NotUnipotent);
        unsafe { rdcas_fps_free(doubled) };
    }

    #[test]
    fn verify_writes_report_file() {
        let mut path = std::env::temp_dir();
        path.push(format!("rdcas-capi-{}-binomf.jsonl", std::process::id()));
        let suite = c("binomf");
        let out_path = c(path.to_str().unwrap());
        assert_eq!(rdcas_verify(suite.as_ptr(), 20, 0, out_path.as_ptr()), RdcasStatus::Ok);
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 19);
        for line in text.lines() {
            let report: serde_json::Value = serde_json::from_str(line).unwrap();
            assert_eq!(report["status"], "verified");
        }

        let unknown = c("nonsense");
        assert_eq!(
            rdcas_verify(unknown.as_ptr(), 0, 0, out_path.as_ptr()),
            RdcasStatus::InvalidArgument
        );
    }
}

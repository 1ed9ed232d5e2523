//! C ABI for the `bigoh` library.
//!
//! Every entry point returns a [`BigohStatus`]; results come back through
//! out-pointers. Sums and families are opaque heap handles released with
//! their `_free` function. Strings returned to the caller are owned by the
//! caller and released with [`bigoh_string_free`]. After a non-`Ok` status,
//! [`bigoh_last_error`] describes the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bigoh::family::{envelope_csv, gen_theorem3, witness_plan, Family, FamilyFile};
use bigoh::fitter::{fit, read_measurements_csv, validate_bound, FitOptions, FitReport};
use bigoh::independence::{check_report, check_term, is_irreducible, reduce};
use bigoh::rational::parse_rational;
use bigoh::{gen_theorem1, gen_theorem2, parse_sum, parse_uni_sum, reduce_single, Error, TermSum};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BigohStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    OutOfRange = 5,
    Panic = 6,
}

/// Opaque canonical sum of monomial terms.
pub struct BigohSum(TermSum);

/// Opaque irreducible family.
pub struct BigohFamily(Family);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> BigohStatus {
    match e {
        Error::Syntax { .. }
        | Error::NonPositiveCoefficient { .. }
        | Error::NegativeExponent { .. }
        | Error::UnknownVariable { .. }
        | Error::InvalidRational(_)
        | Error::InvalidMeasurement { .. } => BigohStatus::Parse,
        Error::IndexOutOfRange { .. } | Error::LengthMismatch { .. } => BigohStatus::OutOfRange,
        _ => BigohStatus::Domain,
    }
}

struct Fail(BigohStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> BigohStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BigohStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            BigohStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(BigohStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        Fail(
            BigohStatus::InvalidUtf8,
            format!("{name} is not valid UTF-8"),
        )
    })
}

unsafe fn ref_arg<'a, T>(p: *const T, name: &str) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail(BigohStatus::NullPointer, format!("{name} is null")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(
            BigohStatus::NullPointer,
            "output pointer is null".into(),
        ));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(BigohStatus::Domain, "interior nul".into()))?;
    write_out(out, c.into_raw())
}

fn rational(s: &str) -> Result<bigoh::Rational, Fail> {
    Ok(parse_rational(s)?)
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next `bigoh_*` call on the same thread.
#[no_mangle]
pub extern "C" fn bigoh_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bigoh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an expression such as `x^2 + 2*x*y + y^2`.
///
/// # Safety
/// `expr` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bigoh_sum_parse(
    expr: *const c_char,
    out: *mut *mut BigohSum,
) -> BigohStatus {
    guard(|| {
        let s = parse_sum(str_arg(expr, "expr")?)?;
        write_out(out, Box::into_raw(Box::new(BigohSum(s))))
    })
}

/// # Safety
/// `sum` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bigoh_sum_free(sum: *mut BigohSum) {
    if !sum.is_null() {
        drop(Box::from_raw(sum));
    }
}

/// Number of terms, or 0 for a null handle.
///
/// # Safety
/// `sum` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bigoh_sum_len(sum: *const BigohSum) -> usize {
    sum.as_ref().map_or(0, |s| s.0.len())
}

/// # Safety
/// `sum` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bigoh_sum_to_string(
    sum: *const BigohSum,
    out: *mut *mut c_char,
) -> BigohStatus {
    guard(|| {
        let s = ref_arg(sum, "sum")?;
        write_string(out, s.0.print())
    })
}

/// # Safety
/// `sum` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bigoh_sum_is_irreducible(
    sum: *const BigohSum,
    out: *mut bool,
) -> BigohStatus {
    guard(|| {
        let s = ref_arg(sum, "sum")?;
        write_out(out, is_irreducible(&s.0).0)
    })
}

/// Independence of the term at 0-based `index` in canonical order.
///
/// # Safety
/// `sum` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bigoh_sum_term_independent(
    sum: *const BigohSum,
    index: usize,
    out: *mut bool,
) -> BigohStatus {
    guard(|| {
        let s = ref_arg(sum, "sum")?;
        let v = check_term(&s.0, index)?;
        write_out(out, v.independent())
    })
}

/// JSON `{"sum", "irreducible", "verdicts": [...]}` with one certificate per term.
///
/// # Safety
/// `sum` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bigoh_sum_check_json(
    sum: *const BigohSum,
    out: *mut *mut c_char,
) -> BigohStatus {
    guard(|| {
        let s = ref_arg(sum, "sum")?;
        let json = serde_json::to_string(&check_report(&s.0)).expect("report serializes");
        write_string(out, json)
    })
}

/// Irreducible core of `sum` as a new handle.
///
/// # Safety
/// `sum` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bigoh_sum_reduce(
    sum: *const BigohSum,
    out: *mut *mut BigohSum,
) -> BigohStatus {
    guard(|| {
        let s = ref_arg(sum, "sum")?;
        let red = reduce(&s.0);
        write_out(out, Box::into_raw(Box::new(BigohSum(red.sum))))
    })
}

/// Family `a_i = a1 (2 - alpha^(i-1))`, `b_i = b1 beta^(i-1)`; rationals are `"p/q"` strings.
///
/// # Safety
/// String arguments must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bigoh_family_theorem1(
    k: usize,
    alpha: *const c_char,
    beta: *const c_char,
    a1: *const c_char,
    b1: *const c_char,
    out: *mut *mut BigohFamily,
) -> BigohStatus {
    guard(|| {
        let f = gen_theorem1(
            k,
            rational(str_arg(alpha, "alpha")?)?,
            rational(str_arg(beta, "beta")?)?,
            rational(str_arg(a1, "a1")?)?,
            rational(str_arg(b1, "b1")?)?,
        )?;
        write_out(out, Box::into_raw(Box::new(BigohFamily(f))))
    })
}

/// Integer-exponent family with `alpha = p_alpha/q_alpha`, `beta = p_beta/q_beta`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bigoh_family_theorem2(
    k: usize,
    p_alpha: i64,
    q_alpha: i64,
    p_beta: i64,
    q_beta: i64,
    out: *mut *mut BigohFamily,
) -> BigohStatus {
    guard(|| {
        let f = gen_theorem2(
            k,
            &p_alpha.into(),
            &q_alpha.into(),
            &p_beta.into(),
            &q_beta.into(),
        )?;
        write_out(out, Box::into_raw(Box::new(BigohFamily(f))))
    })
}

/// Family whose witness exponents all stay below `cap`.
///
/// # Safety
/// String arguments must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bigoh_family_theorem3(
    k: usize,
    cap: *const c_char,
    a1: *const c_char,
    b1: *const c_char,
    out: *mut *mut BigohFamily,
) -> BigohStatus {
    guard(|| {
        let res = gen_theorem3(
            k,
            rational(str_arg(cap, "cap")?)?,
            rational(str_arg(a1, "a1")?)?,
            rational(str_arg(b1, "b1")?)?,
        )?;
        write_out(out, Box::into_raw(Box::new(BigohFamily(res.family))))
    })
}

/// # Safety
/// `family` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bigoh_family_free(family: *mut BigohFamily) {
    if !family.is_null() {
        drop(Box::from_raw(family));
    }
}

/// # Safety
/// `family` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bigoh_family_len(family: *const BigohFamily) -> usize {
    family.as_ref().map_or(0, |f| f.0.k())
}

/// Family description in the same JSON format `bigoh gen` writes.
///
/// # Safety
/// `family` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bigoh_family_to_json(
    family: *const BigohFamily,
    out: *mut *mut c_char,
) -> BigohStatus {
    guard(|| {
        let f = ref_arg(family, "family")?;
        let mut file = FamilyFile::from_family(&f.0);
        file.z = Some(
            witness_plan(&f.0)
                .z
                .iter()
                .map(ToString::to_string)
                .collect(),
        );
        write_string(
            out,
            serde_json::to_string(&file).expect("family serializes"),
        )
    })
}

/// Unit-coefficient sum of the family's monomials.
///
/// # Safety
/// `family` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bigoh_family_to_sum(
    family: *const BigohFamily,
    out: *mut *mut BigohSum,
) -> BigohStatus {
    guard(|| {
        let f = ref_arg(family, "family")?;
        write_out(out, Box::into_raw(Box::new(BigohSum(f.0.to_term_sum()))))
    })
}

/// Envelope table CSV. `z` is a comma-separated list or null for the witness plan.
///
/// # Safety
/// `family` must be a live handle; `z` null or NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bigoh_family_table_csv(
    family: *const BigohFamily,
    z: *const c_char,
    out: *mut *mut c_char,
) -> BigohStatus {
    guard(|| {
        let f = ref_arg(family, "family")?;
        let zs = if z.is_null() {
            witness_plan(&f.0).z
        } else {
            str_arg(z, "z")?
                .split(',')
                .map(rational)
                .collect::<Result<_, _>>()?
        };
        write_string(out, envelope_csv(&f.0, &zs)?)
    })
}

/// Fits a bound to CSV text with header `x,y,t` and returns the JSON report.
///
/// # Safety
/// `csv` and `max_degree` must be NUL-terminated; `lattice` must point to
/// `lattice_len` values (or be null with `lattice_len == 0` for integers);
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bigoh_fit_csv(
    csv: *const c_char,
    max_terms: usize,
    max_degree: *const c_char,
    lattice: *const u32,
    lattice_len: usize,
    robust: bool,
    out: *mut *mut c_char,
) -> BigohStatus {
    guard(|| {
        let data = read_measurements_csv(str_arg(csv, "csv")?.as_bytes())?;
        let lattice = if lattice_len == 0 {
            vec![1]
        } else if lattice.is_null() {
            return Err(Fail(BigohStatus::NullPointer, "lattice is null".into()));
        } else {
            std::slice::from_raw_parts(lattice, lattice_len).to_vec()
        };
        let opts = FitOptions {
            max_terms,
            max_degree: rational(str_arg(max_degree, "max_degree")?)?,
            lattice,
            robust,
        };
        let res = fit(&data, &opts)?;
        let report = FitReport::new(&res, validate_bound(&data, &res));
        write_string(
            out,
            serde_json::to_string(&report).expect("report serializes"),
        )
    })
}

/// Compares the dominant terms of two expressions in `n`: -1, 0 or 1.
///
/// # Safety
/// `lhs`, `rhs` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bigoh_uni_compare(
    lhs: *const c_char,
    rhs: *const c_char,
    out: *mut i32,
) -> BigohStatus {
    guard(|| {
        let f = reduce_single(&parse_uni_sum(str_arg(lhs, "lhs")?)?)?;
        let g = reduce_single(&parse_uni_sum(str_arg(rhs, "rhs")?)?)?;
        write_out(out, f.compare(&g) as i32)
    })
}

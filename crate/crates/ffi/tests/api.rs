use std::ffi::{CStr, CString};
use std::ptr;

use bigoh_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    bigoh_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let p = bigoh_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

#[test]
fn parse_print_and_check() {
    unsafe {
        let mut sum = ptr::null_mut();
        let e = c("y^2 + 2*x*y + x^2");
        assert_eq!(bigoh_sum_parse(e.as_ptr(), &mut sum), BigohStatus::Ok);
        assert_eq!(bigoh_sum_len(sum), 3);

        let mut s = ptr::null_mut();
        assert_eq!(bigoh_sum_to_string(sum, &mut s), BigohStatus::Ok);
        assert_eq!(take(s), "y^2 + 2*x*y + x^2");

        let mut irr = true;
        assert_eq!(bigoh_sum_is_irreducible(sum, &mut irr), BigohStatus::Ok);
        assert!(!irr);

        let mut ind = false;
        assert_eq!(
            bigoh_sum_term_independent(sum, 0, &mut ind),
            BigohStatus::Ok
        );
        assert!(ind);
        assert_eq!(
            bigoh_sum_term_independent(sum, 1, &mut ind),
            BigohStatus::Ok
        );
        assert!(!ind);
        assert_eq!(
            bigoh_sum_term_independent(sum, 3, &mut ind),
            BigohStatus::OutOfRange
        );
        assert!(last_error().contains('3'));

        let mut json = ptr::null_mut();
        assert_eq!(bigoh_sum_check_json(sum, &mut json), BigohStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(v["irreducible"], false);
        assert_eq!(v["verdicts"][1]["domination"]["lambda"], "1/2");

        let mut red = ptr::null_mut();
        assert_eq!(bigoh_sum_reduce(sum, &mut red), BigohStatus::Ok);
        assert_eq!(bigoh_sum_len(red), 2);
        assert_eq!(bigoh_sum_to_string(red, &mut s), BigohStatus::Ok);
        assert_eq!(take(s), "y^2 + x^2");

        bigoh_sum_free(red);
        bigoh_sum_free(sum);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut sum = ptr::null_mut();
        assert_eq!(
            bigoh_sum_parse(ptr::null(), &mut sum),
            BigohStatus::NullPointer
        );
        let bad = c("x^ + y");
        assert_eq!(bigoh_sum_parse(bad.as_ptr(), &mut sum), BigohStatus::Parse);
        assert!(sum.is_null());
        assert!(!last_error().is_empty());

        let ok = c("x");
        assert_eq!(
            bigoh_sum_parse(ok.as_ptr(), ptr::null_mut()),
            BigohStatus::NullPointer
        );
        assert_eq!(bigoh_sum_parse(ok.as_ptr(), &mut sum), BigohStatus::Ok);
        assert!(bigoh_last_error().is_null());
        bigoh_sum_free(sum);

        let bytes = [0xffu8, 0];
        assert_eq!(
            bigoh_sum_parse(bytes.as_ptr().cast(), &mut sum),
            BigohStatus::InvalidUtf8
        );

        let mut fam = ptr::null_mut();
        let (a, b, one) = (c("1/2"), c("2/3"), c("1"));
        assert_eq!(
            bigoh_family_theorem1(
                3,
                a.as_ptr(),
                b.as_ptr(),
                one.as_ptr(),
                one.as_ptr(),
                &mut fam
            ),
            BigohStatus::Domain
        );
        assert!(last_error().contains("beta"));

        bigoh_sum_free(ptr::null_mut());
        bigoh_family_free(ptr::null_mut());
        bigoh_string_free(ptr::null_mut());
        assert_eq!(bigoh_sum_len(ptr::null()), 0);
    }
}

#[test]
fn families() {
    unsafe {
        let mut fam = ptr::null_mut();
        assert_eq!(
            bigoh_family_theorem2(6, 1, 3, 1, 2, &mut fam),
            BigohStatus::Ok
        );
        assert_eq!(bigoh_family_len(fam), 6);

        let z = c("0.05,0.14,0.21,0.31,0.47,0.70");
        let mut csv = ptr::null_mut();
        assert_eq!(
            bigoh_family_table_csv(fam, z.as_ptr(), &mut csv),
            BigohStatus::Ok
        );
        let csv = take(csv);
        assert!(csv.lines().nth(1).unwrap().starts_with("1,243,32,"));
        assert!(csv.contains("340.50"));

        let mut csv2 = ptr::null_mut();
        assert_eq!(
            bigoh_family_table_csv(fam, ptr::null(), &mut csv2),
            BigohStatus::Ok
        );
        assert_eq!(take(csv2).lines().count(), 7);

        let mut sum = ptr::null_mut();
        assert_eq!(bigoh_family_to_sum(fam, &mut sum), BigohStatus::Ok);
        let mut irr = false;
        assert_eq!(bigoh_sum_is_irreducible(sum, &mut irr), BigohStatus::Ok);
        assert!(irr);
        bigoh_sum_free(sum);

        let mut json = ptr::null_mut();
        assert_eq!(bigoh_family_to_json(fam, &mut json), BigohStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(v["k"], 6);
        assert_eq!(v["z"].as_array().unwrap().len(), 6);
        bigoh_family_free(fam);

        let (cap, one) = (c("2"), c("1"));
        assert_eq!(
            bigoh_family_theorem3(10, cap.as_ptr(), one.as_ptr(), one.as_ptr(), &mut fam),
            BigohStatus::Ok
        );
        assert_eq!(bigoh_family_len(fam), 10);
        bigoh_family_free(fam);

        let alpha = c("1/2");
        let mut f1 = ptr::null_mut();
        let beta_ok = c("3/5");
        assert_eq!(
            bigoh_family_theorem1(
                4,
                alpha.as_ptr(),
                beta_ok.as_ptr(),
                one.as_ptr(),
                one.as_ptr(),
                &mut f1
            ),
            BigohStatus::Domain,
            "beta must stay below 1 - alpha"
        );
        let alpha = c("1/3");
        assert_eq!(
            bigoh_family_theorem1(
                4,
                alpha.as_ptr(),
                beta_ok.as_ptr(),
                one.as_ptr(),
                one.as_ptr(),
                &mut f1
            ),
            BigohStatus::Ok
        );
        bigoh_family_free(f1);
    }
}

#[test]
fn fit_and_compare() {
    let mut csv = String::from("x,y,t\n");
    for x in [1u32, 2, 4, 8, 16] {
        for y in [1u32, 2, 4, 8, 16] {
            let t = f64::from(x * x + y * y);
            csv.push_str(&format!("{x},{y},{t}\n"));
        }
    }
    unsafe {
        let data = c(&csv);
        let deg = c("3");
        let mut out = ptr::null_mut();
        assert_eq!(
            bigoh_fit_csv(
                data.as_ptr(),
                2,
                deg.as_ptr(),
                ptr::null(),
                0,
                false,
                &mut out
            ),
            BigohStatus::Ok
        );
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["bound"], "y^2 + x^2");
        assert!(v["violations"].as_array().unwrap().is_empty());

        let short = c("x,y,t\n1,1,1\n");
        assert_eq!(
            bigoh_fit_csv(
                short.as_ptr(),
                2,
                deg.as_ptr(),
                ptr::null(),
                0,
                false,
                &mut out
            ),
            BigohStatus::Domain
        );

        let mut ord = 9;
        let (f, g) = (c("n^3 + 100*n^2"), c("2^n"));
        assert_eq!(
            bigoh_uni_compare(f.as_ptr(), g.as_ptr(), &mut ord),
            BigohStatus::Ok
        );
        assert_eq!(ord, -1);
        assert_eq!(
            bigoh_uni_compare(g.as_ptr(), f.as_ptr(), &mut ord),
            BigohStatus::Ok
        );
        assert_eq!(ord, 1);
        let h = c("5*n^3");
        assert_eq!(
            bigoh_uni_compare(f.as_ptr(), h.as_ptr(), &mut ord),
            BigohStatus::Ok
        );
        assert_eq!(ord, 0);
    }
}

#[test]
fn last_error_is_per_thread() {
    unsafe {
        let bad = c("z");
        let mut sum = ptr::null_mut();
        assert_eq!(bigoh_sum_parse(bad.as_ptr(), &mut sum), BigohStatus::Parse);
        std::thread::spawn(|| assert!(bigoh_last_error().is_null()))
            .join()
            .unwrap();
        assert!(last_error().contains('z'));
    }
}

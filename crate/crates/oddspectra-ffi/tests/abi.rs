//! Drives the C surface the way a foreign caller would: through raw
//! pointers and status codes, including the error and resize paths.

use std::ffi::CStr;
use std::ptr;

use oddspectra_ffi::*;

fn new_field(p: u64, n: u32) -> *mut OddField {
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { oddspectra_field_new(p, n, &mut f) }, OddStatus::Ok);
    assert!(!f.is_null());
    f
}

#[test]
fn field_lifecycle_and_accessors() {
    let f = new_field(3, 3);
    unsafe {
        assert_eq!(oddspectra_field_p(f), 3);
        assert_eq!(oddspectra_field_n(f), 3);
        assert_eq!(oddspectra_field_q(f), 27);

        let mut r = 0u64;
        assert_eq!(oddspectra_field_r(f, &mut r), OddStatus::Ok);
        assert_eq!(r, 7);

        let mut chi = 0i32;
        assert_eq!(oddspectra_field_chi(f, 0, &mut chi), OddStatus::Ok);
        assert_eq!(chi, 0);
        assert_eq!(oddspectra_field_chi(f, 1, &mut chi), OddStatus::Ok);
        assert_eq!(chi, 1);
        assert_eq!(oddspectra_field_chi(f, 27, &mut chi), OddStatus::InvalidArgument);

        oddspectra_field_free(f);
        oddspectra_field_free(ptr::null_mut());
    }
}

#[test]
fn construction_errors() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(oddspectra_field_new(4, 1, &mut f), OddStatus::NotPrime);
        assert_eq!(oddspectra_field_new(2, 5, &mut f), OddStatus::EvenCharacteristic);
        assert_eq!(oddspectra_field_new(3, 0, &mut f), OddStatus::InvalidArgument);
        assert_eq!(oddspectra_field_new(3, 30, &mut f), OddStatus::TooLarge);
        assert_eq!(oddspectra_field_new(7, 1, ptr::null_mut()), OddStatus::NullPointer);

        // The exponent default needs q = 3 (mod 4).
        let f = new_field(5, 1);
        let mut r = 0u64;
        assert_eq!(oddspectra_field_r(f, &mut r), OddStatus::ResidueMismatch);
        let mut g = ptr::null_mut();
        assert_eq!(oddspectra_binomial_new(f, 0, 1, &mut g), OddStatus::ResidueMismatch);
        oddspectra_field_free(f);
    }
}

#[test]
fn function_analysis_round_trip() {
    let f = new_field(7, 1);
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(oddspectra_binomial_new(f, 0, 1, &mut g), OddStatus::Ok);

        // F(x) = x^2 * (1 + chi(x)) over F_7: nonsquares collapse to 0.
        let mut y = u64::MAX;
        assert_eq!(oddspectra_fn_eval(g, 3, &mut y), OddStatus::Ok);
        assert_eq!(y, 0);
        assert_eq!(oddspectra_fn_eval(g, 2, &mut y), OddStatus::Ok);
        assert_eq!(y, 1);
        assert_eq!(oddspectra_fn_eval(g, 7, &mut y), OddStatus::InvalidArgument);

        let mut perm = true;
        assert_eq!(oddspectra_fn_is_permutation(g, &mut perm), OddStatus::Ok);
        assert!(!perm);

        let mut du = 0u64;
        assert_eq!(oddspectra_diff_uniformity(g, &mut du), OddStatus::Ok);
        assert_eq!(du, 2);

        let mut values = [0u64; 8];
        let mut mults = [0u64; 8];
        let mut len = 0usize;
        assert_eq!(
            oddspectra_diff_spectrum(g, values.as_mut_ptr(), mults.as_mut_ptr(), 8, &mut len),
            OddStatus::Ok
        );
        assert_eq!(&values[..len], &[0, 1, 2]);
        assert_eq!(&mults[..len], &[2, 3, 2]);

        // Undersized buffer: told how much is needed, nothing written.
        len = 0;
        assert_eq!(
            oddspectra_diff_spectrum(g, values.as_mut_ptr(), mults.as_mut_ptr(), 1, &mut len),
            OddStatus::BufferTooSmall
        );
        assert_eq!(len, 3);

        let mut bu = 0u64;
        assert_eq!(oddspectra_boom_uniformity(g, 1024, &mut bu), OddStatus::Ok);
        assert_eq!(bu, 1);
        assert_eq!(oddspectra_boom_uniformity(g, 5, &mut bu), OddStatus::TooLarge);

        assert_eq!(
            oddspectra_boom_spectrum(g, values.as_mut_ptr(), mults.as_mut_ptr(), 8, &mut len),
            OddStatus::Ok
        );
        assert_eq!(&values[..len], &[0, 1]);
        assert_eq!(&mults[..len], &[4, 2]);

        oddspectra_fn_free(g);

        let mut pw = ptr::null_mut();
        assert_eq!(oddspectra_power_new(f, 5, &mut pw), OddStatus::Ok);
        let mut perm = false;
        assert_eq!(oddspectra_fn_is_permutation(pw, &mut perm), OddStatus::Ok);
        assert!(perm, "gcd(5, 6) = 1, so x^5 permutes F_7");
        oddspectra_fn_free(pw);

        oddspectra_field_free(f);
    }
}

#[test]
fn gamma_and_strings() {
    unsafe {
        let f7 = new_field(7, 1);
        let mut g = 0i64;
        assert_eq!(oddspectra_gamma(f7, &mut g), OddStatus::Ok);
        assert_eq!(g, -2);
        oddspectra_field_free(f7);

        let f11 = new_field(11, 1);
        assert_eq!(oddspectra_gamma(f11, &mut g), OddStatus::ResidueMismatch);
        oddspectra_field_free(f11);

        let version = CStr::from_ptr(oddspectra_version());
        assert!(!version.to_str().unwrap().is_empty());
        let ok = CStr::from_ptr(oddspectra_status_str(OddStatus::Ok));
        assert_eq!(ok.to_str().unwrap(), "ok");
        let res = CStr::from_ptr(oddspectra_status_str(OddStatus::ResidueMismatch));
        assert!(res.to_str().unwrap().contains("residue"));
    }
}

#[test]
fn null_handles_are_rejected() {
    unsafe {
        let mut out = 0u64;
        assert_eq!(oddspectra_diff_uniformity(ptr::null(), &mut out), OddStatus::NullPointer);
        assert_eq!(oddspectra_field_q(ptr::null()), 0);
        let mut chi = 0i32;
        assert_eq!(
            oddspectra_field_chi(ptr::null(), 0, &mut chi),
            OddStatus::NullPointer
        );
        let f = new_field(7, 1);
        assert_eq!(
            oddspectra_field_chi(f, 0, ptr::null_mut()),
            OddStatus::NullPointer
        );
        oddspectra_field_free(f);
    }
}

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use mdswe_ffi::*;

fn spec(s: &str) -> *mut MdsweCode {
    let c = CString::new(s).unwrap();
    let mut code = ptr::null_mut();
    assert_eq!(unsafe { mdswe_code_from_spec(c.as_ptr(), &mut code) }, MdsweStatus::Ok);
    code
}

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { mdswe_string_free(s) };
    out
}

fn last_error() -> String {
    let p = mdswe_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn pwgf(code: *const MdsweCode, sizes: &[usize]) -> *mut MdsweTable {
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { mdswe_pwgf(code, sizes.as_ptr(), sizes.len(), &mut t) }, MdsweStatus::Ok);
    t
}

#[test]
fn example_enumerator_through_handles() {
    let code = spec("rs:8:7:3");
    unsafe {
        assert_eq!((mdswe_code_length(code), mdswe_code_dimension(code), mdswe_code_field_order(code)), (7, 3, 8));
        assert!(mdswe_code_is_mds(code));
    }
    let t = pwgf(code, &[1, 1, 2, 3]);
    unsafe {
        assert_eq!(mdswe_table_len(t), 14);
        assert_eq!(mdswe_table_blocks(t), 4);
        let mut sizes = [0usize; 4];
        assert_eq!(mdswe_table_sizes(t, sizes.as_mut_ptr(), 4), MdsweStatus::Ok);
        assert_eq!(sizes, [1, 1, 2, 3]);

        let mut counts = Vec::new();
        for i in 0..mdswe_table_len(t) {
            let mut profile = [0usize; 4];
            let mut c = ptr::null_mut();
            assert_eq!(mdswe_table_entry(t, i, profile.as_mut_ptr(), 4, &mut c), MdsweStatus::Ok);
            counts.push((profile, take(c)));
        }
        assert_eq!(counts[0], ([0, 0, 0, 0], "1".to_owned()));
        assert_eq!(counts[13], ([1, 1, 2, 3], "217".to_owned()));
        let total: u64 = counts.iter().map(|(_, c)| c.parse::<u64>().unwrap()).sum();
        assert_eq!(total, 512);

        let mut c = ptr::null_mut();
        assert_eq!(mdswe_table_get(t, [0, 1, 2, 2].as_ptr(), 4, &mut c), MdsweStatus::Ok);
        assert_eq!(take(c), "21");
        assert_eq!(mdswe_table_total(t, &mut c), MdsweStatus::Ok);
        assert_eq!(take(c), "512");

        let mut buf = [0usize; 2];
        let mut c = ptr::null_mut();
        assert_eq!(mdswe_table_entry(t, 0, buf.as_mut_ptr(), 2, &mut c), MdsweStatus::BufferTooSmall);
        assert_eq!(mdswe_table_entry(t, 14, buf.as_mut_ptr(), 4, &mut c), MdsweStatus::InvalidArgument);
        mdswe_table_free(t);
        mdswe_code_free(code);
    }
}

#[test]
fn brute_force_and_json_round_trip() {
    let code = spec("rs:8:7:3");
    let closed = pwgf(code, &[3, 4]);
    unsafe {
        let mut brute = ptr::null_mut();
        assert_eq!(mdswe_brute_force(code, [3usize, 4].as_ptr(), 2, 0, &mut brute), MdsweStatus::Ok);
        assert!(mdswe_table_equal(closed, brute));

        let mut json = ptr::null_mut();
        assert_eq!(mdswe_table_to_json(brute, &mut json), MdsweStatus::Ok);
        let text = take(json);
        assert!(text.contains("\"partition\""));
        let c = CString::new(text).unwrap();
        let mut back = ptr::null_mut();
        assert_eq!(mdswe_table_from_json(c.as_ptr(), &mut back), MdsweStatus::Ok);
        assert!(mdswe_table_equal(back, closed));

        let mut t = ptr::null_mut();
        assert_eq!(mdswe_brute_force(code, [3usize, 4].as_ptr(), 2, 100, &mut t), MdsweStatus::Budget);
        assert!(t.is_null());
        assert!(last_error().contains("budget"));

        for h in [closed, brute, back] {
            mdswe_table_free(h);
        }
        mdswe_code_free(code);
    }
}

#[test]
fn macwilliams_matches_dual_enumerator() {
    let code = spec("rs:8:7:3");
    let t = pwgf(code, &[3, 4]);
    unsafe {
        let mut dual_code = ptr::null_mut();
        assert_eq!(mdswe_code_dual(code, &mut dual_code), MdsweStatus::Ok);
        assert_eq!(mdswe_code_dimension(dual_code), 4);
        assert!(mdswe_code_is_mds(dual_code));
        let direct = pwgf(dual_code, &[3, 4]);
        let mut via = ptr::null_mut();
        assert_eq!(mdswe_macwilliams(t, 8, 3, &mut via), MdsweStatus::Ok);
        assert!(mdswe_table_equal(direct, via));
        for h in [t, direct, via] {
            mdswe_table_free(h);
        }
        mdswe_code_free(dual_code);
        mdswe_code_free(code);
    }
}

#[test]
fn generator_codes_and_property_a() {
    // binary [5,3] code whose coordinates carry unequal weight
    let rows: [u32; 15] = [1, 0, 0, 1, 1, 0, 1, 0, 0, 1, 0, 0, 1, 0, 1];
    let mut code = ptr::null_mut();
    unsafe {
        assert_eq!(mdswe_code_from_generator(2, 3, 5, rows.as_ptr(), &mut code), MdsweStatus::Ok);
        assert!(!mdswe_code_is_mds(code));
        let mut t = ptr::null_mut();
        assert_eq!(mdswe_pwgf(code, ptr::null(), 0, &mut t), MdsweStatus::NotMds);
        let (mut holds, mut witnesses) = (true, 0usize);
        assert_eq!(mdswe_property_a(code, 0, &mut holds, &mut witnesses), MdsweStatus::Ok);
        assert!(!holds);
        assert!(witnesses > 0);
        mdswe_code_free(code);

        let rm = spec("rm1:3");
        assert_eq!(mdswe_property_a(rm, 0, &mut holds, ptr::null_mut()), MdsweStatus::Ok);
        assert!(holds);
        mdswe_code_free(rm);

        let dependent: [u32; 4] = [1, 1, 1, 1];
        assert_eq!(mdswe_code_from_generator(2, 2, 2, dependent.as_ptr(), &mut code), MdsweStatus::Code);
    }
}

#[test]
fn bounded_distance_probabilities() {
    let code = spec("rs:16:15:11");
    unsafe {
        let (mut cep, mut sep) = (0.0, 0.0);
        assert_eq!(mdswe_cep_bm(code, 1e-2, &mut cep), MdsweStatus::Ok);
        assert_eq!(mdswe_sep_bm(code, 1e-2, &mut sep), MdsweStatus::Ok);
        assert!(0.0 < sep && sep <= cep && cep < 1.0, "{cep} {sep}");
        let mut zero = 1.0;
        assert_eq!(mdswe_cep_bm(code, 0.0, &mut zero), MdsweStatus::Ok);
        assert_eq!(zero, 0.0);
        assert_eq!(mdswe_cep_bm(code, 1.5, &mut zero), MdsweStatus::InvalidArgument);

        let (mut pb, mut ps) = (0.0, 0.0);
        assert_eq!(mdswe_channel(6.0, 15, 11, 4, &mut pb, &mut ps), MdsweStatus::Ok);
        assert!(pb < ps && ps < 4.0 * pb);
        assert_eq!(mdswe_channel(6.0, 15, 16, 4, &mut pb, &mut ps), MdsweStatus::InvalidArgument);
        mdswe_code_free(code);
    }
}

#[test]
fn errors_are_reported_and_cleared() {
    let mut code = ptr::null_mut();
    unsafe {
        let bad = CString::new("rs:8:7").unwrap();
        assert_eq!(mdswe_code_from_spec(bad.as_ptr(), &mut code), MdsweStatus::Parse);
        assert!(code.is_null());
        assert!(!last_error().is_empty());
        let big = CString::new("rs:8:9:3").unwrap();
        assert_eq!(mdswe_code_from_spec(big.as_ptr(), &mut code), MdsweStatus::Code);
        let q6 = CString::new("rs:6:5:3").unwrap();
        assert_eq!(mdswe_code_from_spec(q6.as_ptr(), &mut code), MdsweStatus::Field);
        assert_eq!(mdswe_code_from_spec(ptr::null(), &mut code), MdsweStatus::NullPointer);
        assert_eq!(mdswe_code_from_spec(bad.as_ptr(), ptr::null_mut()), MdsweStatus::NullPointer);

        let code = spec("rs:8:7:3");
        assert!(mdswe_last_error().is_null());
        let mut t = ptr::null_mut();
        assert_eq!(mdswe_pwgf(code, [3usize, 3].as_ptr(), 2, &mut t), MdsweStatus::Partition);
        assert!(last_error().contains("length 7"));

        // NULL handles are tolerated by the accessors and destructors
        assert_eq!(mdswe_code_length(ptr::null()), 0);
        assert_eq!(mdswe_table_len(ptr::null()), 0);
        assert!(!mdswe_table_equal(ptr::null(), ptr::null()));
        mdswe_table_free(ptr::null_mut());
        mdswe_code_free(ptr::null_mut());
        mdswe_string_free(ptr::null_mut());
        mdswe_code_free(code);
    }
}

#[test]
fn error_state_is_per_thread() {
    let bad = CString::new("nope").unwrap();
    let mut code = ptr::null_mut();
    assert_eq!(unsafe { mdswe_code_from_spec(bad.as_ptr(), &mut code) }, MdsweStatus::Parse);
    std::thread::spawn(|| assert!(mdswe_last_error().is_null())).join().unwrap();
    assert!(!last_error().is_empty());
}

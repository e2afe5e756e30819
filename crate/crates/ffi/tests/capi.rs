use std::ffi::{CStr, CString};
use std::ptr;

use multilru_ffi::*;

fn last_error() -> String {
    let mut buf = vec![0 as std::ffi::c_char; 256];
    let n = unsafe { mlru_last_error(buf.as_mut_ptr(), buf.len()) };
    assert!(n > 0);
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
}

#[test]
fn catalogue_and_bound() {
    unsafe {
        let mut cat = ptr::null_mut();
        assert_eq!(mlru_catalogue_zipf(3, 1.0, &mut cat), MlruStatus::Ok);
        assert_eq!(mlru_catalogue_len(cat), 3);
        let mut prof = ptr::null_mut();
        let pmf = [0.0, 1.0];
        assert_eq!(mlru_profile_from_pmf(pmf.as_ptr(), 2, &mut prof), MlruStatus::Ok);
        let mut bound = 0.0;
        assert_eq!(mlru_hit_upper_bound(cat, prof, 1, &mut bound), MlruStatus::Ok);
        assert!((bound - 6.0 / 11.0).abs() < 1e-12);
        let mut head = 0.0;
        assert_eq!(mlru_catalogue_head_mass(cat, 1, &mut head), MlruStatus::Ok);
        assert_eq!(head, bound);
        mlru_profile_free(prof);
        mlru_catalogue_free(cat);
    }
}

#[test]
fn invalid_parameters_set_error() {
    unsafe {
        let mut cat = ptr::null_mut();
        assert_eq!(mlru_catalogue_zipf(0, 0.8, &mut cat), MlruStatus::InvalidParameter);
        assert!(cat.is_null());
        assert!(!last_error().is_empty());

        let mut prof = ptr::null_mut();
        assert_eq!(mlru_profile_ppp(0.5, 0.0, 50, &mut prof), MlruStatus::InvalidParameter);
        assert!(last_error().contains("radius"));

        let mut x = 0.0;
        assert_eq!(mlru_profile_mean(ptr::null(), &mut x), MlruStatus::NullPointer);
        assert_eq!(mlru_catalogue_zipf(10, 0.8, ptr::null_mut()), MlruStatus::NullPointer);
    }
}

#[test]
fn profile_and_che() {
    unsafe {
        let mut cat = ptr::null_mut();
        mlru_catalogue_zipf(1000, 0.8, &mut cat);
        let mut prof = ptr::null_mut();
        assert_eq!(mlru_profile_ppp(0.5, 1.13, 50, &mut prof), MlruStatus::Ok);
        let mut mean = 0.0;
        mlru_profile_mean(prof, &mut mean);
        assert!((mean - 2.006).abs() < 1e-3);

        let (mut one, mut all, mut single) = (0.0, 0.0, 0.0);
        assert_eq!(mlru_che_multi_one(cat, 0.023, 2.0, prof, 10, &mut one), MlruStatus::Ok);
        assert_eq!(mlru_che_multi_all(cat, 0.023, 1.13, prof, 10, &mut all), MlruStatus::Ok);
        assert_eq!(mlru_che_single(cat, 1.0, 10, &mut single), MlruStatus::Ok);
        assert!(one > all && all > 0.0 && single > 0.0);

        let mut uniform = ptr::null_mut();
        mlru_catalogue_zipf(2, 0.0, &mut uniform);
        let (mut two_one, mut two_all) = (0.0, 0.0);
        mlru_two_cache(MlruTwoCache::One, uniform, 1.0, 1.0, 1, &mut two_one);
        mlru_two_cache(MlruTwoCache::All, uniform, 1.0, 1.0, 1, &mut two_all);
        assert!((two_one - 0.75).abs() < 1e-9);
        assert!((two_all - 0.5).abs() < 1e-9);

        mlru_catalogue_free(uniform);
        mlru_profile_free(prof);
        mlru_catalogue_free(cat);
    }
}

#[test]
fn inventory_is_lru() {
    unsafe {
        let mut inv = ptr::null_mut();
        assert_eq!(mlru_inventory_new(2, &mut inv), MlruStatus::Ok);
        let (mut hit, mut evicted) = (false, 0i64);
        for (object, want_hit, want_evicted) in [(1, false, -1), (2, false, -1), (1, true, -1), (3, false, 2)] {
            assert_eq!(
                mlru_inventory_request(inv, object, &mut hit, &mut evicted),
                MlruStatus::Ok
            );
            assert_eq!((hit, evicted), (want_hit, want_evicted));
        }
        assert_eq!(mlru_inventory_len(inv), 2);
        assert!(mlru_inventory_contains(inv, 1));
        assert!(!mlru_inventory_contains(inv, 2));
        let mut objects = [0u32; 4];
        assert_eq!(mlru_inventory_snapshot(inv, objects.as_mut_ptr(), 4), 2);
        assert_eq!(&objects[..2], &[3, 1]);
        mlru_inventory_free(inv);

        let mut bad = ptr::null_mut();
        assert_eq!(mlru_inventory_new(0, &mut bad), MlruStatus::InvalidParameter);
    }
}

#[test]
fn experiment_round_trip() {
    let toml = CString::new(
        r#"
[geometry]
radius = 1.13
width = 6.0
height = 6.0
[traffic]
duration = 20000.0
catalogue_size = 500
[cache]
k = 10
[run]
policies = ["single-lru", "multi-lru-one"]
replications = 2
"#,
    )
    .unwrap();
    unsafe {
        let mut rep = ptr::null_mut();
        assert_eq!(mlru_experiment_run(toml.as_ptr(), &mut rep), MlruStatus::Ok);
        assert_eq!(mlru_report_len(rep), 2);
        let name = mlru_report_policy(rep, 1);
        assert_eq!(CStr::from_ptr(name).to_str().unwrap(), "multi-lru-one");
        mlru_string_free(name);
        assert!(mlru_report_policy(rep, 2).is_null());
        let (mut mean, mut ci) = (0.0, 0.0);
        assert_eq!(mlru_report_hit(rep, 0, &mut mean, &mut ci), MlruStatus::Ok);
        assert!(mean > 0.0 && mean < 1.0 && ci.is_finite());
        assert_eq!(
            mlru_report_hit(rep, 5, &mut mean, &mut ci),
            MlruStatus::InvalidParameter
        );
        let mut json = ptr::null_mut();
        assert_eq!(mlru_report_json(rep, &mut json), MlruStatus::Ok);
        assert!(CStr::from_ptr(json).to_str().unwrap().contains("\"reports\""));
        mlru_string_free(json);
        mlru_report_free(rep);
    }
}

#[test]
fn bad_config_is_reported() {
    let toml = CString::new("[geometry]\nnot_a_field = 1\n").unwrap();
    let mut rep = ptr::null_mut();
    let status = unsafe { mlru_experiment_run(toml.as_ptr(), &mut rep) };
    assert_eq!(status, MlruStatus::Config);
    assert!(rep.is_null());
    assert!(!last_error().is_empty());
    assert_eq!(
        unsafe { mlru_experiment_run(ptr::null(), &mut rep) },
        MlruStatus::NullPointer
    );
}

#[test]
fn header_is_generated() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/multilru.h")).unwrap();
    for symbol in [
        "mlru_experiment_run",
        "mlru_last_error",
        "MLRU_STATUS_OK",
        "typedef struct MlruReport",
    ] {
        assert!(header.contains(symbol), "{symbol} missing from header");
    }
}

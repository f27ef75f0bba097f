use std::ffi::CStr;
use std::ptr;

use hyperzoom_ffi::*;

fn pt(u: f64, v: f64) -> HzPoint {
    HzPoint { u: [u, 0.0], v }
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(hz_last_error()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn geometry_matches_worked_values() {
    let (a, b) = (pt(0.0, 1.0), pt(2.0, 1.0));
    let mut d = 0.0;
    assert_eq!(unsafe { hz_dist(&a, &b, &mut d) }, HzStatus::Ok);
    assert!((d - 3f64.acosh()).abs() < 1e-12);

    let mut mid = pt(0.0, 1.0);
    assert_eq!(unsafe { hz_gerp(&a, &b, 0.5, &mut mid) }, HzStatus::Ok);
    assert!((mid.u[0] - 1.0).abs() < 1e-12 && (mid.v - 2f64.sqrt()).abs() < 1e-12);

    let mut l = HzVector {
        base: a,
        du: [0.0; 2],
        dv: 0.0,
    };
    assert_eq!(unsafe { hz_log_map(&a, &b, &mut l) }, HzStatus::Ok);
    let mut n = 0.0;
    assert_eq!(unsafe { hz_hnorm(&l, &mut n) }, HzStatus::Ok);
    assert!((n - d).abs() < 1e-12);
    let mut back = a;
    assert_eq!(unsafe { hz_exp_map(&l, &mut back) }, HzStatus::Ok);
    assert!((back.u[0] - 2.0).abs() < 1e-12 && (back.v - 1.0).abs() < 1e-12);

    let mut moved = l;
    assert_eq!(unsafe { hz_transport(&l, &b, &mut moved) }, HzStatus::Ok);
    assert_eq!(moved.base, b);
    let mut clipped = l;
    assert_eq!(unsafe { hz_clipvec(&l, 0.5, &mut clipped) }, HzStatus::Ok);
    unsafe { hz_hnorm(&clipped, &mut n) };
    assert!((n - 0.5).abs() < 1e-12);

    let mut g = a;
    assert_eq!(unsafe { hz_geo(&a, &b, d, &mut g) }, HzStatus::Ok);
    assert!((g.u[0] - 2.0).abs() < 1e-12);
}

#[test]
fn errors_set_status_and_message() {
    let mut d = 0.0;
    let bad = pt(0.0, -1.0);
    assert_eq!(
        unsafe { hz_dist(&bad, &pt(0.0, 1.0), &mut d) },
        HzStatus::InvalidArgument
    );
    assert!(!last_error().is_empty());
    assert_eq!(
        unsafe { hz_dist(ptr::null(), &pt(0.0, 1.0), &mut d) },
        HzStatus::NullPointer
    );
    assert!(last_error().contains("x is null"));
    assert_eq!(
        unsafe { hz_dist(&pt(0.0, 1.0), &pt(0.0, 1.0), &mut d) },
        HzStatus::Ok
    );
    assert_eq!(last_error(), "");
    let w = HzVector {
        base: pt(0.0, 1.0),
        du: [1.0, 0.0],
        dv: 0.0,
    };
    let mut out = w;
    assert_eq!(
        unsafe { hz_clipvec(&w, -1.0, &mut out) },
        HzStatus::InvalidArgument
    );
    assert!(hz_filter_config_new(0.0).is_null());
    assert!(!unsafe { CStr::from_ptr(hz_version()) }
        .to_bytes()
        .is_empty());
}

#[test]
fn filter_handle_lifecycle() {
    let t = 1.0 / 60.0;
    let cfg = hz_filter_config_default(t);
    assert!(!cfg.is_null());
    let mut f: *mut HzFilter = ptr::null_mut();
    assert_eq!(
        unsafe { hz_filter_new(cfg, &pt(0.0, 1.0), &mut f) },
        HzStatus::Ok
    );
    unsafe { hz_filter_config_free(cfg) };
    let target = pt(50.0, 0.01);
    let mut y = pt(0.0, 1.0);
    for _ in 0..600 {
        assert_eq!(unsafe { hz_filter_step(f, &target, &mut y) }, HzStatus::Ok);
    }
    let mut step = 0.0;
    unsafe { hz_filter_max_clipped_step(f, &mut step) };
    assert!(step <= t + 1e-12 && step > 0.0);
    let mut out = pt(0.0, 1.0);
    unsafe { hz_filter_output(f, &mut out) };
    assert_eq!(out, y);
    assert_eq!(unsafe { hz_filter_reset(f, &pt(1.0, 2.0)) }, HzStatus::Ok);
    unsafe { hz_filter_output(f, &mut out) };
    assert_eq!(out, pt(1.0, 2.0));
    unsafe { hz_filter_free(f) };
}

#[test]
fn one_pole_handle_follows_decay_law() {
    let t = 1.0 / 60.0;
    let cfg = hz_filter_config_new(t);
    assert_eq!(
        unsafe { hz_filter_config_add_one_pole(cfg, 6.0) },
        HzStatus::Ok
    );
    let y0 = pt(0.0, 1.0);
    let target = pt(3.0, 0.25);
    let mut f: *mut HzFilter = ptr::null_mut();
    assert_eq!(unsafe { hz_filter_new(cfg, &y0, &mut f) }, HzStatus::Ok);
    let mut d0 = 0.0;
    unsafe { hz_dist(&y0, &target, &mut d0) };
    let mut y = y0;
    for i in 1..=120 {
        unsafe { hz_filter_step(f, &target, &mut y) };
        let mut d = 0.0;
        unsafe { hz_dist(&y, &target, &mut d) };
        assert!((d - 0.9f64.powi(i) * d0).abs() < 1e-9, "step {i}");
    }
    unsafe {
        hz_filter_free(f);
        hz_filter_config_free(cfg);
    }
}

#[test]
fn invalid_configs_are_rejected() {
    let cfg = hz_filter_config_new(1.0 / 60.0);
    let mut f: *mut HzFilter = ptr::null_mut();
    assert_eq!(
        unsafe { hz_filter_new(cfg, &pt(0.0, 1.0), &mut f) },
        HzStatus::InvalidArgument
    );
    assert!(f.is_null());
    unsafe { hz_filter_config_add_two_pole(cfg, -1.0, 1.0) };
    assert_eq!(
        unsafe { hz_filter_new(cfg, &pt(0.0, 1.0), &mut f) },
        HzStatus::InvalidArgument
    );
    assert!(last_error().contains("omega0"), "{}", last_error());
    assert_eq!(
        unsafe { hz_filter_config_add_one_pole(ptr::null_mut(), 1.0) },
        HzStatus::NullPointer
    );
    unsafe {
        hz_filter_config_free(cfg);
        hz_filter_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/hyperzoom.h");
    let source = include_str!("../src/lib.rs");
    let exports: Vec<&str> = source
        .split("extern \"C\" fn ")
        .skip(1)
        .map(|s| s.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 20);
    for name in exports {
        assert!(
            header.contains(&format!("{name}(")),
            "{name} missing from header"
        );
    }
}

use hyperzoom::diagrams::{pow2ceil, DiagramConfig};
use hyperzoom::filters::{
    clipped_one_pole_step, one_pole_step, run_filter, FilterConfig, TargetSignal,
};
use hyperzoom::hyperbolic::{clipvec, dist, exp_map, gerp, log_map, transport, HPoint, HVector};
use hyperzoom::trajectory::Trajectory;
use hyperzoom::uw::{camera_from_span, visible_span, Viewport};
use proptest::prelude::*;

fn point2() -> impl Strategy<Value = HPoint<2>> {
    (-50.0..50.0f64, -50.0..50.0f64, -3.0..3.0f64)
        .prop_map(|(a, b, e)| HPoint::new([a, b], 10f64.powf(e)).unwrap())
}

/// A second point within a few altitudes of `x`.
fn pair() -> impl Strategy<Value = (HPoint<2>, HPoint<2>)> {
    (point2(), -4.0..4.0f64, -4.0..4.0f64, -3.0..3.0f64).prop_map(|(x, a, b, e)| {
        let v = x.altitude();
        let y = HPoint::new(
            [x.footprint()[0] + a * v, x.footprint()[1] + b * v],
            v * 2f64.powf(e),
        )
        .unwrap();
        (x, y)
    })
}

fn vector_at(x: HPoint<2>) -> impl Strategy<Value = HVector<2>> {
    let v = x.altitude();
    (-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64)
        .prop_map(move |(a, b, c)| HVector::new(x, [a * v, b * v], c * v).unwrap())
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #[test]
    fn dist_is_a_metric(x in point2(), y in point2(), z in point2()) {
        let (dxy, dyx) = (dist(&x, &y), dist(&y, &x));
        prop_assert!(dxy >= 0.0);
        prop_assert_eq!(dist(&x, &x), 0.0);
        prop_assert!(close(dxy, dyx, 1e-12));
        prop_assert!(dist(&x, &z) <= dxy + dist(&y, &z) + 1e-9 * (1.0 + dxy));
    }

    #[test]
    fn dist_is_invariant_under_translation_and_scaling((x, y) in pair(), s in -2.0..2.0f64, du in -10.0..10.0f64) {
        let k = 10f64.powf(s);
        let map = |p: &HPoint<2>| HPoint::new([k * (p.footprint()[0] + du), k * p.footprint()[1]], k * p.altitude()).unwrap();
        prop_assert!(close(dist(&map(&x), &map(&y)), dist(&x, &y), 1e-10));
    }

    #[test]
    fn gerp_moves_at_constant_speed((x, y) in pair(), t in 0.0..1.0f64) {
        let d = dist(&x, &y);
        prop_assert!(close(dist(&x, &gerp(&x, &y, t)), t * d, 1e-9));
        prop_assert!(close(dist(&gerp(&x, &y, t), &y), (1.0 - t) * d, 1e-9));
        prop_assert_eq!(gerp(&x, &y, 0.0), x);
    }

    #[test]
    fn log_has_length_dist((x, y) in pair()) {
        prop_assert!(close(log_map(&x, &y).hnorm(), dist(&x, &y), 1e-10));
    }

    #[test]
    fn exp_walks_hnorm((x, w) in point2().prop_flat_map(|x| (Just(x), vector_at(x)))) {
        prop_assert!(close(dist(&x, &exp_map(&w)), w.hnorm(), 1e-9));
    }

    #[test]
    fn transport_is_an_isometry((x, y) in pair(), a in -3.0..3.0f64, b in -3.0..3.0f64) {
        let v = x.altitude();
        let w = HVector::new(x, [a * v, 0.5 * a * v], b * v).unwrap();
        let moved = transport(&w, &y);
        prop_assert_eq!(*moved.base(), y);
        prop_assert!(close(moved.hnorm(), w.hnorm(), 1e-12));
    }

    #[test]
    fn clipvec_caps_and_keeps_direction((x, w) in point2().prop_flat_map(|x| (Just(x), vector_at(x))), c in 0.0..4.0f64) {
        let clipped = clipvec(&w, c);
        prop_assert!(clipped.hnorm() <= c * (1.0 + 1e-12));
        prop_assert!(clipped.hnorm() <= w.hnorm() * (1.0 + 1e-12));
        if w.hnorm() > 0.0 && clipped.hnorm() > 0.0 {
            let cos = (clipped.du()[0] * w.du()[0] + clipped.du()[1] * w.du()[1] + clipped.dv() * w.dv())
                / (clipped.euclidean_norm() * w.euclidean_norm());
            prop_assert!(cos > 1.0 - 1e-12);
        }
        prop_assert_eq!(*clipped.base(), x);
    }

    #[test]
    fn one_pole_contracts((x, target) in pair(), b in 0.0..1.0f64) {
        let mut y = x;
        let d0 = dist(&x, &target);
        one_pole_step(&mut y, &target, b);
        prop_assert!((dist(&y, &target) - (1.0 - b) * d0).abs() <= 1e-9 * (1.0 + d0));
    }

    #[test]
    fn clipped_step_respects_speed_limit(x in point2(), target in point2(), alpha in 0.1..60.0f64, c in 0.01..10.0f64) {
        let t = 1.0 / 60.0;
        let mut y = x;
        clipped_one_pole_step(&mut y, &target, alpha, c, t);
        prop_assert!(dist(&x, &y) <= t * c + 1e-12);
        prop_assert!(dist(&y, &target) <= dist(&x, &target) + 1e-9);
    }

    #[test]
    fn cascade_outputs_stay_valid((x, target) in pair(), stages in 1usize..5) {
        let cfg = FilterConfig::cascaded(6.0, stages, 1.0 / 60.0);
        let (traj, _) = run_filter(&TargetSignal::constant(target), &cfg, 1.0, Some(x)).unwrap();
        let d: Vec<f64> = traj.samples().iter().map(|p| dist(p, &target)).collect();
        prop_assert!(traj.samples().iter().all(|p| p.altitude() > 0.0 && p.footprint().iter().all(|u| u.is_finite())));
        prop_assert!(d.last().unwrap() <= &(d[0] + 1e-9));
    }

    #[test]
    fn pow2ceil_brackets(x in 1e-300..1e300f64) {
        let p = pow2ceil(x).unwrap();
        prop_assert!(p >= x && p < 2.0 * x);
        prop_assert_eq!(p.to_bits() & ((1u64 << 52) - 1), 0);
    }

    #[test]
    fn csv_round_trip_is_exact(raw in prop::collection::vec((-1e6..1e6f64, -1e6..1e6f64, 1e-6..1e6f64), 1..40)) {
        let samples: Vec<HPoint<2>> = raw.iter().map(|&(a, b, v)| HPoint::new([a, b], v).unwrap()).collect();
        let traj = Trajectory::new(1.0 / 60.0, samples).unwrap();
        let mut buf = Vec::new();
        traj.write_csv(&mut buf).unwrap();
        let back = Trajectory::<2>::read_csv(buf.as_slice()).unwrap();
        prop_assert_eq!(back.samples(), traj.samples());
    }

    #[test]
    fn span_camera_round_trip(lo in -100.0..100.0f64, w in 1e-3..1e3f64, theta in 10.0..170.0f64) {
        let viewport = Viewport::<1>::uniform(theta.to_radians()).unwrap();
        let x = camera_from_span(&[lo], &[lo + w], &viewport).unwrap();
        let (a, b) = visible_span(&x, &viewport);
        prop_assert!(close(a[0], lo, 1e-12) && close(b[0], lo + w, 1e-12));
    }

    #[test]
    fn diagram_config_round_trips_through_json(alpha in 0.01..1.0f64, r in 0.1..5.0f64) {
        let mut cfg = DiagramConfig::with_r_half(r);
        cfg.alpha_iso = alpha;
        let back: DiagramConfig = serde_json::from_str(&serde_json::to_string(&cfg).unwrap()).unwrap();
        prop_assert_eq!(back, cfg);
    }
}

use super::{vecn, GeometryError, HPoint};

/// Footprint separations at or below `VERTICAL_EPS * max(v0, v1)` are
/// treated as a vertical geodesic (pure zoom).
pub const VERTICAL_EPS: f64 = 1e-12;

/// The geodesic through two points, with the quantities shared by the
/// distance, interpolation, logarithmic and transport formulas.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Chord<const N: usize> {
    /// Vertical line; `k` is the sign of `v1 - v0`.
    Vertical { k: f64, length: f64 },
    /// Semicircle meeting altitude zero orthogonally. `dir` is the unit
    /// footprint direction from the start to the end point.
    Arc { dir: [f64; N], r0: f64, r1: f64 },
}

impl<const N: usize> Chord<N> {
    pub(crate) fn between(x: &HPoint<N>, y: &HPoint<N>) -> Self {
        let (v0, v1) = (x.altitude(), y.altitude());
        let delta = vecn::sub(y.footprint(), x.footprint());
        let d = vecn::norm(&delta);
        if d <= VERTICAL_EPS * v0.max(v1) {
            let k = if v1 > v0 {
                1.0
            } else if v1 < v0 {
                -1.0
            } else {
                0.0
            };
            return Chord::Vertical {
                k,
                length: (v1 / v0).ln().abs(),
            };
        }
        // v1^2 - v0^2 factored to avoid cancellation when v0 ~ v1.
        let dv2 = (v1 - v0) * (v1 + v0);
        let d2 = d * d;
        let r0 = ((dv2 + d2) / (-2.0 * v0 * d)).asinh();
        let r1 = ((dv2 - d2) / (-2.0 * v1 * d)).asinh();
        Chord::Arc {
            dir: vecn::scale(&delta, 1.0 / d),
            r0,
            r1,
        }
    }

    #[inline]
    pub(crate) fn length(&self) -> f64 {
        match *self {
            Chord::Vertical { length, .. } => length,
            Chord::Arc { r0, r1, .. } => r1 - r0,
        }
    }

    /// Point at arc length `s` from `x` (which must be the chord's start).
    pub(crate) fn point_at(&self, x: &HPoint<N>, s: f64) -> HPoint<N> {
        let (u0, v0) = (x.footprint(), x.altitude());
        match *self {
            Chord::Vertical { k, .. } => HPoint::from_parts(*u0, v0 * (s * k).exp()),
            Chord::Arc { dir, r0, .. } => {
                let (u, v) = arc_point(v0, r0, s);
                HPoint::from_parts(vecn::axpy(u0, u, &dir), v)
            }
        }
    }
}

/// Footprint offset along the arc direction and altitude after travelling
/// `s` along an arc that leaves altitude `v0` with parameter `r0`.
#[inline]
pub(crate) fn arc_point(v0: f64, r0: f64, s: f64) -> (f64, f64) {
    let c = (s + r0).cosh();
    (v0 * s.sinh() / c, v0 * cosh_ratio(r0, s + r0))
}

/// `cosh(a) / cosh(b)` without overflow for large arguments.
#[inline]
pub(crate) fn cosh_ratio(a: f64, b: f64) -> f64 {
    let (a, b) = (a.abs(), b.abs());
    (a - b).exp() * (1.0 + (-2.0 * a).exp()) / (1.0 + (-2.0 * b).exp())
}

/// Hyperbolic distance between two views.
pub fn dist<const N: usize>(x: &HPoint<N>, y: &HPoint<N>) -> f64 {
    Chord::between(x, y).length()
}

/// The point reached by travelling hyperbolic arc length `s` from `x`
/// along the geodesic towards `y`. Values of `s` outside `[0, dist(x, y)]`
/// continue along the same geodesic.
pub fn geo<const N: usize>(
    x: &HPoint<N>,
    y: &HPoint<N>,
    s: f64,
) -> Result<HPoint<N>, GeometryError> {
    if s == 0.0 {
        return Ok(*x);
    }
    let chord = Chord::between(x, y);
    if chord.length() == 0.0 {
        return Err(GeometryError::DegenerateGeodesic);
    }
    Ok(chord.point_at(x, s))
}

/// Geodesic interpolation: `x` at `t = 0`, `y` at `t = 1`.
pub fn gerp<const N: usize>(x: &HPoint<N>, y: &HPoint<N>, t: f64) -> HPoint<N> {
    let chord = Chord::between(x, y);
    let len = chord.length();
    if len == 0.0 || t == 0.0 {
        return *x;
    }
    chord.point_at(x, t * len)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{E, SQRT_2};

    fn pt(u: f64, v: f64) -> HPoint<1> {
        HPoint::new([u], v).unwrap()
    }

    #[test]
    fn dist_examples() {
        let x = pt(0.3, 1.7);
        assert_eq!(dist(&x, &x), 0.0);
        assert_relative_eq!(dist(&pt(0.0, 1.0), &pt(0.0, E)), 1.0, epsilon = 1e-15);
        assert_relative_eq!(
            dist(&pt(0.0, 1.0), &pt(2.0, 1.0)),
            1.762747174039086,
            epsilon = 1e-12
        );
    }

    #[test]
    fn geo_endpoints_and_midpoint() {
        let (x, y) = (pt(0.0, 1.0), pt(2.0, 1.0));
        assert_eq!(geo(&x, &y, 0.0).unwrap(), x);
        let end = geo(&x, &y, dist(&x, &y)).unwrap();
        assert_relative_eq!(end.footprint()[0], 2.0, epsilon = 1e-12);
        assert_relative_eq!(end.altitude(), 1.0, epsilon = 1e-12);
        let mid = geo(&x, &y, 1f64.asinh()).unwrap();
        assert_relative_eq!(mid.footprint()[0], 1.0, epsilon = 1e-12);
        assert_relative_eq!(mid.altitude(), SQRT_2, epsilon = 1e-12);
    }

    #[test]
    fn geo_degenerate() {
        let x = pt(1.0, 2.0);
        assert_eq!(geo(&x, &x, 0.0).unwrap(), x);
        assert_eq!(geo(&x, &x, 0.5), Err(GeometryError::DegenerateGeodesic));
    }

    #[test]
    fn gerp_examples() {
        let (x, y) = (pt(0.0, 1.0), pt(2.0, 1.0));
        assert_eq!(gerp(&x, &y, 0.0), x);
        assert_eq!(gerp(&x, &x, 0.37), x);
        let mid = gerp(&x, &y, 0.5);
        assert_relative_eq!(mid.footprint()[0], 1.0, epsilon = 1e-12);
        assert_relative_eq!(mid.altitude(), SQRT_2, epsilon = 1e-12);
        let end = gerp(&x, &y, 1.0);
        assert_relative_eq!(end.footprint()[0], 2.0, epsilon = 1e-12);
    }

    #[test]
    fn vertical_geodesic_extrapolates() {
        let (x, y) = (pt(0.0, 1.0), pt(0.0, 2.0));
        let p = gerp(&x, &y, 2.0);
        assert_relative_eq!(p.altitude(), 4.0, epsilon = 1e-12);
        let q = gerp(&x, &y, -1.0);
        assert_relative_eq!(q.altitude(), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn extreme_altitude_ratio() {
        let x = pt(0.0, 1e-3);
        let y = pt(1.0, 1e3);
        let s = dist(&x, &y);
        let oracle = (1.0 + (1.0 + (1e3f64 - 1e-3).powi(2)) / 2.0).acosh();
        assert_relative_eq!(s, oracle, max_relative = 1e-12);
        let end = geo(&x, &y, s).unwrap();
        assert_relative_eq!(end.footprint()[0], 1.0, max_relative = 1e-9);
        assert_relative_eq!(end.altitude(), 1e3, max_relative = 1e-9);
        let back = geo(&y, &x, s).unwrap();
        assert_relative_eq!(back.footprint()[0], 0.0, epsilon = 1e-9);
        assert_relative_eq!(back.altitude(), 1e-3, max_relative = 1e-9);
    }

    #[test]
    fn cosh_ratio_matches_direct_and_survives_overflow() {
        for &(a, b) in &[(0.0, 0.0), (1.0, -2.0), (-3.5, 0.25), (10.0, 9.0)] {
            assert_relative_eq!(
                cosh_ratio(a, b),
                f64::cosh(a) / f64::cosh(b),
                max_relative = 1e-14
            );
        }
        assert_relative_eq!(cosh_ratio(800.0, 799.0), 1f64.exp(), max_relative = 1e-12);
    }
}

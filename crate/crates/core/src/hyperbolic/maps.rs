use super::geodesic::{arc_point, Chord};
use super::{vecn, HPoint, HVector, VERTICAL_EPS};

/// The point reached by following the geodesic with initial velocity `x`
/// for unit time, i.e. travelling `|x|` from its base.
pub fn exp_map<const N: usize>(x: &HVector<N>) -> HPoint<N> {
    let base = x.base();
    let (u0, v0) = (base.footprint(), base.altitude());
    let nu = vecn::norm(x.du());
    let dv = x.dv();
    if nu <= VERTICAL_EPS * dv.abs() || x.is_zero() {
        // Vertical: inverse of the logarithmic map's `dv = v0 ln(v1 / v0)`.
        return HPoint::from_parts(*u0, v0 * (dv / v0).exp());
    }
    let s = x.hnorm();
    let r0 = -(dv / nu).asinh();
    let (along, v1) = arc_point(v0, r0, s);
    HPoint::from_parts(vecn::axpy(u0, along / nu, x.du()), v1)
}

/// Initial velocity of the unit-time geodesic from `x` to `y`; its
/// hyperbolic magnitude is `dist(x, y)`.
pub fn log_map<const N: usize>(x: &HPoint<N>, y: &HPoint<N>) -> HVector<N> {
    let v0 = x.altitude();
    match Chord::between(x, y) {
        Chord::Vertical { .. } => HVector::from_parts(*x, [0.0; N], v0 * (y.altitude() / v0).ln()),
        Chord::Arc { dir, r0, r1 } => {
            let s = r1 - r0;
            let du = vecn::scale(&dir, v0 * s / r0.cosh());
            HVector::from_parts(*x, du, -v0 * s * r0.tanh())
        }
    }
}

/// Moves `x` to base point `y` by parallel transport along the geodesic
/// between the two bases. Preserves the hyperbolic magnitude.
pub fn transport<const N: usize>(x: &HVector<N>, y: &HPoint<N>) -> HVector<N> {
    let from = x.base();
    let ratio = y.altitude() / from.altitude();
    match Chord::between(from, y) {
        Chord::Vertical { .. } => {
            HVector::from_parts(*y, vecn::scale(x.du(), ratio), x.dv() * ratio)
        }
        Chord::Arc { dir, r0, r1 } => {
            // Rotate the in-plane part (along-chord, altitude) as a complex
            // number by theta1 * conj(theta0), theta_i = tanh r_i + i sech r_i.
            let par = vecn::dot(x.du(), &dir);
            let perp = vecn::axpy(x.du(), -par, &dir);
            let (a0, b0) = (r0.tanh(), 1.0 / r0.cosh());
            let (a1, b1) = (r1.tanh(), 1.0 / r1.cosh());
            // theta1 * conj(theta0)
            let (rot_re, rot_im) = (a1 * a0 + b1 * b0, b1 * a0 - a1 * b0);
            let (z_re, z_im) = (par, x.dv());
            let re = rot_re * z_re - rot_im * z_im;
            let im = rot_re * z_im + rot_im * z_re;
            let du = std::array::from_fn(|i| ratio * (perp[i] + re * dir[i]));
            HVector::from_parts(*y, du, ratio * im)
        }
    }
}

/// Covariant derivative of a vector field `x(t)` along a curve with
/// position `x.base()` and velocity `(du_dt, dv_dt)`; `(dx_du, dx_dv)` is the
/// ordinary time derivative of the field's components.
pub fn covariant_derivative<const N: usize>(
    du_dt: &[f64; N],
    dv_dt: f64,
    x: &HVector<N>,
    dx_du: &[f64; N],
    dx_dv: f64,
) -> HVector<N> {
    let v = x.base().altitude();
    let (cu, cv) = (x.du(), x.dv());
    let du = std::array::from_fn(|i| dx_du[i] - (dv_dt * cu[i] + du_dt[i] * cv) / v);
    let dv = dx_dv + (vecn::dot(du_dt, cu) - dv_dt * cv) / v;
    HVector::from_parts(*x.base(), du, dv)
}

/// Limits the hyperbolic magnitude of `x` to `c`.
pub fn clipvec<const N: usize>(x: &HVector<N>, c: f64) -> HVector<N> {
    let m = x.hnorm();
    if m < c {
        *x
    } else if c <= 0.0 {
        HVector::zero(*x.base())
    } else {
        x.scaled(c / m)
    }
}

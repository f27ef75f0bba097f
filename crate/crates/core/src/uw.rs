//! Conversions between the hyperbolic model and van Wijk-Nuij u,w-space,
//! viewport angles, and the pseudosphere embedding.
//!
//! Hyperbolic distance is the canonical unit; the u,w-space parameter `rho`
//! only enters through the `rho^2` scale factors below.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hyperbolic::HPoint;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum UwError {
    #[error("{name} must be positive, got {value}")]
    NotPositive { name: &'static str, value: f64 },
    #[error("angle of view must lie in (0, pi), got {0}")]
    AngleOutOfRange(f64),
    #[error("empty or inverted span on axis {axis}: [{lo}, {hi}]")]
    EmptySpan { axis: usize, lo: f64, hi: f64 },
    #[error("pseudosphere is only defined for v >= 1, got {0}")]
    PseudosphereDomain(f64),
}

fn positive(name: &'static str, value: f64) -> Result<f64, UwError> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(UwError::NotPositive { name, value })
    }
}

/// u,w-space trade-off parameter together with its equivalent angle of view.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UwParams {
    rho: f64,
    theta: f64,
}

impl UwParams {
    pub fn new(rho: f64) -> Result<Self, UwError> {
        Ok(Self {
            rho,
            theta: theta_from_rho(rho)?,
        })
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// `w = rho^2 v`
pub fn v_to_w(v: f64, rho: f64) -> Result<f64, UwError> {
    Ok(rho_sq(rho)? * positive("v", v)?)
}

/// `v = w / rho^2`
pub fn w_to_v(w: f64, rho: f64) -> Result<f64, UwError> {
    Ok(positive("w", w)? / rho_sq(rho)?)
}

/// Hyperbolic distance from a u,w-space distance: `s = rho^2 sigma`.
pub fn hyperbolic_dist_from_uw(sigma: f64, rho: f64) -> Result<f64, UwError> {
    Ok(rho_sq(rho)? * sigma)
}

/// u,w-space distance from a hyperbolic distance: `sigma = s / rho^2`.
pub fn uw_dist_from_hyperbolic(s: f64, rho: f64) -> Result<f64, UwError> {
    Ok(s / rho_sq(rho)?)
}

fn rho_sq(rho: f64) -> Result<f64, UwError> {
    let rho = positive("rho", rho)?;
    Ok(rho * rho)
}

/// Angle of view equivalent to `rho`: `theta = 2 atan(rho^2 / 2)`.
pub fn theta_from_rho(rho: f64) -> Result<f64, UwError> {
    Ok(2.0 * (rho_sq(rho)? / 2.0).atan())
}

pub fn rho_from_theta(theta: f64) -> Result<f64, UwError> {
    check_angle(theta)?;
    Ok((2.0 * (theta / 2.0).tan()).sqrt())
}

fn check_angle(theta: f64) -> Result<f64, UwError> {
    if theta > 0.0 && theta < PI {
        Ok(theta)
    } else {
        Err(UwError::AngleOutOfRange(theta))
    }
}

/// Per-axis angles of view of the screen. Screen space on each axis is
/// `[-r_half, r_half]` with `r_half = tan(theta / 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ViewportRaw<N>", into = "ViewportRaw<N>")]
pub struct Viewport<const N: usize> {
    theta: [f64; N],
}

#[derive(Serialize, Deserialize)]
struct ViewportRaw<const N: usize> {
    theta_deg: Vec<f64>,
}

impl<const N: usize> TryFrom<ViewportRaw<N>> for Viewport<N> {
    type Error = String;

    fn try_from(raw: ViewportRaw<N>) -> Result<Self, String> {
        let deg: [f64; N] = match raw.theta_deg.len() {
            1 => [raw.theta_deg[0]; N],
            n if n == N => std::array::from_fn(|i| raw.theta_deg[i]),
            n => return Err(format!("theta_deg has {n} entries, expected 1 or {N}")),
        };
        Viewport::new(deg.map(f64::to_radians)).map_err(|e| e.to_string())
    }
}

impl<const N: usize> From<Viewport<N>> for ViewportRaw<N> {
    fn from(v: Viewport<N>) -> Self {
        ViewportRaw {
            theta_deg: v.theta.iter().map(|t| t.to_degrees()).collect(),
        }
    }
}

impl<const N: usize> Default for Viewport<N> {
    /// A 90° camera, equivalent to `rho = sqrt(2)`.
    fn default() -> Self {
        Self {
            theta: [PI / 2.0; N],
        }
    }
}

impl<const N: usize> Viewport<N> {
    pub fn new(theta: [f64; N]) -> Result<Self, UwError> {
        for &t in &theta {
            check_angle(t)?;
        }
        Ok(Self { theta })
    }

    pub fn uniform(theta: f64) -> Result<Self, UwError> {
        Self::new([theta; N])
    }

    pub fn theta(&self) -> &[f64; N] {
        &self.theta
    }

    pub fn r_half(&self) -> [f64; N] {
        self.theta.map(half_extent)
    }
}

/// `tan(theta / 2)`, exactly 1 for a 90° angle of view.
pub fn half_extent(theta: f64) -> f64 {
    let h = theta / 2.0;
    if h == std::f64::consts::FRAC_PI_4 {
        1.0
    } else {
        h.tan()
    }
}

/// Camera whose visible world rectangle covers `[lo, hi]`.
///
/// The footprint is the midpoint; on screens with several axes the altitude
/// is the largest one required, so the whole span stays visible.
pub fn camera_from_span<const N: usize>(
    lo: &[f64; N],
    hi: &[f64; N],
    viewport: &Viewport<N>,
) -> Result<HPoint<N>, UwError> {
    let r_half = viewport.r_half();
    let mut v = 0.0f64;
    for axis in 0..N {
        if !(lo[axis] < hi[axis]) || !lo[axis].is_finite() || !hi[axis].is_finite() {
            return Err(UwError::EmptySpan {
                axis,
                lo: lo[axis],
                hi: hi[axis],
            });
        }
        v = v.max(0.5 * (hi[axis] - lo[axis]) / r_half[axis]);
    }
    let u = std::array::from_fn(|i| 0.5 * (lo[i] + hi[i]));
    HPoint::new(u, v).map_err(|_| UwError::NotPositive {
        name: "span",
        value: v,
    })
}

/// World span `(lo, hi)` visible from camera `x`.
pub fn visible_span<const N: usize>(x: &HPoint<N>, viewport: &Viewport<N>) -> ([f64; N], [f64; N]) {
    let r_half = viewport.r_half();
    (x.world_point(&r_half.map(|r| -r)), x.world_point(&r_half))
}

/// Pseudosphere embedding of `(u, v)` for `v >= 1`. Periodic in `u`, so the
/// inverse is ambiguous.
pub fn pseudosphere(u: f64, v: f64) -> Result<[f64; 3], UwError> {
    if !(v >= 1.0) {
        return Err(UwError::PseudosphereDomain(v));
    }
    let a = v.acosh();
    Ok([u.cos() / v, u.sin() / v, a - a.tanh()])
}

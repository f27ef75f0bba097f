//! Geometry kernel for the Poincaré upper half-space model of camera views.
//!
//! A camera view is an [`HPoint`]: a footprint `u` (the world point at the
//! center of the screen) and an altitude `v > 0` (world units per unit of
//! screen space). The metric `ds = |dx| / v` makes geodesics the
//! perceptually cheapest zoom/pan paths.
//!
//! `N` is the number of footprint components: `HPoint<1>` is a view of a
//! one-dimensional world (the half-plane H²), `HPoint<2>` a view of a plane
//! (the half-space H³).

mod geodesic;
mod maps;
mod point;
mod vector;

pub use geodesic::{dist, geo, gerp, VERTICAL_EPS};
pub use maps::{clipvec, covariant_derivative, exp_map, log_map, transport};
pub use point::HPoint;
pub use vector::{hnorm, HVector};

use thiserror::Error;

/// View of a one-dimensional world (H²).
pub type HPoint1 = HPoint<1>;
/// View of a two-dimensional world (H³).
pub type HPoint2 = HPoint<2>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("altitude must be positive, got {0}")]
    NonPositiveAltitude(f64),
    #[error("non-finite component in {0}")]
    NonFinite(&'static str),
    #[error("degenerate geodesic: endpoints coincide")]
    DegenerateGeodesic,
}

// Small fixed-size vector helpers shared by the geometry code.
pub(crate) mod vecn {
    #[inline]
    pub fn sub<const N: usize>(a: &[f64; N], b: &[f64; N]) -> [f64; N] {
        std::array::from_fn(|i| a[i] - b[i])
    }

    #[inline]
    pub fn dot<const N: usize>(a: &[f64; N], b: &[f64; N]) -> f64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    #[inline]
    pub fn norm<const N: usize>(a: &[f64; N]) -> f64 {
        match N {
            1 => a[0].abs(),
            2 => a[0].hypot(a[1]),
            _ => dot(a, a).sqrt(),
        }
    }

    #[inline]
    pub fn scale<const N: usize>(a: &[f64; N], k: f64) -> [f64; N] {
        a.map(|x| x * k)
    }

    /// `a + k * b`
    #[inline]
    pub fn axpy<const N: usize>(a: &[f64; N], k: f64, b: &[f64; N]) -> [f64; N] {
        std::array::from_fn(|i| a[i] + k * b[i])
    }
}

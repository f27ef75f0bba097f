use serde::Serialize;

use super::{vecn, GeometryError, HPoint};

/// A tangent vector (camera velocity) at an explicit base point.
///
/// `du` is the footprint component and `dv` the altitude component, both in
/// world units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HVector<const N: usize> {
    base: HPoint<N>,
    du: [f64; N],
    dv: f64,
}

impl<const N: usize> HVector<N> {
    pub fn new(base: HPoint<N>, du: [f64; N], dv: f64) -> Result<Self, GeometryError> {
        if !dv.is_finite() || du.iter().any(|x| !x.is_finite()) {
            return Err(GeometryError::NonFinite("vector"));
        }
        Ok(Self { base, du, dv })
    }

    #[inline]
    pub(crate) fn from_parts(base: HPoint<N>, du: [f64; N], dv: f64) -> Self {
        Self { base, du, dv }
    }

    pub fn zero(base: HPoint<N>) -> Self {
        Self::from_parts(base, [0.0; N], 0.0)
    }

    #[inline]
    pub fn base(&self) -> &HPoint<N> {
        &self.base
    }

    #[inline]
    pub fn du(&self) -> &[f64; N] {
        &self.du
    }

    #[inline]
    pub fn dv(&self) -> f64 {
        self.dv
    }

    /// Euclidean length of `(du, dv)`.
    pub fn euclidean_norm(&self) -> f64 {
        match N {
            1 => self.du[0].hypot(self.dv),
            _ => (vecn::dot(&self.du, &self.du) + self.dv * self.dv).sqrt(),
        }
    }

    /// Hyperbolic magnitude `|X| = ||X|| / v`.
    pub fn hnorm(&self) -> f64 {
        self.euclidean_norm() / self.base.altitude()
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self::from_parts(self.base, vecn::scale(&self.du, k), self.dv * k)
    }

    /// Sum of two vectors at the same base point. The base of `self` is kept.
    pub fn plus(&self, other: &Self) -> Self {
        debug_assert_eq!(self.base, other.base, "adding vectors at different bases");
        Self::from_parts(
            self.base,
            vecn::axpy(&self.du, 1.0, &other.du),
            self.dv + other.dv,
        )
    }

    pub fn is_zero(&self) -> bool {
        self.dv == 0.0 && self.du.iter().all(|&x| x == 0.0)
    }
}

impl<const N: usize> Serialize for HVector<N> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("HVector", 3)?;
        st.serialize_field("base", &self.base)?;
        st.serialize_field("du", self.du.as_slice())?;
        st.serialize_field("dv", &self.dv)?;
        st.end()
    }
}

/// Hyperbolic magnitude of `x`.
pub fn hnorm<const N: usize>(x: &HVector<N>) -> f64 {
    x.hnorm()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(u: f64, v: f64) -> HPoint<1> {
        HPoint::new([u], v).unwrap()
    }

    #[test]
    fn hnorm_examples() {
        assert_eq!(HVector::new(pt(0.0, 1.0), [1.0], 0.0).unwrap().hnorm(), 1.0);
        assert_eq!(HVector::zero(pt(4.0, 7.0)).hnorm(), 0.0);
        assert_eq!(HVector::new(pt(0.0, 5.0), [3.0], 4.0).unwrap().hnorm(), 1.0);
    }

    #[test]
    fn rejects_non_finite() {
        assert!(HVector::new(pt(0.0, 1.0), [f64::NAN], 0.0).is_err());
        assert!(HVector::new(pt(0.0, 1.0), [0.0], f64::INFINITY).is_err());
    }

    #[test]
    fn hnorm_in_three_dimensions() {
        let base = HPoint::new([0.0, 0.0], 2.0).unwrap();
        let x = HVector::new(base, [2.0, 2.0], 1.0).unwrap();
        assert!((x.hnorm() - 1.5).abs() < 1e-15);
    }
}

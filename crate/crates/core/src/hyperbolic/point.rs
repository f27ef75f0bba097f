use serde::{Deserialize, Serialize};

use super::GeometryError;

/// A camera view: footprint `u` and altitude `v > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HPoint<const N: usize> {
    u: [f64; N],
    v: f64,
}

impl<const N: usize> HPoint<N> {
    pub fn new(u: [f64; N], v: f64) -> Result<Self, GeometryError> {
        if !v.is_finite() || u.iter().any(|x| !x.is_finite()) {
            return Err(GeometryError::NonFinite("point"));
        }
        if v <= 0.0 {
            return Err(GeometryError::NonPositiveAltitude(v));
        }
        Ok(Self { u, v })
    }

    /// Builds a point from values produced by the geometry routines, which
    /// keep `v > 0` for finite inputs.
    #[inline]
    pub(crate) fn from_parts(u: [f64; N], v: f64) -> Self {
        debug_assert!(v > 0.0, "altitude {v} not positive");
        Self { u, v }
    }

    #[inline]
    pub fn footprint(&self) -> &[f64; N] {
        &self.u
    }

    #[inline]
    pub fn altitude(&self) -> f64 {
        self.v
    }

    /// Maps a screen-space point to world space: `p = v r + u`.
    pub fn world_point(&self, r: &[f64; N]) -> [f64; N] {
        std::array::from_fn(|i| self.v * r[i] + self.u[i])
    }

    /// Maps a world-space point to screen space: `r = (p - u) / v`.
    pub fn screen_point(&self, p: &[f64; N]) -> [f64; N] {
        std::array::from_fn(|i| (p[i] - self.u[i]) / self.v)
    }

    /// Translates the footprint, an isometry of the half-space.
    pub fn translated(&self, offset: &[f64; N]) -> Self {
        Self::from_parts(std::array::from_fn(|i| self.u[i] + offset[i]), self.v)
    }
}

impl HPoint<1> {
    pub fn new1(u: f64, v: f64) -> Result<Self, GeometryError> {
        Self::new([u], v)
    }
}

impl<const N: usize> Serialize for HPoint<N> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("HPoint", 2)?;
        st.serialize_field("u", self.u.as_slice())?;
        st.serialize_field("v", &self.v)?;
        st.end()
    }
}

impl<'de, const N: usize> Deserialize<'de> for HPoint<N> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            u: Vec<f64>,
            v: f64,
        }
        let raw = Raw::deserialize(d)?;
        let u: [f64; N] = raw.u.try_into().map_err(|u: Vec<f64>| {
            serde::de::Error::custom(format!(
                "footprint has {} components, expected {N}",
                u.len()
            ))
        })?;
        HPoint::new(u, raw.v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_altitude() {
        assert!(matches!(
            HPoint::new([0.0], 0.0),
            Err(GeometryError::NonPositiveAltitude(_))
        ));
        assert!(HPoint::new([0.0], -1.0).is_err());
        assert!(matches!(
            HPoint::new([f64::NAN], 1.0),
            Err(GeometryError::NonFinite(_))
        ));
        assert!(HPoint::new([0.0, 0.0], f64::INFINITY).is_err());
    }

    #[test]
    fn screen_world_mapping() {
        let x = HPoint::new([3.0], 2.0).unwrap();
        assert_eq!(x.world_point(&[0.5]), [4.0]);
        assert_eq!(x.world_point(&[0.0]), [3.0]);
        assert_eq!(x.screen_point(&[4.0]), [0.5]);
    }

    #[test]
    fn json_roundtrip_checks_dimension() {
        let x = HPoint::new([1.0, 2.0], 3.0).unwrap();
        let s = serde_json::to_string(&x).unwrap();
        let back: HPoint<2> = serde_json::from_str(&s).unwrap();
        assert_eq!(x, back);
        assert!(serde_json::from_str::<HPoint<1>>(&s).is_err());
        assert!(serde_json::from_str::<HPoint<1>>(r#"{"u":[0],"v":-2}"#).is_err());
    }
}

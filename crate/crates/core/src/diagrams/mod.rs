//! World/screen diagrams: screen bounds over time, optical pathlines,
//! optical-flow metrics and SVG rendering.

mod metrics;
mod pathlines;
mod svg;

pub use metrics::{
    discontinuity_scan, rms_flow, rms_flow_series, screen_bounds_series, track_point,
    velocity_jumps, BoundsSeries, Jump, DEFAULT_JUMP_THRESHOLD, MIN_SCALE, SCALE_WINDOW,
};
pub use pathlines::{in_c_alpha, pathlines, Pathline, PathlineSet};
pub use svg::{render_worldscreen_svg, TargetOverlay};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DiagramError {
    #[error("pow2ceil needs a positive finite argument, got {0}")]
    NotPositive(f64),
    #[error("trajectory needs at least {needed} samples, has {got}")]
    TooShort { needed: usize, got: usize },
    #[error("{field}: {message}")]
    Config {
        field: &'static str,
        message: String,
    },
}

/// `2^ceil(log2 x)`, computed exactly from the bit pattern.
pub fn pow2ceil(x: f64) -> Result<f64, DiagramError> {
    pow2ceil_exp(x).map(pow2)
}

/// Exponent `e` with `2^e = pow2ceil(x)`.
pub fn pow2ceil_exp(x: f64) -> Result<i32, DiagramError> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(DiagramError::NotPositive(x));
    }
    let (x, shift) = if x < f64::MIN_POSITIVE {
        (x * 2f64.powi(64), -64)
    } else {
        (x, 0)
    };
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i32 - 1023;
    let mantissa = bits & ((1u64 << 52) - 1);
    Ok(if mantissa == 0 { exp } else { exp + 1 } + shift)
}

/// `2^e` for any exponent representable as a normal or subnormal `f64`.
pub(crate) fn pow2(e: i32) -> f64 {
    match e {
        -1022..=1023 => f64::from_bits(((e + 1023) as u64) << 52),
        -1074..=-1023 => f64::from_bits(1u64 << (e + 1074)),
        _ if e > 0 => f64::INFINITY,
        _ => 0.0,
    }
}

/// `sqrt(v^2 + (r v' + u')^2)`, the gradient magnitude of `phi(t, r) = v(t) r + u(t)`.
pub fn grad_mag(v: f64, vprime: f64, uprime: f64, r: f64) -> f64 {
    v.hypot(r * vprime + uprime)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DiagramConfig {
    /// Pathline spacing parameter, roughly the screen-space gap between lines.
    pub alpha_iso: f64,
    pub r_lo: f64,
    pub r_hi: f64,
    /// Screen half-extent used for the bounds panel.
    pub r_half: f64,
    pub width: u32,
    pub panel_height: u32,
}

impl Default for DiagramConfig {
    fn default() -> Self {
        Self {
            alpha_iso: 0.125,
            r_lo: -1.0,
            r_hi: 1.0,
            r_half: 1.0,
            width: 640,
            panel_height: 240,
        }
    }
}

impl DiagramConfig {
    /// Screen bounds `[-r_half, r_half]` and a matching bounds panel.
    pub fn with_r_half(r_half: f64) -> Self {
        Self {
            r_lo: -r_half,
            r_hi: r_half,
            r_half,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), DiagramError> {
        let err = |field, message: String| Err(DiagramError::Config { field, message });
        if !(self.alpha_iso > 0.0 && self.alpha_iso.is_finite()) {
            return err(
                "alpha_iso",
                format!("must be positive, got {}", self.alpha_iso),
            );
        }
        if !(self.r_lo < self.r_hi && self.r_lo.is_finite() && self.r_hi.is_finite()) {
            return err(
                "r_lo",
                format!("must be below r_hi, got [{}, {}]", self.r_lo, self.r_hi),
            );
        }
        if !(self.r_half > 0.0 && self.r_half.is_finite()) {
            return err("r_half", format!("must be positive, got {}", self.r_half));
        }
        if self.width < 64 || self.panel_height < 32 {
            return err("width", "image must be at least 64x32 per panel".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow2ceil_values() {
        assert_eq!(pow2ceil(3.0).unwrap(), 4.0);
        assert_eq!(pow2ceil(4.0).unwrap(), 4.0);
        assert_eq!(pow2ceil(0.3).unwrap(), 0.5);
        assert_eq!(pow2ceil(0.25).unwrap(), 0.25);
        assert_eq!(pow2ceil(1.0).unwrap(), 1.0);
        assert_eq!(pow2ceil(1.0 + f64::EPSILON).unwrap(), 2.0);
        assert_eq!(
            pow2ceil(f64::MIN_POSITIVE / 3.0).unwrap(),
            f64::MIN_POSITIVE / 2.0
        );
        assert_eq!(pow2ceil(5e-324).unwrap(), 5e-324);
        assert!(pow2ceil(0.0).is_err());
        assert!(pow2ceil(-1.0).is_err());
        assert!(pow2ceil(f64::NAN).is_err());
    }

    #[test]
    fn pow2ceil_matches_log2_definition() {
        let mut x: f64 = 1e-6;
        while x < 1e6 {
            let expected = 2f64.powf(x.log2().ceil());
            let got = pow2ceil(x).unwrap();
            assert!(got >= x && got / 2.0 < x, "x = {x}");
            if (x.log2() - x.log2().round()).abs() > 1e-9 {
                assert_eq!(got, expected, "x = {x}");
            }
            x *= 1.37;
        }
    }

    #[test]
    fn grad_mag_cases() {
        assert_eq!(grad_mag(1.0, 0.0, 0.0, 0.3), 1.0);
        assert_eq!(grad_mag(1.0, 0.0, 1.0, -0.7), 2f64.sqrt());
        assert_eq!(grad_mag(1.0, 1.0, 0.0, 1.0), 2f64.sqrt());
    }
}

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Frame period of the reference demos, 60 frames per second.
pub const DEFAULT_PERIOD: f64 = 1.0 / 60.0;
/// Gain of every stage of the default cascade, in Hz.
pub const DEFAULT_ALPHA: f64 = 6.0;
/// Speed limit of the clipped first stage of the default cascade, in Hz.
pub const DEFAULT_SPEED_LIMIT: f64 = 1.0;

/// One filter stage. Rates are in Hz (hyperbolic distance is unitless).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum StageConfig {
    OnePole { alpha: f64 },
    ClippedOnePole { alpha: f64, c: f64 },
    TwoPole { omega0: f64, zeta: f64 },
}

impl StageConfig {
    pub fn name(&self) -> &'static str {
        match self {
            StageConfig::OnePole { .. } => "one_pole",
            StageConfig::ClippedOnePole { .. } => "clipped_one_pole",
            StageConfig::TwoPole { .. } => "two_pole",
        }
    }
}

/// Stages applied in series at sampling period `period` (seconds).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FilterConfig {
    pub stages: Vec<StageConfig>,
    pub period: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{field}: {message}")]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl ConfigError {
    pub(crate) fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            message: message.into(),
        }
    }
}

/// Parameter choices that are accepted but behave poorly.
#[derive(Debug, Clone, PartialEq)]
pub enum ConfigWarning {
    /// Discrete one-pole gain `b = alpha * T` above 1 overshoots each step.
    OnePoleOscillates { stage: usize, b: f64 },
    /// Two-pole explicit step with `T * omega0 >= 0.5`.
    TwoPoleCoarseStep { stage: usize, t_omega: f64 },
}

impl fmt::Display for ConfigWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigWarning::OnePoleOscillates { stage, b } => {
                write!(f, "stages[{stage}]: b = alpha*T = {b} > 1, output will oscillate")
            }
            ConfigWarning::TwoPoleCoarseStep { stage, t_omega } => write!(
                f,
                "stages[{stage}]: T*omega0 = {t_omega} >= 0.5, discrete two-pole may be inaccurate or unstable"
            ),
        }
    }
}

impl FilterConfig {
    pub fn new(stages: Vec<StageConfig>, period: f64) -> Self {
        Self { stages, period }
    }

    /// `count` one-pole stages with the same gain.
    pub fn cascaded(alpha: f64, count: usize, period: f64) -> Self {
        Self::new(vec![StageConfig::OnePole { alpha }; count], period)
    }

    /// A speed-limited one-pole stage followed by three plain one-pole stages.
    pub fn clipped_cascaded(c: f64, alpha: f64, period: f64) -> Self {
        let mut stages = vec![StageConfig::ClippedOnePole { alpha, c }];
        stages.extend([StageConfig::OnePole { alpha }; 3]);
        Self::new(stages, period)
    }

    pub fn two_pole(omega0: f64, zeta: f64, period: f64) -> Self {
        Self::new(vec![StageConfig::TwoPole { omega0, zeta }], period)
    }

    /// A speed-limited one-pole stage followed by a two-pole stage.
    pub fn clipped_two_pole(c: f64, alpha: f64, omega0: f64, zeta: f64, period: f64) -> Self {
        Self::new(
            vec![
                StageConfig::ClippedOnePole { alpha, c },
                StageConfig::TwoPole { omega0, zeta },
            ],
            period,
        )
    }

    /// The clipped cascade with `c = 1 Hz`, `alpha = 6 Hz` at 60 Hz.
    pub fn reference_default() -> Self {
        Self::clipped_cascaded(DEFAULT_SPEED_LIMIT, DEFAULT_ALPHA, DEFAULT_PERIOD)
    }

    /// Checks every parameter; returns the non-fatal warnings.
    pub fn validate(&self) -> Result<Vec<ConfigWarning>, ConfigError> {
        let t = self.period;
        if !(t > 0.0 && t.is_finite()) {
            return Err(ConfigError::new(
                "period",
                format!("must be positive, got {t}"),
            ));
        }
        if self.stages.is_empty() {
            return Err(ConfigError::new("stages", "at least one stage is required"));
        }
        let mut warnings = Vec::new();
        for (i, stage) in self.stages.iter().enumerate() {
            let field = |name: &str| format!("stages[{i}].{name}");
            let positive = |name: &str, x: f64| {
                if x > 0.0 && x.is_finite() {
                    Ok(())
                } else {
                    Err(ConfigError::new(
                        field(name),
                        format!("must be positive, got {x}"),
                    ))
                }
            };
            let non_negative = |name: &str, x: f64| {
                if x >= 0.0 && x.is_finite() {
                    Ok(())
                } else {
                    Err(ConfigError::new(
                        field(name),
                        format!("must be non-negative, got {x}"),
                    ))
                }
            };
            match *stage {
                StageConfig::OnePole { alpha } | StageConfig::ClippedOnePole { alpha, .. } => {
                    positive("alpha", alpha)?;
                    if let StageConfig::ClippedOnePole { c, .. } = *stage {
                        non_negative("c", c)?;
                    }
                    let b = alpha * t;
                    if b >= 2.0 {
                        return Err(ConfigError::new(
                            field("alpha"),
                            format!("b = alpha*T = {b} must be below 2 for stability"),
                        ));
                    }
                    if b > 1.0 {
                        warnings.push(ConfigWarning::OnePoleOscillates { stage: i, b });
                    }
                }
                StageConfig::TwoPole { omega0, zeta } => {
                    positive("omega0", omega0)?;
                    non_negative("zeta", zeta)?;
                    let t_omega = t * omega0;
                    if t_omega >= 0.5 {
                        warnings.push(ConfigWarning::TwoPoleCoarseStep { stage: i, t_omega });
                    }
                }
            }
        }
        for w in &warnings {
            log::warn!("{w}");
        }
        Ok(warnings)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_gain_is_one_tenth() {
        let cfg = FilterConfig::reference_default();
        assert_eq!(cfg.stages.len(), 4);
        match cfg.stages[0] {
            StageConfig::ClippedOnePole { alpha, c } => {
                assert_eq!(c, 1.0);
                assert!((alpha * cfg.period - 0.1).abs() < 1e-15);
            }
            ref s => panic!("unexpected first stage {s:?}"),
        }
        assert!(cfg.validate().unwrap().is_empty());
    }

    #[test]
    fn rejects_bad_parameters_with_field_names() {
        let err = FilterConfig::cascaded(-1.0, 2, 0.1).validate().unwrap_err();
        assert_eq!(err.field, "stages[0].alpha");
        let err = FilterConfig::cascaded(30.0, 1, 0.1).validate().unwrap_err();
        assert!(err.message.contains("below 2"));
        let err = FilterConfig::clipped_cascaded(-0.5, 6.0, 0.01)
            .validate()
            .unwrap_err();
        assert_eq!(err.field, "stages[0].c");
        let err = FilterConfig::two_pole(5.0, -1.0, 0.01)
            .validate()
            .unwrap_err();
        assert_eq!(err.field, "stages[0].zeta");
        let err = FilterConfig::two_pole(0.0, 1.0, 0.01)
            .validate()
            .unwrap_err();
        assert_eq!(err.field, "stages[0].omega0");
        assert_eq!(
            FilterConfig::cascaded(1.0, 1, 0.0)
                .validate()
                .unwrap_err()
                .field,
            "period"
        );
        assert_eq!(
            FilterConfig::new(vec![], 0.1).validate().unwrap_err().field,
            "stages"
        );
    }

    #[test]
    fn warnings() {
        let w = FilterConfig::cascaded(15.0, 1, 0.1).validate().unwrap();
        assert!(matches!(
            w[0],
            ConfigWarning::OnePoleOscillates { stage: 0, .. }
        ));
        let w = FilterConfig::two_pole(10.0, 1.0, 0.1).validate().unwrap();
        assert!(matches!(
            w[0],
            ConfigWarning::TwoPoleCoarseStep { stage: 0, .. }
        ));
        assert!(FilterConfig::clipped_cascaded(0.0, 6.0, DEFAULT_PERIOD)
            .validate()
            .unwrap()
            .is_empty());
    }

    #[test]
    fn json_shape() {
        let cfg = FilterConfig::clipped_two_pole(1.0, 6.0, 8.0, 0.5, 0.01);
        let s = serde_json::to_string(&cfg).unwrap();
        assert!(s.contains(r#""type":"clipped_one_pole""#));
        let back: FilterConfig = serde_json::from_str(&s).unwrap();
        assert_eq!(back, cfg);
        assert!(
            serde_json::from_str::<StageConfig>(r#"{"type":"one_pole","alpha":1,"beta":2}"#)
                .is_err()
        );
    }
}

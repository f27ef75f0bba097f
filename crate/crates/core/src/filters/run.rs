use serde::{Deserialize, Serialize};

use super::baseline::{run_baseline, Baseline, EasingConfig, EasingFunction};
use super::reference::sample_count;
use super::{ConfigError, Filter, FilterConfig, FilterError, StageConfig, TargetSignal};
use crate::hyperbolic::HPoint;
use crate::trajectory::Trajectory;

/// Samples `signal` at `x[i] = x(i T)`, feeds it through the cascade and
/// records `y[i]` for `i = 0 ..= ceil(duration / T)`. `y[0]` is the initial
/// state, `y0` or the first target by default.
pub fn run_filter<const N: usize>(
    signal: &TargetSignal<N>,
    cfg: &FilterConfig,
    duration: f64,
    y0: Option<HPoint<N>>,
) -> Result<(Trajectory<N>, Filter<N>), FilterError> {
    let y0 = y0.unwrap_or_else(|| signal.first());
    let mut filter = Filter::new(cfg.clone(), y0)?;
    let count = sample_count(duration, cfg.period);
    let mut out = Vec::with_capacity(count);
    out.push(y0);
    for i in 1..count {
        out.push(filter.step(&signal.at_sample(i, cfg.period)));
    }
    Ok((Trajectory::new(cfg.period, out)?, filter))
}

pub const TECHNIQUE_NAMES: [&str; 3] = ["filter", "constant_speed", "easing"];

/// A camera animation technique as written in technique JSON files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "technique", rename_all = "snake_case", deny_unknown_fields)]
pub enum Technique {
    /// Discrete filter cascade; runs at the scenario's sampling period.
    Filter { stages: Vec<StageConfig> },
    /// Travel at `speed` (Hz of hyperbolic distance) towards the latest target.
    ConstantSpeed { speed: f64 },
    /// Eased geodesic interpolation to the latest target over `duration` seconds.
    Easing {
        duration: f64,
        #[serde(default)]
        function: EasingFunction,
    },
}

impl Technique {
    pub fn kind(&self) -> &'static str {
        match self {
            Technique::Filter { .. } => "filter",
            Technique::ConstantSpeed { .. } => "constant_speed",
            Technique::Easing { .. } => "easing",
        }
    }

    pub fn filter_config(&self, period: f64) -> Option<FilterConfig> {
        match self {
            Technique::Filter { stages } => Some(FilterConfig::new(stages.clone(), period)),
            _ => None,
        }
    }

    pub fn validate(&self, period: f64) -> Result<(), ConfigError> {
        let positive = |name: &str, x: f64| {
            if x > 0.0 && x.is_finite() {
                Ok(())
            } else {
                Err(ConfigError::new(name, format!("must be positive, got {x}")))
            }
        };
        match self {
            Technique::Filter { stages } => FilterConfig::new(stages.clone(), period)
                .validate()
                .map(|_| ()),
            Technique::ConstantSpeed { speed } => positive("speed", *speed),
            Technique::Easing { duration, .. } => positive("duration", *duration),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOutput<const N: usize> {
    pub trajectory: Trajectory<N>,
    /// Largest per-step displacement of a clipped stage, if there is one.
    pub max_clipped_step: Option<f64>,
}

/// Runs any technique on `signal` at sampling period `period`.
pub fn run_technique<const N: usize>(
    technique: &Technique,
    signal: &TargetSignal<N>,
    period: f64,
    duration: f64,
) -> Result<RunOutput<N>, FilterError> {
    technique.validate(period)?;
    match technique {
        Technique::Filter { .. } => {
            let cfg = technique.filter_config(period).expect("filter technique");
            let has_clipped = cfg
                .stages
                .iter()
                .any(|s| matches!(s, StageConfig::ClippedOnePole { .. }));
            let (trajectory, filter) = run_filter(signal, &cfg, duration, None)?;
            Ok(RunOutput {
                trajectory,
                max_clipped_step: has_clipped.then(|| filter.max_clipped_step()),
            })
        }
        Technique::ConstantSpeed { speed } => run_baseline_output(
            &Baseline::ConstantSpeed { speed: *speed },
            signal,
            period,
            duration,
        ),
        Technique::Easing {
            duration: d,
            function,
        } => run_baseline_output(
            &Baseline::Easing(EasingConfig {
                duration: *d,
                function: *function,
            }),
            signal,
            period,
            duration,
        ),
    }
}

fn run_baseline_output<const N: usize>(
    baseline: &Baseline,
    signal: &TargetSignal<N>,
    period: f64,
    duration: f64,
) -> Result<RunOutput<N>, FilterError> {
    let events = signal.events();
    let samples = run_baseline(
        baseline,
        &events,
        signal.first(),
        period,
        sample_count(duration, period),
    );
    Ok(RunOutput {
        trajectory: Trajectory::new(period, samples)?,
        max_clipped_step: None,
    })
}

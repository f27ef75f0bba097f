//! Causal camera smoothing filters on the hyperbolic half-space, plus the
//! constant-speed and easing baselines they are compared against.

mod baseline;
mod config;
mod reference;
mod run;
mod signal;
mod stage;

pub use baseline::{
    constant_speed_eval, cosine_ease, easing_eval, run_baseline, Baseline, EasingConfig,
    EasingFunction,
};
pub use config::{
    ConfigError, ConfigWarning, FilterConfig, StageConfig, DEFAULT_ALPHA, DEFAULT_PERIOD,
    DEFAULT_SPEED_LIMIT,
};
pub use reference::{integrate_ct, sample_count};
pub use run::{run_filter, run_technique, RunOutput, Technique, TECHNIQUE_NAMES};
pub use signal::{StepEvent, TargetSignal};
pub use stage::{
    clipped_one_pole_step, one_pole_step, two_pole_step, Filter, StageState, TwoPoleState,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FilterError {
    #[error("target signal has no samples")]
    EmptySignal,
    #[error("target signal: {0}")]
    Signal(String),
    #[error("invalid filter config: {0}")]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Trajectory(#[from] crate::trajectory::TrajectoryError),
}

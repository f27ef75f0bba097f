use super::{ConfigError, FilterConfig, StageConfig};
use crate::hyperbolic::{dist, exp_map, geo, gerp, log_map, transport, HPoint, HVector};

/// Discrete geodesic one-pole update `y <- gerp(y, x, b)` with `b = alpha T`.
///
/// Stable for `0 < b < 2`; `b > 1` overshoots the target every step.
pub fn one_pole_step<const N: usize>(y: &mut HPoint<N>, x: &HPoint<N>, b: f64) -> HPoint<N> {
    *y = gerp(y, x, b);
    *y
}

/// Discrete clipped one-pole update: move `T * min(c, alpha * dist(y, x))`
/// along the geodesic towards `x`.
pub fn clipped_one_pole_step<const N: usize>(
    y: &mut HPoint<N>,
    x: &HPoint<N>,
    alpha: f64,
    c: f64,
    period: f64,
) -> HPoint<N> {
    let remaining = dist(y, x);
    let s = period * c.min(alpha * remaining);
    if remaining > 0.0 {
        *y = geo(y, x, s).expect("non-degenerate chord");
    }
    *y
}

/// State of a two-pole stage: position and velocity. The velocity is based
/// at the position from the previous step until it is transported.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPoleState<const N: usize> {
    pub y: HPoint<N>,
    pub ydot: HVector<N>,
}

impl<const N: usize> TwoPoleState<N> {
    pub fn at_rest(y: HPoint<N>) -> Self {
        Self {
            y,
            ydot: HVector::zero(y),
        }
    }
}

/// Discrete geodesic spring-mass-damper update:
///
/// ```text
/// ydot <- (1 - 2 T zeta omega0) transport(ydot, y) + T omega0^2 log_y(x)
/// y    <- exp(T ydot)
/// ```
pub fn two_pole_step<const N: usize>(
    state: &mut TwoPoleState<N>,
    x: &HPoint<N>,
    omega0: f64,
    zeta: f64,
    period: f64,
) -> HPoint<N> {
    let carried = transport(&state.ydot, &state.y);
    let damping = 1.0 - 2.0 * period * zeta * omega0;
    let spring = log_map(&state.y, x).scaled(period * omega0 * omega0);
    let ydot = carried.scaled(damping).plus(&spring);
    state.y = exp_map(&ydot.scaled(period));
    state.ydot = ydot;
    state.y
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StageState<const N: usize> {
    OnePole(HPoint<N>),
    ClippedOnePole(HPoint<N>),
    TwoPole(TwoPoleState<N>),
}

impl<const N: usize> StageState<N> {
    fn at_rest(config: &StageConfig, y: HPoint<N>) -> Self {
        match config {
            StageConfig::OnePole { .. } => StageState::OnePole(y),
            StageConfig::ClippedOnePole { .. } => StageState::ClippedOnePole(y),
            StageConfig::TwoPole { .. } => StageState::TwoPole(TwoPoleState::at_rest(y)),
        }
    }

    pub fn output(&self) -> HPoint<N> {
        match self {
            StageState::OnePole(y) | StageState::ClippedOnePole(y) => *y,
            StageState::TwoPole(s) => s.y,
        }
    }
}

/// A causal smoothing filter: the configured stages in series.
#[derive(Debug, Clone)]
pub struct Filter<const N: usize> {
    config: FilterConfig,
    stages: Vec<StageState<N>>,
    max_clipped_step: f64,
}

impl<const N: usize> Filter<N> {
    /// Validates `config` and starts every stage at rest at `y0`.
    pub fn new(config: FilterConfig, y0: HPoint<N>) -> Result<Self, ConfigError> {
        config.validate()?;
        let stages = config
            .stages
            .iter()
            .map(|s| StageState::at_rest(s, y0))
            .collect();
        Ok(Self {
            config,
            stages,
            max_clipped_step: 0.0,
        })
    }

    pub fn config(&self) -> &FilterConfig {
        &self.config
    }

    pub fn stages(&self) -> &[StageState<N>] {
        &self.stages
    }

    pub fn output(&self) -> HPoint<N> {
        self.stages.last().expect("validated non-empty").output()
    }

    /// Largest per-step displacement of any clipped stage so far.
    pub fn max_clipped_step(&self) -> f64 {
        self.max_clipped_step
    }

    /// Puts every stage at rest at `y0`.
    pub fn reset(&mut self, y0: HPoint<N>) {
        for (state, cfg) in self.stages.iter_mut().zip(&self.config.stages) {
            *state = StageState::at_rest(cfg, y0);
        }
        self.max_clipped_step = 0.0;
    }

    /// Advances one sample with input `x`; each stage feeds the next.
    pub fn step(&mut self, x: &HPoint<N>) -> HPoint<N> {
        let period = self.config.period;
        let mut input = *x;
        for (state, cfg) in self.stages.iter_mut().zip(&self.config.stages) {
            input = match (state, *cfg) {
                (StageState::OnePole(y), StageConfig::OnePole { alpha }) => {
                    one_pole_step(y, &input, alpha * period)
                }
                (StageState::ClippedOnePole(y), StageConfig::ClippedOnePole { alpha, c }) => {
                    let before = *y;
                    let out = clipped_one_pole_step(y, &input, alpha, c, period);
                    self.max_clipped_step = self.max_clipped_step.max(dist(&before, &out));
                    out
                }
                (StageState::TwoPole(s), StageConfig::TwoPole { omega0, zeta }) => {
                    two_pole_step(s, &input, omega0, zeta, period)
                }
                _ => unreachable!("stage state built from its config"),
            };
        }
        input
    }
}

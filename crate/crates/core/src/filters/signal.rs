use serde::{Deserialize, Serialize};

use super::FilterError;
use crate::hyperbolic::HPoint;

/// Relative slack used when deciding whether an event time has been reached
/// by a sample time `i * T` computed in floating point.
pub(crate) const TIME_SLACK: f64 = 1e-9;

/// A change of target at time `t` (seconds).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepEvent<const N: usize> {
    pub t: f64,
    pub target: HPoint<N>,
}

/// The raw target view over time.
#[derive(Debug, Clone, PartialEq)]
pub enum TargetSignal<const N: usize> {
    /// Piecewise-constant target; each event holds until the next one.
    Steps(Vec<StepEvent<N>>),
    /// Uniform samples `x[i]` at `period`.
    Sampled {
        period: f64,
        samples: Vec<HPoint<N>>,
    },
}

impl<const N: usize> TargetSignal<N> {
    pub fn steps(events: Vec<StepEvent<N>>) -> Result<Self, FilterError> {
        let first = events.first().ok_or(FilterError::EmptySignal)?;
        if first.t != 0.0 {
            return Err(FilterError::Signal(format!(
                "first event must be at t = 0, got {}",
                first.t
            )));
        }
        for (i, w) in events.windows(2).enumerate() {
            if !(w[1].t > w[0].t) || !w[1].t.is_finite() {
                return Err(FilterError::Signal(format!(
                    "events[{}].t = {} is not after events[{i}].t = {}",
                    i + 1,
                    w[1].t,
                    w[0].t
                )));
            }
        }
        Ok(TargetSignal::Steps(events))
    }

    pub fn constant(target: HPoint<N>) -> Self {
        TargetSignal::Steps(vec![StepEvent { t: 0.0, target }])
    }

    pub fn sampled(period: f64, samples: Vec<HPoint<N>>) -> Result<Self, FilterError> {
        if samples.is_empty() {
            return Err(FilterError::EmptySignal);
        }
        if !(period > 0.0 && period.is_finite()) {
            return Err(FilterError::Signal(format!(
                "period must be positive, got {period}"
            )));
        }
        Ok(TargetSignal::Sampled { period, samples })
    }

    pub fn first(&self) -> HPoint<N> {
        match self {
            TargetSignal::Steps(e) => e[0].target,
            TargetSignal::Sampled { samples, .. } => samples[0],
        }
    }

    /// Target at time `t`. Step changes are right-continuous: an event at
    /// exactly `t` is already in effect.
    pub fn at_time(&self, t: f64) -> HPoint<N> {
        match self {
            TargetSignal::Steps(events) => {
                let idx = events.partition_point(|e| e.t <= t);
                events[idx.saturating_sub(1)].target
            }
            TargetSignal::Sampled { period, samples } => {
                let k = (t / period * (1.0 + TIME_SLACK)).floor().max(0.0) as usize;
                samples[k.min(samples.len() - 1)]
            }
        }
    }

    /// `x[i]`: the target at sample time `i * period`.
    pub fn at_sample(&self, i: usize, period: f64) -> HPoint<N> {
        let t = i as f64 * period;
        self.at_time(t + TIME_SLACK * period)
    }

    /// Change events. Sampled signals yield one event per change of value.
    pub fn events(&self) -> Vec<StepEvent<N>> {
        match self {
            TargetSignal::Steps(e) => e.clone(),
            TargetSignal::Sampled { period, samples } => {
                let mut out = vec![StepEvent {
                    t: 0.0,
                    target: samples[0],
                }];
                for (i, w) in samples.windows(2).enumerate() {
                    if w[1] != w[0] {
                        out.push(StepEvent {
                            t: (i + 1) as f64 * period,
                            target: w[1],
                        });
                    }
                }
                out
            }
        }
    }

    /// Applies `f` to every target value.
    pub fn map_targets(&self, f: impl Fn(&HPoint<N>) -> HPoint<N>) -> Self {
        match self {
            TargetSignal::Steps(e) => TargetSignal::Steps(
                e.iter()
                    .map(|ev| StepEvent {
                        t: ev.t,
                        target: f(&ev.target),
                    })
                    .collect(),
            ),
            TargetSignal::Sampled { period, samples } => TargetSignal::Sampled {
                period: *period,
                samples: samples.iter().map(f).collect(),
            },
        }
    }
}

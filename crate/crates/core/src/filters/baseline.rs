use serde::{Deserialize, Serialize};

use super::signal::{StepEvent, TIME_SLACK};
use crate::hyperbolic::{dist, geo, gerp, HPoint};

/// Cosine easing: `1/2 - cos(pi a)/2` on `[0, 1)`, clamped to 0 and 1 outside.
pub fn cosine_ease(a: f64) -> f64 {
    if a <= 0.0 {
        0.0
    } else if a >= 1.0 {
        1.0
    } else {
        0.5 - 0.5 * (std::f64::consts::PI * a).cos()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EasingFunction {
    #[default]
    Cosine,
}

impl EasingFunction {
    pub fn eval(self, a: f64) -> f64 {
        match self {
            EasingFunction::Cosine => cosine_ease(a),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EasingConfig {
    /// Seconds from start to arrival.
    pub duration: f64,
    #[serde(default)]
    pub function: EasingFunction,
}

impl EasingConfig {
    pub fn cosine(duration: f64) -> Self {
        Self {
            duration,
            function: EasingFunction::Cosine,
        }
    }
}

/// Position after travelling for `t` seconds at hyperbolic speed `c` from
/// `y0` towards `target`, stopping on arrival.
pub fn constant_speed_eval<const N: usize>(
    y0: &HPoint<N>,
    target: &HPoint<N>,
    c: f64,
    t: f64,
) -> HPoint<N> {
    let d = dist(y0, target);
    if d == 0.0 {
        return *y0;
    }
    let s = (c * t).clamp(0.0, d);
    if s == d {
        *target
    } else {
        geo(y0, target, s).expect("distinct endpoints")
    }
}

/// `gerp(y0, target, f(t / d))`.
pub fn easing_eval<const N: usize>(
    y0: &HPoint<N>,
    target: &HPoint<N>,
    cfg: &EasingConfig,
    t: f64,
) -> HPoint<N> {
    let a = cfg.function.eval(t / cfg.duration);
    if a >= 1.0 {
        *target
    } else {
        gerp(y0, target, a)
    }
}

/// Baseline animations that restart from the current view
/// whenever the target changes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Baseline {
    ConstantSpeed { speed: f64 },
    Easing(EasingConfig),
}

impl Baseline {
    fn eval<const N: usize>(&self, y0: &HPoint<N>, target: &HPoint<N>, t: f64) -> HPoint<N> {
        match self {
            Baseline::ConstantSpeed { speed } => constant_speed_eval(y0, target, *speed, t),
            Baseline::Easing(cfg) => easing_eval(y0, target, cfg, t),
        }
    }
}

/// Samples a baseline at `t_i = i * period`, `i < count`. At each event the
/// motion restarts from the position reached at the exact event time.
pub fn run_baseline<const N: usize>(
    baseline: &Baseline,
    events: &[StepEvent<N>],
    y0: HPoint<N>,
    period: f64,
    count: usize,
) -> Vec<HPoint<N>> {
    let mut starts = Vec::with_capacity(events.len());
    let mut start = y0;
    for (k, ev) in events.iter().enumerate() {
        starts.push(start);
        if let Some(next) = events.get(k + 1) {
            start = baseline.eval(&start, &ev.target, next.t - ev.t);
        }
    }
    (0..count)
        .map(|i| {
            let t = i as f64 * period;
            let k = events
                .partition_point(|e| e.t <= t + TIME_SLACK * period)
                .saturating_sub(1);
            baseline.eval(&starts[k], &events[k].target, (t - events[k].t).max(0.0))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn pt(u: f64, v: f64) -> HPoint<1> {
        HPoint::new([u], v).unwrap()
    }

    #[test]
    fn ease_endpoints_and_midpoint() {
        assert_eq!(cosine_ease(0.0), 0.0);
        assert_eq!(cosine_ease(1.0), 1.0);
        assert_eq!(cosine_ease(3.0), 1.0);
        assert_relative_eq!(cosine_ease(0.5), 0.5, epsilon = 1e-15);
        let h = 1e-6;
        assert!(cosine_ease(h) / h < 1e-5);
        assert!((1.0 - cosine_ease(1.0 - h)) / h < 1e-5);
    }

    #[test]
    fn constant_speed_midpoint_and_clamp() {
        let (a, b) = (pt(0.0, 1.0), pt(2.0, 1.0));
        let d = dist(&a, &b);
        assert_eq!(constant_speed_eval(&a, &b, 1.0, 0.0), a);
        let m = constant_speed_eval(&a, &b, 1.0, d / 2.0);
        assert_relative_eq!(m.footprint()[0], 1.0, epsilon = 1e-12);
        assert_relative_eq!(m.altitude(), 2f64.sqrt(), epsilon = 1e-12);
        assert_eq!(constant_speed_eval(&a, &b, 1.0, d + 0.1), b);
        assert_eq!(constant_speed_eval(&a, &a, 1.0, 3.0), a);
    }

    #[test]
    fn easing_eval_matches_gerp() {
        let (a, b) = (pt(0.0, 1.0), pt(2.0, 1.0));
        let cfg = EasingConfig::cosine(2.0);
        assert_eq!(easing_eval(&a, &b, &cfg, 0.0), a);
        let m = easing_eval(&a, &b, &cfg, 1.0);
        assert_relative_eq!(m.footprint()[0], 1.0, epsilon = 1e-12);
        assert_relative_eq!(m.altitude(), 2f64.sqrt(), epsilon = 1e-12);
        assert_eq!(easing_eval(&a, &b, &cfg, 2.0), b);
    }

    #[test]
    fn baseline_restarts_from_current_view() {
        let events = vec![
            StepEvent {
                t: 0.0,
                target: pt(0.0, 1.0),
            },
            StepEvent {
                t: 0.5,
                target: pt(4.0, 1.0),
            },
            StepEvent {
                t: 1.0,
                target: pt(-4.0, 1.0),
            },
        ];
        let b = Baseline::ConstantSpeed { speed: 1.0 };
        let out = run_baseline(&b, &events, events[0].target, 0.1, 21);
        assert_eq!(out[5], pt(0.0, 1.0));
        let mid = constant_speed_eval(&pt(0.0, 1.0), &pt(4.0, 1.0), 1.0, 0.5);
        assert_relative_eq!(out[10].footprint()[0], mid.footprint()[0], epsilon = 1e-12);
        let later = constant_speed_eval(&mid, &pt(-4.0, 1.0), 1.0, 0.5);
        assert_relative_eq!(
            out[15].footprint()[0],
            later.footprint()[0],
            epsilon = 1e-12
        );
    }
}

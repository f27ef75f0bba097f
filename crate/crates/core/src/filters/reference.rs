use super::{FilterError, StageConfig, TargetSignal, TwoPoleState};
use crate::hyperbolic::{clipvec, exp_map, log_map, transport, HPoint, HVector};
use crate::trajectory::Trajectory;

/// Continuous-time stage state.
#[derive(Debug, Clone, Copy)]
enum CtState<const N: usize> {
    Position(HPoint<N>),
    Oscillator(TwoPoleState<N>),
}

/// Explicit geodesic stepping `y <- exp(h f(y, x))` of the continuous-time
/// systems in series, sampled every `step` seconds for `duration` seconds.
///
/// One-pole: `f = alpha log_y(x)`; clipped one-pole:
/// `f = clipvec(alpha log_y(x), c)`; two-pole: the velocity obeys
/// `D ydot/dt = omega0^2 log_y(x) - 2 zeta omega0 ydot` and is advanced
/// semi-implicitly. The input used for the step ending at `t` is `x(t)`.
pub fn integrate_ct<const N: usize>(
    stages: &[StageConfig],
    signal: &TargetSignal<N>,
    step: f64,
    duration: f64,
    y0: Option<HPoint<N>>,
) -> Result<Trajectory<N>, FilterError> {
    if stages.is_empty() {
        return Err(FilterError::Signal("no stages to integrate".into()));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(FilterError::Signal(format!(
            "solver step must be positive, got {step}"
        )));
    }
    let y0 = y0.unwrap_or_else(|| signal.first());
    let mut states: Vec<CtState<N>> = stages
        .iter()
        .map(|s| match s {
            StageConfig::TwoPole { .. } => CtState::Oscillator(TwoPoleState::at_rest(y0)),
            _ => CtState::Position(y0),
        })
        .collect();
    let count = sample_count(duration, step);
    let mut out = Vec::with_capacity(count);
    out.push(y0);
    for k in 1..count {
        let mut input = signal.at_sample(k, step);
        for (state, cfg) in states.iter_mut().zip(stages) {
            input = match (state, *cfg) {
                (CtState::Position(y), StageConfig::OnePole { alpha }) => {
                    *y = exp_map(&log_map(y, &input).scaled(alpha * step));
                    *y
                }
                (CtState::Position(y), StageConfig::ClippedOnePole { alpha, c }) => {
                    *y = exp_map(&clipvec(&log_map(y, &input).scaled(alpha), c).scaled(step));
                    *y
                }
                (CtState::Oscillator(s), StageConfig::TwoPole { omega0, zeta }) => {
                    let carried: HVector<N> = transport(&s.ydot, &s.y);
                    let accel = log_map(&s.y, &input)
                        .scaled(omega0 * omega0)
                        .plus(&carried.scaled(-2.0 * zeta * omega0));
                    s.ydot = carried.plus(&accel.scaled(step));
                    s.y = exp_map(&s.ydot.scaled(step));
                    s.y
                }
                _ => unreachable!("state built from its config"),
            };
        }
        out.push(input);
    }
    Ok(Trajectory::new(step, out)?)
}

/// `ceil(duration / period) + 1`, tolerant of roundoff in the ratio.
pub fn sample_count(duration: f64, period: f64) -> usize {
    let ratio = duration / period;
    (ratio - 1e-9 * ratio.max(1.0)).ceil().max(0.0) as usize + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::dist;

    fn pt(u: f64, v: f64) -> HPoint<1> {
        HPoint::new([u], v).unwrap()
    }

    #[test]
    fn one_pole_distance_decays_exponentially() {
        let target = pt(1.0, 0.5);
        let start = pt(-0.5, 1.5);
        let d0 = dist(&start, &target);
        let alpha = 2.0;
        let traj = integrate_ct(
            &[StageConfig::OnePole { alpha }],
            &TargetSignal::constant(target),
            1e-4,
            1.0,
            Some(start),
        )
        .unwrap();
        for (i, y) in traj.samples().iter().enumerate() {
            let expected = (-alpha * traj.time(i)).exp() * d0;
            assert!((dist(y, &target) - expected).abs() < 1e-4, "i = {i}");
        }
    }

    #[test]
    fn stationary_at_target() {
        let x = pt(3.0, 2.0);
        let stages = [
            StageConfig::ClippedOnePole { alpha: 6.0, c: 1.0 },
            StageConfig::TwoPole {
                omega0: 10.0,
                zeta: 1.0,
            },
        ];
        let traj = integrate_ct(&stages, &TargetSignal::constant(x), 1e-3, 0.5, None).unwrap();
        assert!(traj.samples().iter().all(|y| *y == x));
    }

    #[test]
    fn sample_count_tolerates_roundoff() {
        assert_eq!(sample_count(1.0, 1.0 / 60.0), 61);
        assert_eq!(sample_count(0.1, 0.1 / 3.0), 4);
        assert_eq!(sample_count(1.0, 0.3), 5);
    }
}

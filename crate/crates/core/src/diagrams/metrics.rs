use serde::Serialize;

use super::DiagramError;
use crate::trajectory::Trajectory;

/// Half-width, in frames, of the window that sets the local velocity scale.
pub const SCALE_WINDOW: usize = 15;
/// Default jump threshold relative to the local velocity scale.
pub const DEFAULT_JUMP_THRESHOLD: f64 = 0.25;

/// World-space screen center and screen edges over time for one axis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsSeries {
    pub center: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

/// `u(t)` and `u(t) -/+ v(t) r_half`, per axis.
pub fn screen_bounds_series<const N: usize>(
    traj: &Trajectory<N>,
    r_half: &[f64; N],
) -> Vec<BoundsSeries> {
    (0..N)
        .map(|axis| {
            let mut s = BoundsSeries {
                center: Vec::with_capacity(traj.len()),
                lower: Vec::with_capacity(traj.len()),
                upper: Vec::with_capacity(traj.len()),
            };
            for x in traj.samples() {
                let (u, half) = (x.footprint()[axis], x.altitude() * r_half[axis]);
                s.center.push(u);
                s.lower.push(u - half);
                s.upper.push(u + half);
            }
            s
        })
        .collect()
}

/// RMS over screen positions `r` in `[r_lo, r_hi]` (per axis) of the
/// pathline slope `-(u' + r v') / v` at sample `i`, in closed form.
pub fn rms_flow<const N: usize>(traj: &Trajectory<N>, i: usize, r_lo: f64, r_hi: f64) -> f64 {
    let (a, b) = (r_lo, r_hi);
    let v = traj.sample(i).altitude();
    let d = traj.derivative(i);
    let vp = d.dv;
    let r2 = (a * a + a * b + b * b) / 3.0;
    let mean_sq: f64 =
        d.du.iter()
            .map(|&up| up * up + up * vp * (a + b) + vp * vp * r2)
            .sum::<f64>()
            / (v * v);
    mean_sq.max(0.0).sqrt()
}

pub fn rms_flow_series<const N: usize>(traj: &Trajectory<N>, r_lo: f64, r_hi: f64) -> Vec<f64> {
    (0..traj.len())
        .map(|i| rms_flow(traj, i, r_lo, r_hi))
        .collect()
}

/// Screen position over time of the world point at the center of the first
/// frame.
pub fn track_point<const N: usize>(traj: &Trajectory<N>) -> Vec<[f64; N]> {
    let p = *traj.sample(0).footprint();
    traj.samples().iter().map(|x| x.screen_point(&p)).collect()
}

/// A detected velocity discontinuity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Jump {
    pub index: usize,
    pub t: f64,
    /// Estimated change of screen-space velocity at this frame.
    pub magnitude: f64,
    /// Local velocity scale the magnitude was compared against.
    pub scale: f64,
}

fn norm<const N: usize>(x: &[f64; N]) -> f64 {
    x.iter().map(|c| c * c).sum::<f64>().sqrt()
}

/// Local velocity scales below this are treated as rest.
pub const MIN_SCALE: f64 = 1e-9;

/// Velocity discontinuity estimate at every frame `i` of the tracked point.
///
/// With `w_i = (r_{i+1} - r_i) / T`, the velocity just before frame `i` is
/// extrapolated linearly from `w_{i-2}, w_{i-1}` and the velocity just after
/// from `w_i, w_{i+1}`; the magnitude is the gap between the two. Smooth
/// acceleration cancels to first order, a jump in velocity does not. The
/// scale is `max |w|` over `SCALE_WINDOW` frames either side.
pub fn velocity_jumps<const N: usize>(traj: &Trajectory<N>) -> Vec<Jump> {
    let r = track_point(traj);
    let t = traj.period();
    let w: Vec<[f64; N]> = r
        .windows(2)
        .map(|p| std::array::from_fn(|k| (p[1][k] - p[0][k]) / t))
        .collect();
    let speed: Vec<f64> = w.iter().map(norm).collect();
    if w.len() < 4 {
        return Vec::new();
    }
    (2..w.len() - 1)
        .map(|i| {
            let gap: [f64; N] = std::array::from_fn(|k| {
                let before = 1.5 * w[i - 1][k] - 0.5 * w[i - 2][k];
                let after = 1.5 * w[i][k] - 0.5 * w[i + 1][k];
                after - before
            });
            let lo = i.saturating_sub(SCALE_WINDOW);
            let hi = (i + SCALE_WINDOW).min(w.len() - 1);
            let scale = speed[lo..=hi].iter().cloned().fold(0.0, f64::max);
            Jump {
                index: i,
                t: traj.time(i),
                magnitude: norm(&gap),
                scale,
            }
        })
        .collect()
}

/// Frames where the velocity jump exceeds `threshold` times the local
/// velocity scale and is the largest within two frames either side.
pub fn discontinuity_scan<const N: usize>(
    traj: &Trajectory<N>,
    threshold: f64,
) -> Result<Vec<Jump>, DiagramError> {
    if traj.len() < 3 {
        return Err(DiagramError::TooShort {
            needed: 3,
            got: traj.len(),
        });
    }
    let jumps = velocity_jumps(traj);
    Ok((0..jumps.len())
        .filter(|&j| {
            let x = &jumps[j];
            let neighbours = j.saturating_sub(2)..(j + 3).min(jumps.len());
            x.scale > MIN_SCALE
                && x.magnitude > threshold * x.scale
                && neighbours.clone().all(|k| {
                    k == j
                        || jumps[k].magnitude < x.magnitude
                        || (k > j && jumps[k].magnitude == x.magnitude)
                })
        })
        .map(|j| jumps[j])
        .collect())
}

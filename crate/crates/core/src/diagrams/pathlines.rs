use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::{grad_mag, pow2, pow2ceil, pow2ceil_exp, DiagramConfig, DiagramError};
use crate::trajectory::Trajectory;

/// Largest integer magnitude for which `k * P` is exact.
const MAX_EXACT_INT: i64 = 1 << 53;

/// Screen-space trace of the world value `p` along one screen axis, over a
/// run of consecutive samples starting at `start_index`.
#[derive(Debug, Clone, PartialEq)]
pub struct Pathline {
    pub axis: usize,
    pub p: f64,
    pub start_index: usize,
    /// `(t, r)` vertices, one per consecutive sample.
    pub vertices: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathlineSet {
    pub alpha_iso: f64,
    pub r_lo: f64,
    pub r_hi: f64,
    pub pathlines: Vec<Pathline>,
}

impl PathlineSet {
    pub fn len(&self) -> usize {
        self.pathlines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pathlines.is_empty()
    }

    pub fn for_axis(&self, axis: usize) -> impl Iterator<Item = &Pathline> {
        self.pathlines.iter().filter(move |p| p.axis == axis)
    }
}

/// Whether `pow2ceil(alpha * grad_mag(...))` divides `p`.
pub fn in_c_alpha(alpha: f64, v: f64, vprime: f64, uprime: f64, r: f64, p: f64) -> bool {
    match pow2ceil(alpha * grad_mag(v, vprime, uprime, r)) {
        Ok(q) => (p / q).fract() == 0.0,
        Err(_) => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Key(f64);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Optical pathlines by the power-of-two isoline density rule, one set of
/// curves per screen axis.
pub fn pathlines<const N: usize>(
    traj: &Trajectory<N>,
    cfg: &DiagramConfig,
) -> Result<PathlineSet, DiagramError> {
    cfg.validate()?;
    if traj.len() < 2 {
        return Err(DiagramError::TooShort {
            needed: 2,
            got: traj.len(),
        });
    }
    let alpha = cfg.alpha_iso;
    let mut out = Vec::new();
    for axis in 0..N {
        let mut acc: BTreeMap<Key, Vec<usize>> = BTreeMap::new();
        for i in 0..traj.len() {
            let x = traj.sample(i);
            let (u, v) = (x.footprint()[axis], x.altitude());
            let d = traj.derivative(i);
            let e1 = pow2ceil_exp(alpha * v)?;
            let big_p = pow2(e1);
            let k_lo = ((v * cfg.r_lo + u) / big_p).ceil();
            let k_hi = ((v * cfg.r_hi + u) / big_p).floor();
            if !(k_lo <= k_hi)
                || k_lo.abs() > MAX_EXACT_INT as f64
                || k_hi.abs() > MAX_EXACT_INT as f64
            {
                continue;
            }
            for k in k_lo as i64..=k_hi as i64 {
                let p = k as f64 * big_p;
                let r = (p - u) / v;
                if !(cfg.r_lo..=cfg.r_hi).contains(&r) {
                    continue;
                }
                let e2 = pow2ceil_exp(alpha * grad_mag(v, d.dv, d.du[axis], r))?;
                let shift = (e2 - e1).max(0) as u32;
                if k == 0 || k.trailing_zeros() >= shift {
                    acc.entry(Key(p)).or_default().push(i);
                }
            }
        }
        for (Key(p), indices) in acc {
            let mut current: Option<Pathline> = None;
            for i in indices {
                let x = traj.sample(i);
                let vertex = (traj.time(i), (p - x.footprint()[axis]) / x.altitude());
                match current.as_mut() {
                    Some(line) if line.start_index + line.vertices.len() == i => {
                        line.vertices.push(vertex)
                    }
                    _ => {
                        out.extend(current.take());
                        current = Some(Pathline {
                            axis,
                            p,
                            start_index: i,
                            vertices: vec![vertex],
                        });
                    }
                }
            }
            out.extend(current);
        }
    }
    Ok(PathlineSet {
        alpha_iso: alpha,
        r_lo: cfg.r_lo,
        r_hi: cfg.r_hi,
        pathlines: out,
    })
}

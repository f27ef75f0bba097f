//! Uniformly sampled camera paths and their CSV form.
//!
//! The CSV header is `t,u1,v` for one-dimensional worlds and `t,u1,u2,v`
//! for planar ones. Values are written with 17 significant digits, so a
//! written trajectory reads back bit-for-bit.

use std::io::{Read, Write};

use thiserror::Error;

use crate::hyperbolic::HPoint;

#[derive(Debug, Error)]
pub enum TrajectoryError {
    #[error("sampling period must be positive and finite, got {0}")]
    BadPeriod(f64),
    #[error("trajectory has no samples")]
    Empty,
    #[error("derivative count {got} does not match sample count {expected}")]
    DerivativeCount { expected: usize, got: usize },
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Time derivative of a camera path at one sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivative<const N: usize> {
    pub du: [f64; N],
    pub dv: f64,
}

/// Camera path sampled at `t_i = i * period`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<const N: usize> {
    period: f64,
    samples: Vec<HPoint<N>>,
    derivatives: Option<Vec<Derivative<N>>>,
}

impl<const N: usize> Trajectory<N> {
    pub fn new(period: f64, samples: Vec<HPoint<N>>) -> Result<Self, TrajectoryError> {
        if !(period > 0.0 && period.is_finite()) {
            return Err(TrajectoryError::BadPeriod(period));
        }
        if samples.is_empty() {
            return Err(TrajectoryError::Empty);
        }
        Ok(Self {
            period,
            samples,
            derivatives: None,
        })
    }

    /// Attaches analytic derivatives, used instead of finite differences.
    pub fn with_derivatives(
        mut self,
        derivatives: Vec<Derivative<N>>,
    ) -> Result<Self, TrajectoryError> {
        if derivatives.len() != self.samples.len() {
            return Err(TrajectoryError::DerivativeCount {
                expected: self.samples.len(),
                got: derivatives.len(),
            });
        }
        self.derivatives = Some(derivatives);
        Ok(self)
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn time(&self, i: usize) -> f64 {
        i as f64 * self.period
    }

    pub fn samples(&self) -> &[HPoint<N>] {
        &self.samples
    }

    pub fn sample(&self, i: usize) -> &HPoint<N> {
        &self.samples[i]
    }

    pub fn has_analytic_derivatives(&self) -> bool {
        self.derivatives.is_some()
    }

    /// Derivative at sample `i`: the attached analytic value if present,
    /// otherwise a central difference (one-sided at the ends).
    pub fn derivative(&self, i: usize) -> Derivative<N> {
        if let Some(d) = &self.derivatives {
            return d[i];
        }
        let n = self.samples.len();
        if n < 2 {
            return Derivative {
                du: [0.0; N],
                dv: 0.0,
            };
        }
        let (a, b) = if i == 0 {
            (0, 1)
        } else if i == n - 1 {
            (n - 2, n - 1)
        } else {
            (i - 1, i + 1)
        };
        let h = (b - a) as f64 * self.period;
        let (pa, pb) = (&self.samples[a], &self.samples[b]);
        Derivative {
            du: std::array::from_fn(|k| (pb.footprint()[k] - pa.footprint()[k]) / h),
            dv: (pb.altitude() - pa.altitude()) / h,
        }
    }

    pub fn csv_header() -> Vec<String> {
        let mut h = vec!["t".to_string()];
        h.extend((1..=N).map(|k| format!("u{k}")));
        h.push("v".to_string());
        h
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), TrajectoryError> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(Self::csv_header())?;
        let mut row = Vec::with_capacity(N + 2);
        for (i, p) in self.samples.iter().enumerate() {
            row.clear();
            row.push(fmt_f64(self.time(i)));
            row.extend(p.footprint().iter().map(|&x| fmt_f64(x)));
            row.push(fmt_f64(p.altitude()));
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Self, TrajectoryError> {
        let mut r = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(input);
        let header: Vec<String> = r.headers()?.iter().map(|s| s.trim().to_string()).collect();
        if header != Self::csv_header() {
            return Err(TrajectoryError::Parse {
                line: 1,
                message: format!(
                    "expected header {:?}, found {:?}",
                    Self::csv_header().join(","),
                    header.join(",")
                ),
            });
        }
        let mut times = Vec::new();
        let mut samples = Vec::new();
        for rec in r.records() {
            let rec = rec?;
            let line = rec.position().map_or(0, |p| p.line());
            let parse_err = |message: String| TrajectoryError::Parse { line, message };
            if rec.len() != N + 2 {
                return Err(parse_err(format!(
                    "expected {} fields, found {}",
                    N + 2,
                    rec.len()
                )));
            }
            let mut vals = vec![0.0; N + 2];
            for (k, field) in rec.iter().enumerate() {
                vals[k] = field
                    .trim()
                    .parse::<f64>()
                    .map_err(|e| parse_err(format!("column {}: {e}", header[k])))?;
            }
            let u = std::array::from_fn(|k| vals[1 + k]);
            let p = HPoint::new(u, vals[N + 1]).map_err(|e| parse_err(e.to_string()))?;
            times.push((line, vals[0]));
            samples.push(p);
        }
        if samples.is_empty() {
            return Err(TrajectoryError::Empty);
        }
        let period = if times.len() > 1 {
            times[1].1 - times[0].1
        } else {
            1.0
        };
        if !(period > 0.0) {
            return Err(TrajectoryError::Parse {
                line: times[1].0,
                message: "time column must be increasing".into(),
            });
        }
        for (i, &(line, t)) in times.iter().enumerate() {
            let expected = times[0].1 + i as f64 * period;
            if (t - expected).abs() > 1e-6 * period {
                return Err(TrajectoryError::Parse {
                    line,
                    message: format!("non-uniform sampling: t = {t}, expected {expected}"),
                });
            }
        }
        Trajectory::new(period, samples)
    }
}

/// Number of footprint components declared by a trajectory CSV header.
pub fn csv_dimension(header_line: &str) -> Option<usize> {
    let cols: Vec<&str> = header_line.trim().split(',').map(str::trim).collect();
    match cols.as_slice() {
        ["t", "u1", "v"] => Some(1),
        ["t", "u1", "u2", "v"] => Some(2),
        _ => None,
    }
}

pub(crate) fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

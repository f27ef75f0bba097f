use serde::Serialize;

use crate::diagrams::{discontinuity_scan, rms_flow_series, DiagramError, Jump};
use crate::trajectory::Trajectory;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlowSummary {
    pub mean: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscontinuitySummary {
    pub threshold: f64,
    pub count: usize,
    pub jumps: Vec<Jump>,
}

/// Metrics of one trajectory.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsReport {
    pub samples: usize,
    pub period: f64,
    pub rms_flow: FlowSummary,
    pub discontinuities: DiscontinuitySummary,
}

impl MetricsReport {
    pub fn compute<const N: usize>(
        traj: &Trajectory<N>,
        r_half: f64,
        threshold: f64,
    ) -> Result<Self, DiagramError> {
        let flow = rms_flow_series(traj, -r_half, r_half);
        let jumps = discontinuity_scan(traj, threshold)?;
        Ok(Self {
            samples: traj.len(),
            period: traj.period(),
            rms_flow: FlowSummary {
                mean: flow.iter().sum::<f64>() / flow.len() as f64,
                max: flow.iter().cloned().fold(0.0, f64::max),
            },
            discontinuities: DiscontinuitySummary {
                threshold,
                count: jumps.len(),
                jumps,
            },
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TechniqueReport {
    pub name: String,
    pub technique: String,
    pub trajectory: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagram: Option<String>,
    /// Largest per-step displacement of a clipped stage, when there is one.
    pub max_clipped_step: Option<f64>,
    #[serde(flatten)]
    pub metrics: MetricsReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub scenario: String,
    pub dimension: usize,
    pub rate: f64,
    pub duration: f64,
    pub run: TechniqueReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareReport {
    pub scenario: String,
    pub dimension: usize,
    pub rate: f64,
    pub duration: f64,
    pub techniques: Vec<TechniqueReport>,
}

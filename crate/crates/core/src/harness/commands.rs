use std::path::{Path, PathBuf};
use std::time::Instant;

use super::report::{CompareReport, MetricsReport, RunReport, TechniqueReport};
use super::scenario::{
    load_scenario, load_technique, AnyScenario, Scenario, ScenarioOverrides, DEFAULT_COMPARE_SET,
};
use super::vectors::golden_vectors;
use super::{read_file, to_json_pretty, write_file, HarnessError};
use crate::diagrams::{
    render_worldscreen_svg, DiagramConfig, TargetOverlay, DEFAULT_JUMP_THRESHOLD,
};
use crate::filters::{run_technique, Technique};
use crate::trajectory::{csv_dimension, Trajectory};
use crate::uw::half_extent;

#[derive(Debug, Clone)]
pub struct RunArgs {
    pub scenario: PathBuf,
    pub filter: String,
    /// Output prefix: writes `<out>.csv` and `<out>.report.json`.
    pub out: PathBuf,
    pub overrides: ScenarioOverrides,
    pub threshold: f64,
}

#[derive(Debug, Clone)]
pub struct CompareArgs {
    pub scenario: PathBuf,
    /// Technique names or files; empty means the standard four.
    pub techniques: Vec<String>,
    /// Output directory.
    pub out: PathBuf,
    pub overrides: ScenarioOverrides,
    pub threshold: f64,
    pub alpha_iso: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct DiagramArgs {
    pub input: PathBuf,
    pub out: PathBuf,
    pub alpha_iso: Option<f64>,
    pub theta_deg: Option<f64>,
    /// Scenario whose target span is drawn over the bounds panel.
    pub scenario: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct MetricsArgs {
    pub input: PathBuf,
    pub theta_deg: Option<f64>,
    pub threshold: f64,
    pub out: Option<PathBuf>,
}

impl Default for MetricsArgs {
    fn default() -> Self {
        Self {
            input: PathBuf::new(),
            theta_deg: None,
            threshold: DEFAULT_JUMP_THRESHOLD,
            out: None,
        }
    }
}

fn check_threshold(threshold: f64) -> Result<(), HarnessError> {
    if threshold > 0.0 && threshold.is_finite() {
        Ok(())
    } else {
        Err(HarnessError::validation(
            "--threshold",
            format!("must be positive, got {threshold}"),
        ))
    }
}

fn r_half_from_theta(theta_deg: Option<f64>) -> Result<f64, HarnessError> {
    match theta_deg {
        None => Ok(1.0),
        Some(d) if d > 0.0 && d < 180.0 => Ok(half_extent(d.to_radians())),
        Some(d) => Err(HarnessError::validation(
            "--theta",
            format!("angle of view must lie in (0, 180) degrees, got {d}"),
        )),
    }
}

fn diagram_config(r_half: f64, alpha_iso: Option<f64>) -> Result<DiagramConfig, HarnessError> {
    let mut cfg = DiagramConfig::with_r_half(r_half);
    if let Some(a) = alpha_iso {
        cfg.alpha_iso = a;
    }
    cfg.validate().map_err(|e| match e {
        crate::diagrams::DiagramError::Config {
            field: "alpha_iso",
            message,
        } => HarnessError::validation("--alpha-iso", message),
        other => other.into(),
    })?;
    Ok(cfg)
}

fn write_trajectory<const N: usize>(traj: &Trajectory<N>, path: &Path) -> Result<(), HarnessError> {
    let mut buf = Vec::new();
    traj.write_csv(&mut buf)
        .map_err(|e| HarnessError::Runtime(e.to_string()))?;
    write_file(path, &buf)
}

fn display(path: &Path) -> String {
    path.to_string_lossy().into_owned()
}

struct Outputs<'a> {
    csv: PathBuf,
    svg: Option<(PathBuf, &'a DiagramConfig)>,
}

fn run_one<const N: usize>(
    scenario: &Scenario<N>,
    name: &str,
    technique: &Technique,
    outputs: Outputs<'_>,
    threshold: f64,
) -> Result<TechniqueReport, HarnessError> {
    technique.validate(scenario.period())?;
    let result = run_technique(
        technique,
        &scenario.signal,
        scenario.period(),
        scenario.duration,
    )?;
    let traj = &result.trajectory;
    write_trajectory(traj, &outputs.csv)?;
    let r_half = scenario.viewport.r_half()[0];
    let diagram = match outputs.svg {
        Some((path, cfg)) => {
            let overlay = TargetOverlay::from_targets(
                &scenario.targets(traj.len()),
                &scenario.viewport.r_half(),
            );
            let svg = render_worldscreen_svg(traj, cfg, Some(&overlay))?;
            write_file(&path, svg.as_bytes())?;
            Some(display(&path))
        }
        None => None,
    };
    Ok(TechniqueReport {
        name: name.to_string(),
        technique: technique.kind().to_string(),
        trajectory: display(&outputs.csv),
        diagram,
        max_clipped_step: result.max_clipped_step,
        metrics: MetricsReport::compute(traj, r_half, threshold)?,
    })
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

/// Runs one technique on a scenario; writes the trajectory CSV and a report.
pub fn cmd_run(args: &RunArgs) -> Result<RunReport, HarnessError> {
    check_threshold(args.threshold)?;
    let scenario = load_scenario(&args.scenario, &args.overrides)?;
    let (name, technique) = load_technique(&args.filter)?;
    let started = Instant::now();
    let csv = with_suffix(&args.out, ".csv");
    let run = match &scenario {
        AnyScenario::One(s) => run_one(
            s,
            &name,
            &technique,
            Outputs { csv, svg: None },
            args.threshold,
        )?,
        AnyScenario::Two(s) => run_one(
            s,
            &name,
            &technique,
            Outputs { csv, svg: None },
            args.threshold,
        )?,
    };
    let (rate, duration) = rate_duration(&scenario);
    let report = RunReport {
        scenario: scenario.name().to_string(),
        dimension: scenario.dimension(),
        rate,
        duration,
        run,
    };
    write_file(
        &with_suffix(&args.out, ".report.json"),
        &to_json_pretty(&report),
    )?;
    log::info!("run finished in {:.3} s", started.elapsed().as_secs_f64());
    Ok(report)
}

fn rate_duration(s: &AnyScenario) -> (f64, f64) {
    match s {
        AnyScenario::One(s) => (s.rate, s.duration),
        AnyScenario::Two(s) => (s.rate, s.duration),
    }
}

fn file_safe(name: &str) -> String {
    name.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

/// Runs several techniques on one scenario; writes a trajectory, a
/// world/screen SVG per technique and `report.json` into the output directory.
pub fn cmd_compare(args: &CompareArgs) -> Result<CompareReport, HarnessError> {
    check_threshold(args.threshold)?;
    let scenario = load_scenario(&args.scenario, &args.overrides)?;
    let requested: Vec<String> = if args.techniques.is_empty() {
        DEFAULT_COMPARE_SET.iter().map(|s| s.to_string()).collect()
    } else {
        args.techniques.clone()
    };
    let techniques = requested
        .iter()
        .map(|s| load_technique(s))
        .collect::<Result<Vec<_>, _>>()?;
    let mut names: Vec<String> = Vec::new();
    for (name, _) in &techniques {
        let mut candidate = file_safe(name);
        let mut k = 2;
        while names.contains(&candidate) {
            candidate = format!("{}_{k}", file_safe(name));
            k += 1;
        }
        names.push(candidate);
    }
    let r_half = match &scenario {
        AnyScenario::One(s) => s.viewport.r_half()[0],
        AnyScenario::Two(s) => s.viewport.r_half()[0],
    };
    let cfg = diagram_config(r_half, args.alpha_iso)?;
    let mut reports = Vec::with_capacity(techniques.len());
    for ((_, technique), name) in techniques.iter().zip(&names) {
        let outputs = Outputs {
            csv: args.out.join(format!("{name}.csv")),
            svg: Some((args.out.join(format!("{name}.svg")), &cfg)),
        };
        reports.push(match &scenario {
            AnyScenario::One(s) => run_one(s, name, technique, outputs, args.threshold)?,
            AnyScenario::Two(s) => run_one(s, name, technique, outputs, args.threshold)?,
        });
    }
    let (rate, duration) = rate_duration(&scenario);
    let report = CompareReport {
        scenario: scenario.name().to_string(),
        dimension: scenario.dimension(),
        rate,
        duration,
        techniques: reports,
    };
    write_file(&args.out.join("report.json"), &to_json_pretty(&report))?;
    Ok(report)
}

enum AnyTrajectory {
    One(Trajectory<1>),
    Two(Trajectory<2>),
}

fn load_trajectory(path: &Path) -> Result<AnyTrajectory, HarnessError> {
    let text = read_file(path)?;
    let header = text.lines().next().unwrap_or("");
    let parse_err = |message: String| HarnessError::Parse {
        path: path.to_path_buf(),
        message,
    };
    match csv_dimension(header) {
        Some(1) => Trajectory::read_csv(text.as_bytes()).map(AnyTrajectory::One),
        Some(2) => Trajectory::read_csv(text.as_bytes()).map(AnyTrajectory::Two),
        _ => {
            return Err(parse_err(format!(
                "line 1: expected header `t,u1,v` or `t,u1,u2,v`, found `{}`",
                header.trim()
            )))
        }
    }
    .map_err(|e| parse_err(e.to_string()))
}

fn render<const N: usize>(
    traj: &Trajectory<N>,
    cfg: &DiagramConfig,
    scenario: Option<&Scenario<N>>,
) -> Result<String, HarnessError> {
    let overlay = scenario.map(|s| {
        let targets: Vec<_> = (0..traj.len())
            .map(|i| s.signal.at_sample(i, traj.period()))
            .collect();
        TargetOverlay::from_targets(&targets, &[cfg.r_half; N])
    });
    Ok(render_worldscreen_svg(traj, cfg, overlay.as_ref())?)
}

/// Renders a trajectory CSV as a world/screen SVG.
pub fn cmd_diagram(args: &DiagramArgs) -> Result<(), HarnessError> {
    let cfg = diagram_config(r_half_from_theta(args.theta_deg)?, args.alpha_iso)?;
    let traj = load_trajectory(&args.input)?;
    let scenario = match &args.scenario {
        Some(p) => Some(load_scenario(
            p,
            &ScenarioOverrides {
                theta_deg: args.theta_deg,
                ..Default::default()
            },
        )?),
        None => None,
    };
    let svg = match (&traj, &scenario) {
        (AnyTrajectory::One(t), None) => render(t, &cfg, None)?,
        (AnyTrajectory::Two(t), None) => render(t, &cfg, None)?,
        (AnyTrajectory::One(t), Some(AnyScenario::One(s))) => render(t, &cfg, Some(s))?,
        (AnyTrajectory::Two(t), Some(AnyScenario::Two(s))) => render(t, &cfg, Some(s))?,
        (_, Some(s)) => {
            return Err(HarnessError::validation(
                "--scenario",
                format!(
                    "scenario dimension {} does not match the trajectory",
                    s.dimension()
                ),
            ))
        }
    };
    write_file(&args.out, svg.as_bytes())
}

/// Optical-flow and discontinuity metrics of a trajectory CSV.
pub fn cmd_metrics(args: &MetricsArgs) -> Result<MetricsReport, HarnessError> {
    check_threshold(args.threshold)?;
    let r_half = r_half_from_theta(args.theta_deg)?;
    let report = match load_trajectory(&args.input)? {
        AnyTrajectory::One(t) => MetricsReport::compute(&t, r_half, args.threshold)?,
        AnyTrajectory::Two(t) => MetricsReport::compute(&t, r_half, args.threshold)?,
    };
    if let Some(out) = &args.out {
        write_file(out, &to_json_pretty(&report))?;
    }
    Ok(report)
}

/// Writes the golden vector file.
pub fn cmd_vectors(out: &Path, seed: u64) -> Result<(), HarnessError> {
    write_file(out, &to_json_pretty(&golden_vectors(seed)))
}

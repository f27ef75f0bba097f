use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use hyperzoom::diagrams::DEFAULT_JUMP_THRESHOLD;
use hyperzoom::harness::{
    cmd_compare, cmd_diagram, cmd_metrics, cmd_run, cmd_vectors, CompareArgs, DiagramArgs,
    HarnessError, MetricsArgs, RunArgs, ScenarioOverrides, TechniqueReport,
};

macro_rules! say {
    ($($arg:tt)*) => {{
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

#[derive(Parser)]
#[command(
    name = "hyperzoom",
    version,
    about = "Hyperbolic zoom/pan camera filters, metrics and diagrams"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Overrides {
    /// Override the scenario frame rate (Hz).
    #[arg(long)]
    rate: Option<f64>,
    /// Override the scenario duration (s).
    #[arg(long)]
    duration: Option<f64>,
    /// Override the angle of view on every axis (degrees).
    #[arg(long)]
    theta: Option<f64>,
}

impl From<Overrides> for ScenarioOverrides {
    fn from(o: Overrides) -> Self {
        ScenarioOverrides {
            rate: o.rate,
            duration: o.duration,
            theta_deg: o.theta,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run one technique on a scenario.
    Run {
        #[arg(long)]
        scenario: PathBuf,
        /// Built-in technique name or technique JSON file.
        #[arg(long, default_value = "clipped_cascaded")]
        filter: String,
        /// Output prefix; writes PREFIX.csv and PREFIX.report.json.
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
        #[arg(long, default_value_t = DEFAULT_JUMP_THRESHOLD)]
        threshold: f64,
    },
    /// Run several techniques and draw a world/screen diagram for each.
    Compare {
        #[arg(long)]
        scenario: PathBuf,
        /// Technique name or file; repeat for several. Defaults to the four standard techniques.
        #[arg(long = "filter")]
        filters: Vec<String>,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
        #[arg(long, default_value_t = DEFAULT_JUMP_THRESHOLD)]
        threshold: f64,
        /// Pathline spacing level.
        #[arg(long)]
        alpha_iso: Option<f64>,
    },
    /// Render a trajectory CSV as a world/screen SVG.
    Diagram {
        /// Trajectory CSV.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        alpha_iso: Option<f64>,
        /// Angle of view (degrees); default 90.
        #[arg(long)]
        theta: Option<f64>,
        /// Draw this scenario's target span over the bounds panels.
        #[arg(long)]
        scenario: Option<PathBuf>,
    },
    /// Optical-flow and discontinuity metrics of a trajectory CSV.
    Metrics {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_JUMP_THRESHOLD)]
        threshold: f64,
        /// Write the report here instead of only printing it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the golden vector file.
    Vectors {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn summary(r: &TechniqueReport) -> String {
    format!(
        "{:<20} discontinuities {:>3}  rms_flow mean {:.4} max {:.4}",
        r.name, r.metrics.discontinuities.count, r.metrics.rms_flow.mean, r.metrics.rms_flow.max
    )
}

fn execute(command: Command) -> Result<(), HarnessError> {
    let started = Instant::now();
    match command {
        Command::Run {
            scenario,
            filter,
            out,
            overrides,
            threshold,
        } => {
            let report = cmd_run(&RunArgs {
                scenario,
                filter,
                out,
                overrides: overrides.into(),
                threshold,
            })?;
            say!("{}", summary(&report.run));
            say!("wrote {}", report.run.trajectory);
        }
        Command::Compare {
            scenario,
            filters,
            out,
            overrides,
            threshold,
            alpha_iso,
        } => {
            let report = cmd_compare(&CompareArgs {
                scenario,
                techniques: filters,
                out: out.clone(),
                overrides: overrides.into(),
                threshold,
                alpha_iso,
            })?;
            for t in &report.techniques {
                say!("{}", summary(t));
            }
            say!("wrote {}", out.join("report.json").display());
        }
        Command::Diagram {
            input,
            out,
            alpha_iso,
            theta,
            scenario,
        } => {
            cmd_diagram(&DiagramArgs {
                input,
                out: out.clone(),
                alpha_iso,
                theta_deg: theta,
                scenario,
            })?;
            say!("wrote {}", out.display());
        }
        Command::Metrics {
            input,
            theta,
            threshold,
            out,
        } => {
            let report = cmd_metrics(&MetricsArgs {
                input,
                theta_deg: theta,
                threshold,
                out,
            })?;
            say!(
                "{}",
                serde_json::to_string_pretty(&report).expect("serializable")
            );
        }
        Command::Vectors { out, seed } => {
            cmd_vectors(&out, seed)?;
            say!("wrote {}", out.display());
        }
    }
    say!("elapsed {:.3} s", started.elapsed().as_secs_f64());
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

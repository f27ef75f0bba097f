//! File formats and commands behind the `hyperzoom` binary.

mod commands;
mod report;
mod scenario;
mod vectors;

pub use commands::{
    cmd_compare, cmd_diagram, cmd_metrics, cmd_run, cmd_vectors, CompareArgs, DiagramArgs,
    MetricsArgs, RunArgs,
};
pub use report::{
    CompareReport, DiscontinuitySummary, FlowSummary, MetricsReport, RunReport, TechniqueReport,
};
pub use scenario::{
    builtin_technique, load_scenario, load_technique, parse_scenario, parse_technique, AnyScenario,
    Scenario, ScenarioOverrides, BUILTIN_TECHNIQUES, DEFAULT_COMPARE_SET,
};
pub use vectors::{golden_vectors, GoldenVectors, VECTORS_SCHEMA_VERSION};

use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    /// A field of an input file or flag failed validation.
    #[error("{field}: {message}")]
    Validation { field: String, message: String },
    /// An input file is not well-formed.
    #[error("{}: {message}", path.display())]
    Parse { path: PathBuf, message: String },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Runtime(String),
}

impl HarnessError {
    pub(crate) fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        HarnessError::Validation {
            field: field.into(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        HarnessError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    /// 1 for bad input, 2 for failures while running.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Validation { .. } | HarnessError::Parse { .. } => 1,
            HarnessError::Io { .. } | HarnessError::Runtime(_) => 2,
        }
    }
}

impl From<crate::filters::ConfigError> for HarnessError {
    fn from(e: crate::filters::ConfigError) -> Self {
        HarnessError::Validation {
            field: e.field,
            message: e.message,
        }
    }
}

impl From<crate::filters::FilterError> for HarnessError {
    fn from(e: crate::filters::FilterError) -> Self {
        match e {
            crate::filters::FilterError::Config(c) => c.into(),
            other => HarnessError::Runtime(other.to_string()),
        }
    }
}

impl From<crate::diagrams::DiagramError> for HarnessError {
    fn from(e: crate::diagrams::DiagramError) -> Self {
        match e {
            crate::diagrams::DiagramError::Config { field, message } => {
                HarnessError::validation(field, message)
            }
            other => HarnessError::Runtime(other.to_string()),
        }
    }
}

pub(crate) fn read_file(path: &Path) -> Result<String, HarnessError> {
    std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))
}

pub(crate) fn write_file(path: &Path, contents: &[u8]) -> Result<(), HarnessError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    }
    std::fs::write(path, contents).map_err(|e| HarnessError::io(path, e))
}

pub(crate) fn to_json_pretty<T: serde::Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("report types serialize");
    out.push(b'\n');
    out
}

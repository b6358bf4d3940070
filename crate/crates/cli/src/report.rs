use conesurf::tolerance::Tolerances;
use conesurf::Error;
use serde::Serialize;
use serde_json::Value;
use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("surface failed validation: {0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("io error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    /// 2 for bad input or failed computations, 3 when a resource cap was hit.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::ResourceCap(_) | Error::IterationCap(_)) => 3,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Invalid(_) => "validation",
            CliError::Io { .. } => "io",
            CliError::Core(e) => match e {
                Error::Schema(_) => "schema",
                Error::Geometry(_) => "geometry",
                Error::Topology(_) => "topology",
                Error::UnknownBuiltin(_) => "unknown_builtin",
                Error::BoundaryHit { .. } => "boundary_hit",
                Error::StartOnCone => "start_on_cone",
                Error::ResourceCap(_) => "resource_cap",
                Error::Escape(_) => "escape",
                Error::Unreachable(_) => "unreachable",
                Error::Word(_) => "word",
                Error::IterationCap(_) => "iteration_cap",
                Error::Infeasible(_) => "infeasible",
                Error::InvalidArgument(_) => "invalid_argument",
            },
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Everything needed to rerun an experiment. Written into every report.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentConfig {
    pub command: String,
    pub surface: Value,
    pub params: Value,
    pub tolerances: Tolerances,
    pub seed: u64,
    pub max_cells: usize,
    pub json_out: Option<PathBuf>,
    pub svg_out: Option<PathBuf>,
}

#[derive(Serialize)]
pub struct Report<'a> {
    pub version: &'static str,
    pub config: &'a ExperimentConfig,
    pub ok: bool,
    pub result: Value,
}

pub fn write_file(path: &PathBuf, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.clone(), source })
}

/// Pretty JSON of the report, to `--json-out` or stdout.
pub fn emit(cfg: &ExperimentConfig, ok: bool, result: Value) -> CliResult<()> {
    let report = Report { version: env!("CARGO_PKG_VERSION"), config: cfg, ok, result };
    let text = serde_json::to_string_pretty(&report).expect("reports serialize") + "\n";
    match &cfg.json_out {
        Some(p) => write_file(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

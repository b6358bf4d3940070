mod args;
mod commands;
mod report;

use clap::{Args, Parser, Subcommand};
use conesurf::tolerance::{Tolerances, EPS_ANG, EPS_INC, EPS_LEN, EPS_STOP, EPS_TIE, MAX_CELLS};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "conesurf", version, about = "Geodesics on flat cone surfaces")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Built-in surface name.
    #[arg(long, global = true, conflicts_with = "file")]
    pub builtin: Option<String>,
    /// Surface JSON file.
    #[arg(long, global = true)]
    pub file: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub json_out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub svg_out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = MAX_CELLS)]
    pub max_cells: usize,
    #[arg(long, global = true, default_value_t = EPS_LEN)]
    pub eps_len: f64,
    #[arg(long, global = true, default_value_t = EPS_INC)]
    pub eps_inc: f64,
    #[arg(long, global = true, default_value_t = EPS_ANG)]
    pub eps_ang: f64,
    #[arg(long, global = true, default_value_t = EPS_TIE)]
    pub eps_tie: f64,
    #[arg(long, global = true, default_value_t = EPS_STOP)]
    pub eps_stop: f64,
}

impl Global {
    pub fn tolerances(&self) -> Tolerances {
        Tolerances { len: self.eps_len, inc: self.eps_inc, ang: self.eps_ang, tie: self.eps_tie, stop: self.eps_stop }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check gluings, cone angles and Gauss-Bonnet.
    Validate {
        /// Surface file; same as --file.
        path: Option<PathBuf>,
    },
    /// Run the self-check suites on the built-in corpus.
    Verify {
        /// Suite to run; repeat for several. All suites by default.
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// Built-in surfaces to use; repeat for several.
        #[arg(long = "corpus")]
        corpus: Vec<String>,
        #[arg(long, default_value_t = 10)]
        queries: usize,
        #[arg(long)]
        fault_injection: bool,
    },
    /// Trace straight rays from a point.
    Trace {
        #[arg(long)]
        at: String,
        /// Direction in radians, in the chart of the start polygon.
        #[arg(long, conflicts_with = "sweep")]
        angle: Option<f64>,
        /// Trace this many rays in seeded random directions.
        #[arg(long)]
        sweep: Option<usize>,
        #[arg(long)]
        length: f64,
    },
    /// Develop the universal cover around a point.
    Unfold {
        #[arg(long)]
        at: String,
        #[arg(long)]
        radius: f64,
    },
    /// Shortest paths between two points in a homotopy class.
    Shortest {
        #[arg(long)]
        from: String,
        /// Defaults to the start point.
        #[arg(long)]
        to: Option<String>,
        /// Side word of the class, e.g. "a b' a".
        #[arg(long, default_value = "")]
        word: String,
        /// Repeat the word this many times.
        #[arg(long, default_value_t = 1)]
        power: usize,
        /// Search radius. Grown automatically when omitted.
        #[arg(long)]
        radius: Option<f64>,
        /// Enumerate every minimizer of the class within the radius and
        /// report the extremal pair and envelope.
        #[arg(long, requires = "radius")]
        enumerate: bool,
    },
    /// Closed geodesics in a free homotopy class.
    Closed {
        #[arg(long)]
        word: String,
        /// Report every minimizer found rather than just the leftmost.
        #[arg(long)]
        all_ties: bool,
    },
    /// How closely a family of closed geodesics follows a fixed one.
    Density {
        /// Word of the target closed geodesic.
        #[arg(long)]
        axis: String,
        /// Family pattern; `^n` repeats the preceding token or group.
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        /// Half width of the window along the target.
        #[arg(long, default_value_t = 2.0)]
        window: f64,
        /// Point the window is centered near. Defaults to the middle of
        /// polygon 0's first edge.
        #[arg(long)]
        at: Option<String>,
        #[arg(long)]
        csv_out: Option<PathBuf>,
    },
    /// Enumerate the σ/τ concatenations on the built-in example and check each one.
    DemoSigma {
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("conesurf: {e}");
            let reported = matches!(e, report::CliError::Invalid(_));
            if let (Some(path), false) = (&cli.global.json_out, reported) {
                let doc = serde_json::json!({ "ok": false, "error": { "kind": e.kind(), "message": e.to_string() } });
                let _ = std::fs::write(path, doc.to_string() + "\n");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

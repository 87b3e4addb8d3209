mod commands;
mod demo;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use flowleaf::flow::FlowError;
use flowleaf::graph::GraphError;
use flowleaf::io::IoError;
use flowleaf::maps::MapError;
use flowleaf::{Point, Rect};

/// Leaf spaces of planar free mappings: build, compare, collapse, render
/// and check them numerically.
#[derive(Debug, Parser)]
#[command(name = "flowleaf", version)]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a leaf space (or a `.flow.json` flow spec) for validity.
    Validate { file: PathBuf },
    /// Decide whether two leaf spaces come from conjugate mappings, up to inverse.
    Compare { a: PathBuf, b: PathBuf },
    /// Contract a leaf space to a point and print the trace.
    Collapse {
        file: PathBuf,
        /// Write one SVG per state into this directory.
        #[arg(long)]
        frames: Option<PathBuf>,
    },
    /// Build the leaf space of a flow spec (file or built-in name).
    Build {
        flowspec: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Reverse the orientation of a leaf space.
    Reverse {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Count the fundamental regions of a leaf space.
    CountRegions { file: PathBuf },
    /// Draw the leaves of a flow as SVG.
    RenderFoliation {
        flowspec: String,
        /// Drawing window as "xmin,xmax,ymin,ymax".
        #[arg(long, value_parser = parse_rect, default_value = "-3,3,-3,3")]
        region: Rect,
        /// Approximate number of leaves across the window.
        #[arg(long, default_value_t = 9)]
        density: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Draw a leaf space as SVG.
    RenderLeafspace {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a numerical verification suite.
    Verify {
        #[command(subcommand)]
        suite: verify::Suite,
    },
    /// End-to-end walkthrough for one flow.
    Demo {
        /// Built-in name or flow-spec file.
        #[arg(default_value = "reeb")]
        flowspec: String,
    },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Closed-form flow maps.
    #[default]
    Exact,
    /// Adaptive Runge-Kutta integration of the vector field.
    Rk4,
}

/// Raised for arguments that parse but make no sense together.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn parse_floats<const N: usize>(s: &str, what: &str) -> Result<[f64; N], String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    let n = v.len();
    let arr: [f64; N] = v
        .try_into()
        .map_err(|_| format!("expected {what}, got {n} numbers"))?;
    if arr.iter().all(|x| x.is_finite()) {
        Ok(arr)
    } else {
        Err(format!("{s:?} contains a non-finite number"))
    }
}

pub fn parse_rect(s: &str) -> Result<Rect, String> {
    let [x_min, x_max, y_min, y_max] = parse_floats(s, "xmin,xmax,ymin,ymax")?;
    let r = Rect::new(x_min, x_max, y_min, y_max);
    if !r.is_proper() {
        return Err(format!("rectangle {s:?} is empty"));
    }
    Ok(r)
}

pub fn parse_segment(s: &str) -> Result<(Point, Point), String> {
    let [x0, y0, x1, y1] = parse_floats(s, "x0,y0,x1,y1")?;
    Ok((Point::new(x0, y0), Point::new(x1, y1)))
}

/// Outcome of a successful run: affirmative (exit 0) or negative (exit 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

const USAGE: u8 = 2;
const VALIDATION: u8 = 3;
const NUMERIC: u8 = 4;

fn flow_code(e: &FlowError) -> u8 {
    match e {
        FlowError::InvalidSpec(_) => VALIDATION,
        FlowError::StepUnderflow { .. } | FlowError::NonFinite { .. } => NUMERIC,
        FlowError::NotAVerticalLeaf(_) | FlowError::BadArgument(_) => USAGE,
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<FlowError>() {
            return flow_code(e);
        }
        if let Some(e) = cause.downcast_ref::<MapError>() {
            return match e {
                MapError::Singular(_) => VALIDATION,
                MapError::NonFinite(_) => NUMERIC,
                MapError::BadArgument(_) => USAGE,
                MapError::Flow(f) => flow_code(f),
            };
        }
        if cause.is::<IoError>() || cause.is::<GraphError>() {
            return VALIDATION;
        }
        if cause.is::<UsageError>() || cause.is::<std::io::Error>() {
            return USAGE;
        }
    }
    USAGE
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(Verdict::Yes) => ExitCode::SUCCESS,
        Ok(Verdict::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

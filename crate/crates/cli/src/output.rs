use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use flowleaf::io::{parse_flowspec, parse_leafspace};
use flowleaf::{FlowSpec, LeafSpaceGraph};
use serde::Serialize;

/// Seventeen significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn load_leafspace(path: &Path) -> Result<LeafSpaceGraph> {
    let text = read_text(path)?;
    parse_leafspace(&text).with_context(|| format!("in {}", path.display()))
}

/// A path to a flow-spec file, or a built-in name such as `reeb`.
pub fn load_flowspec(arg: &str) -> Result<FlowSpec> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = read_text(path)?;
        return parse_flowspec(&text).with_context(|| format!("in {arg}"));
    }
    Ok(parse_flowspec(arg)?)
}

/// Writes to `output` if given, otherwise to stdout.
pub fn emit(output: Option<&Path>, content: &str) -> Result<()> {
    match output {
        Some(path) => {
            fs::write(path, content).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

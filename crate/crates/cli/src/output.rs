use std::fs;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;
use sidigraph::format::parse;
use sidigraph::graph::SignedDigraph;

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

pub fn read_graph(path: &Path) -> Result<SignedDigraph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Pretty JSON on stdout. A closed pipe (`| head`) is not an error.
pub fn print_json<T: Serialize>(value: &T) {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    let _ = writeln!(io::stdout().lock(), "{text}");
}

/// Fixed-width float for text output.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.12}")
}

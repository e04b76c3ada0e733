//! Deterministic CSV rendering: comma separator, `.` decimal, LF endings.
//!
//! Analytic probabilities carry 15 significant digits, simulated
//! probabilities 6; threshold columns use the shortest round-trip form.

use crate::config::CliError;
use std::path::Path;

/// 15 significant digits for analytic values.
pub fn sig15(x: f64) -> String {
    format!("{x:.14e}")
}

/// 6 significant digits for simulated probabilities.
pub fn sig6(x: f64) -> String {
    format!("{x:.5e}")
}

/// Shortest round-trip form for thresholds and side lengths.
pub fn num(x: f64) -> String {
    format!("{x}")
}

/// Writes the rendered CSV to a file, or to stdout when no path is given.
pub fn emit(body: &str, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

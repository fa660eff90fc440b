//! Point-cloud and report CSV formats.
//!
//! Clouds are one point per row, comma-separated, full precision
//! (17 significant digits), with an optional `# d=<d>` header; lines starting
//! with `#` are comments. The format round-trips f64 coordinates exactly.

use std::fs;
use std::path::Path;

use cloudsig_core::{PointCloud, Vector};

use crate::CliError;

/// Full-precision float formatting used in every CSV: 17 significant digits
/// round-trip any f64 exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_cloud(path: &Path, cloud: &PointCloud) -> Result<(), CliError> {
    let mut out = format!("# d={}\n", cloud.dim());
    for p in cloud.points() {
        let row: Vec<String> = p.iter().map(|&x| fmt_f64(x)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

pub fn read_cloud(path: &Path) -> Result<PointCloud, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let mut declared_d: Option<usize> = None;
    let mut points: Vec<Vector> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim();
            if let Some(dv) = rest.strip_prefix("d=") {
                declared_d = dv.trim().parse::<usize>().ok();
            }
            continue;
        }
        let coords: Result<Vec<f64>, _> =
            line.split(',').map(|tok| tok.trim().parse::<f64>()).collect();
        let coords = coords.map_err(|e| {
            CliError::usage(format!("{}:{}: bad number: {e}", path.display(), lineno + 1))
        })?;
        points.push(Vector::from_vec(coords));
    }
    if points.is_empty() {
        return Err(CliError::usage(format!("{}: no points", path.display())));
    }
    if let Some(d) = declared_d {
        if points.iter().any(|p| p.len() != d) {
            return Err(CliError::usage(format!(
                "{}: row width disagrees with header d={d}",
                path.display()
            )));
        }
    }
    Ok(PointCloud::new(points)?)
}

/// Serialize a table with a header row; every cell already formatted.
pub fn write_table(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

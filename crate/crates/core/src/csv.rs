//! CSV emitters. Every table has a header row, LF line endings and floats in
//! `{:.16e}` form (17 significant digits); files are written atomically.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use crate::distribution::{Histogram, PositionDistribution};
use crate::error::Result;
use crate::simulation::ConvergenceRow;

fn float(x: f64) -> String {
    format!("{x:.16e}")
}

/// `m,probability`; sites whose probability is at or below `floor` are skipped.
pub fn distribution_csv(dist: &PositionDistribution, floor: f64) -> String {
    let mut out = String::from("m,probability\n");
    for (m, p) in dist.sites() {
        if p.abs() > floor {
            let _ = writeln!(out, "{m},{}", float(p));
        }
    }
    out
}

/// `bin_left,bin_right,mass`
pub fn histogram_csv(hist: &Histogram) -> String {
    let mut out = String::from("bin_left,bin_right,mass\n");
    for (i, mass) in hist.masses.iter().enumerate() {
        let _ = writeln!(out, "{},{},{}", float(hist.edges[i]), float(hist.edges[i + 1]), float(*mass));
    }
    out
}

/// `n,s,value`
pub fn moments_csv(rows: &[(usize, u32, f64)]) -> String {
    let mut out = String::from("n,s,value\n");
    for &(n, s, v) in rows {
        let _ = writeln!(out, "{n},{s},{}", float(v));
    }
    out
}

/// One line of a simulated-versus-quadrature moment table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentRow {
    pub s: usize,
    pub simulated: f64,
    pub quadrature: f64,
}

/// `s,simulated,quadrature,abs_diff`
pub fn moment_table_csv(rows: &[MomentRow]) -> String {
    let mut out = String::from("s,simulated,quadrature,abs_diff\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.s,
            float(r.simulated),
            float(r.quadrature),
            float((r.simulated - r.quadrature).abs())
        );
    }
    out
}

/// `N,max_entry_error,predicted_sigma`
pub fn convergence_csv(rows: &[ConvergenceRow]) -> String {
    let mut out = String::from("N,max_entry_error,predicted_sigma\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{}",
            r.samples,
            float(r.max_entry_error),
            float(r.predicted_sigma)
        );
    }
    out
}

/// Writes `contents` to a sibling temporary file and renames it over `path`.
pub fn write_atomic(path: impl AsRef<Path>, contents: &str) -> Result<()> {
    let path = path.as_ref();
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".into());
    let tmp = path.with_file_name(format!(".{name}.tmp{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })?;
    Ok(())
}

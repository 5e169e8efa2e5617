//! Error tables, CSV emission and run configuration shared by the library
//! and the command-line front end.
//!
//! Numbers are written with Rust's shortest round-trip scientific
//! formatting (`{:e}`), so parsing an emitted file recovers every value
//! bit-exactly and reruns with identical inputs emit byte-identical files.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Result, TfchError};
use crate::grid::Grid1D;
use crate::model::{Equation, InitialCondition};
use crate::reference::ref_exact;
use crate::series::FracSeries;

/// One row of an absolute-error table (the published table's shape).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorRow {
    pub t: f64,
    pub x: f64,
    pub abs_err_nim: f64,
    pub abs_err_qham: f64,
}

/// One row of a solution dump; `u_exact` is present only for the
/// fourth-order kink problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolutionRow {
    pub x: f64,
    pub t: f64,
    pub u_nim: f64,
    pub u_qham: f64,
    pub u_exact: Option<f64>,
}

/// Grid node index whose coordinate equals `x` (to a 1e-9 snap).
pub fn node_index(grid: &Grid1D, x: f64) -> Result<usize> {
    let pos = (x - grid.x_min()) / grid.dx();
    let i = pos.round();
    if i < 0.0 || i as usize >= grid.n_points() || (grid.node(i as usize) - x).abs() > 1e-9 {
        return Err(TfchError::Config(format!(
            "x = {x} is not a node of the grid [{}, {}] with {} points",
            grid.x_min(),
            grid.x_max(),
            grid.n_points()
        )));
    }
    Ok(i as usize)
}

/// Absolute errors of two engine series against the exact kink
/// tanh((x+t)/sqrt2), at each (t, x) pair.
///
/// Only meaningful for the fourth-order kink problem at alpha = mu = 1
/// (the single case with an exact solution); each x must be a grid node.
/// At t = 0 both series collapse to the sampled initial condition, so
/// residues at or below the 1e-10 sampling floor are reported as zero.
pub fn build_error_table(
    times: &[f64],
    xs: &[f64],
    engine_nim: &FracSeries,
    engine_qham: &FracSeries,
) -> Result<Vec<ErrorRow>> {
    let grid = engine_nim.grid();
    if engine_qham.grid() != grid {
        return Err(TfchError::Structural(
            "error table requires both series on one grid".into(),
        ));
    }
    let mut rows = Vec::with_capacity(times.len() * xs.len());
    for &t in times {
        if !(t >= 0.0) {
            return Err(TfchError::Config(format!("times must be >= 0, got {t}")));
        }
        let un = engine_nim.eval(t)?;
        let uq = engine_qham.eval(t)?;
        for &x in xs {
            let i = node_index(&grid, x)?;
            let exact = ref_exact(x, t);
            let mut en = (un.value(i) - exact).abs();
            let mut eq = (uq.value(i) - exact).abs();
            if t == 0.0 {
                if en <= 1e-10 {
                    en = 0.0;
                }
                if eq <= 1e-10 {
                    eq = 0.0;
                }
            }
            if !en.is_finite() || !eq.is_finite() {
                return Err(TfchError::Numerical {
                    context: format!("error table at t = {t}, x = {x}"),
                    index: i,
                });
            }
            rows.push(ErrorRow { t, x, abs_err_nim: en, abs_err_qham: eq });
        }
    }
    Ok(rows)
}

fn fmt(v: f64) -> String {
    format!("{v:e}")
}

/// Write an error table as CSV (`t,x,abs_err_nim,abs_err_qham`).
pub fn write_error_csv<W: Write>(mut w: W, rows: &[ErrorRow]) -> Result<()> {
    writeln!(w, "t,x,abs_err_nim,abs_err_qham")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{}",
            fmt(r.t),
            fmt(r.x),
            fmt(r.abs_err_nim),
            fmt(r.abs_err_qham)
        )?;
    }
    Ok(())
}

/// Write a solution dump as CSV (`x,t,u_nim,u_qham[,u_exact]`). Either all
/// rows carry an exact column or none do.
pub fn write_solution_csv<W: Write>(mut w: W, rows: &[SolutionRow]) -> Result<()> {
    let with_exact = rows.first().map(|r| r.u_exact.is_some());
    if let Some(flag) = with_exact {
        if rows.iter().any(|r| r.u_exact.is_some() != flag) {
            return Err(TfchError::Structural(
                "solution rows disagree on the presence of the exact column".into(),
            ));
        }
    }
    if with_exact.unwrap_or(false) {
        writeln!(w, "x,t,u_nim,u_qham,u_exact")?;
    } else {
        writeln!(w, "x,t,u_nim,u_qham")?;
    }
    for r in rows {
        match r.u_exact {
            Some(e) => writeln!(
                w,
                "{},{},{},{},{}",
                fmt(r.x),
                fmt(r.t),
                fmt(r.u_nim),
                fmt(r.u_qham),
                fmt(e)
            )?,
            None => writeln!(w, "{},{},{},{}", fmt(r.x), fmt(r.t), fmt(r.u_nim), fmt(r.u_qham))?,
        }
    }
    Ok(())
}

/// Write rows to a file path (error-table layout).
pub fn export_error_csv(path: &Path, rows: &[ErrorRow]) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_error_csv(std::io::BufWriter::new(file), rows)
}

/// Write rows to a file path (solution-dump layout).
pub fn export_solution_csv(path: &Path, rows: &[SolutionRow]) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_solution_csv(std::io::BufWriter::new(file), rows)
}

fn parse_f64(s: &str, line: usize) -> Result<f64> {
    s.trim()
        .parse()
        .map_err(|_| TfchError::Config(format!("line {line}: `{s}` is not a number")))
}

/// Parse an error-table CSV produced by [`write_error_csv`].
pub fn read_error_csv(text: &str) -> Result<Vec<ErrorRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, "t,x,abs_err_nim,abs_err_qham")) => {}
        other => {
            return Err(TfchError::Config(format!(
                "missing error-table header, found {:?}",
                other.map(|(_, l)| l)
            )))
        }
    }
    let mut rows = Vec::new();
    for (idx, line) in lines {
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 4 {
            return Err(TfchError::Config(format!("line {}: expected 4 fields", idx + 1)));
        }
        rows.push(ErrorRow {
            t: parse_f64(f[0], idx + 1)?,
            x: parse_f64(f[1], idx + 1)?,
            abs_err_nim: parse_f64(f[2], idx + 1)?,
            abs_err_qham: parse_f64(f[3], idx + 1)?,
        });
    }
    Ok(rows)
}

/// Parse a solution-dump CSV produced by [`write_solution_csv`].
pub fn read_solution_csv(text: &str) -> Result<Vec<SolutionRow>> {
    let mut lines = text.lines().enumerate();
    let with_exact = match lines.next() {
        Some((_, "x,t,u_nim,u_qham")) => false,
        Some((_, "x,t,u_nim,u_qham,u_exact")) => true,
        other => {
            return Err(TfchError::Config(format!(
                "missing solution header, found {:?}",
                other.map(|(_, l)| l)
            )))
        }
    };
    let want = if with_exact { 5 } else { 4 };
    let mut rows = Vec::new();
    for (idx, line) in lines {
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != want {
            return Err(TfchError::Config(format!(
                "line {}: expected {want} fields",
                idx + 1
            )));
        }
        rows.push(SolutionRow {
            x: parse_f64(f[0], idx + 1)?,
            t: parse_f64(f[1], idx + 1)?,
            u_nim: parse_f64(f[2], idx + 1)?,
            u_qham: parse_f64(f[3], idx + 1)?,
            u_exact: if with_exact { Some(parse_f64(f[4], idx + 1)?) } else { None },
        });
    }
    Ok(rows)
}

/// Parse a `key = value` configuration file: one assignment per line,
/// blank lines and `#` comments ignored, later keys override earlier ones.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(TfchError::Config(format!(
                "config line {}: expected `key = value`, got `{raw}`",
                idx + 1
            )));
        };
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() || value.is_empty() {
            return Err(TfchError::Config(format!(
                "config line {}: empty key or value",
                idx + 1
            )));
        }
        map.insert(key.to_string(), value.to_string());
    }
    Ok(map)
}

/// Which engine a run primarily configures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodSel {
    Nim,
    Qham,
}

/// What a run's output is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CompareTarget {
    Exact,
    Reference,
    #[default]
    None,
}

/// Fully resolved configuration of one `solve` run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub equation: Equation,
    pub ic: InitialCondition,
    pub method: MethodSel,
    pub alpha: f64,
    pub mu: f64,
    pub h: f64,
    pub n: u32,
    pub orders: usize,
    pub grid: Grid1D,
    pub times: Vec<f64>,
    pub out: Option<PathBuf>,
    pub compare: CompareTarget,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(TfchError::Config(format!(
                "alpha must lie in (0, 1], got {}",
                self.alpha
            )));
        }
        if !self.h.is_finite() || self.h == 0.0 {
            return Err(TfchError::Config(format!("h must be finite and nonzero, got {}", self.h)));
        }
        if self.n < 1 {
            return Err(TfchError::Config("n must be >= 1".into()));
        }
        if self.orders < 1 {
            return Err(TfchError::Config("orders must be >= 1".into()));
        }
        if self.times.is_empty() {
            return Err(TfchError::Config("at least one evaluation time is required".into()));
        }
        if let Some(&t) = self.times.iter().find(|t| !(**t >= 0.0 && t.is_finite())) {
            return Err(TfchError::Config(format!(
                "evaluation times must be finite and >= 0, got {t}"
            )));
        }
        Ok(())
    }
}

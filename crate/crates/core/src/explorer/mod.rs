//! Limiting sequences and conjecture probes.
//!
//! Every experiment returns a table whose rows follow the input order, plus
//! a [`Verdict`] that states what the numbers support at the grid they were
//! computed on. Rows are solved concurrently on the ambient rayon pool; run
//! inside `ThreadPool::install` to bound the number of workers.

mod hausdorff;
mod rectangles;
mod reuleaux;
mod shrinking;

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

pub use hausdorff::{
    hausdorff_continuity_experiment, inscribed_polygons, perturbation_regression, scaled_copies,
    HausdorffRow, HausdorffTable, PerturbationRow, PerturbationTable,
};
pub use rectangles::{degenerate_rectangles, RectangleRow, RectangleTable};
pub use reuleaux::{reuleaux_scan, ReuleauxRow, ReuleauxTable};
pub use shrinking::{shrinking_sequence, LimitFit, ShrinkingRow, ShrinkingTable, ThinShape};

use crate::bounds::slack;
use crate::eigensolver::{InnerSolver, SolverConfig};
use crate::table::{to_csv, write_json, write_series};
use crate::Result;

/// What a table says about the statement it probes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Supports,
    Contradicts,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    /// The statement being probed.
    pub claim: String,
    pub status: Status,
    /// The numbers behind the status.
    pub detail: String,
}

/// Discretization the numerical rows were computed with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMeta {
    pub h: f64,
    #[serde(rename = "W")]
    pub stencil_width: usize,
    pub inner: InnerSolver,
    pub tol_bracket: f64,
    /// Free-form remarks, e.g. the direction of a known bias.
    pub notes: Vec<String>,
}

impl RunMeta {
    pub fn new(cfg: &SolverConfig<f64>) -> Self {
        Self {
            h: cfg.h,
            stencil_width: cfg.stencil_width,
            inner: cfg.inner,
            tol_bracket: cfg.tol_bracket,
            notes: Vec::new(),
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

/// An `(x, y)` series for external plotting.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub x: &'static str,
    pub y: &'static str,
    pub points: Vec<(f64, f64)>,
}

/// Common face of the experiment tables.
pub trait Experiment: Serialize {
    /// File stem for the emitted files.
    fn name(&self) -> &'static str;
    /// Rows as CSV with a header.
    fn rows_csv(&self) -> Result<String>;
    fn series(&self) -> Vec<Series>;
    fn verdict(&self) -> &Verdict;
    /// Every row lies between the Jung floor and the diameter cap, up to slack.
    fn within_bounds(&self) -> bool;
}

/// Writes `<name>.csv`, `<name>.json` and, with `plot_data`, one
/// `<name>_<series>.csv` per series. Returns the written paths.
pub fn write_experiment<E: Experiment>(e: &E, dir: &Path, plot_data: bool) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut out = Vec::new();
    let csv = dir.join(format!("{}.csv", e.name()));
    std::fs::write(&csv, e.rows_csv()?)?;
    out.push(csv);
    let json = dir.join(format!("{}.json", e.name()));
    write_json(e, &json)?;
    out.push(json);
    if plot_data {
        for s in e.series() {
            let p = dir.join(format!("{}_{}.csv", e.name(), s.name));
            write_series(&p, s.x, s.y, &s.points)?;
            out.push(p);
        }
    }
    Ok(out)
}

fn csv_of<R: Serialize>(rows: &[R]) -> Result<String> {
    to_csv(rows)
}

fn slack_for(cfg: &SolverConfig<f64>, diam: f64) -> Result<f64> {
    slack(cfg.h, diam, cfg.stencil_width)
}

fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

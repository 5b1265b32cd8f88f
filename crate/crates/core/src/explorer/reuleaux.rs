//! Reuleaux polygons of fixed width.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{csv_of, slack_for, Experiment, RunMeta, Series, Status, Verdict};
use crate::eigensolver::{solve, SolverConfig};
use crate::geometry::DomainSpec;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReuleauxRow {
    pub n: usize,
    pub mu: f64,
    pub mu_low: f64,
    pub mu_high: f64,
    /// `π²/d²`, the value of the disk of diameter `d`.
    pub cap: f64,
    /// `(3/4)·π²/d²`.
    pub floor: f64,
    /// `cap − mu_high`.
    pub margin: f64,
    pub slack: f64,
    /// `floor − slack ≤ mu ≤ cap + slack`.
    pub within_bounds: bool,
    /// `mu_high < cap − slack`.
    pub strictly_below_cap: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReuleauxTable {
    pub width: f64,
    pub arc_samples: usize,
    pub meta: RunMeta,
    pub rows: Vec<ReuleauxRow>,
    /// The `n = 3` row has the smallest `mu` of the table.
    pub triangle_is_minimum: bool,
    /// `mu` never drops by more than twice the slack as `n` grows.
    pub monotone_within_slack: bool,
    pub verdict: Verdict,
}

/// Solves the width-`d` Reuleaux `n`-gons and compares them with the disk
/// value and the Jung floor.
pub fn reuleaux_scan(d: f64, n_values: &[usize], arc_samples: usize, cfg: &SolverConfig<f64>) -> Result<ReuleauxTable> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::InvalidParameter(format!("width must be positive, got {d}")));
    }
    if n_values.is_empty() {
        return Err(Error::InvalidParameter("no polygon orders given".into()));
    }
    cfg.validate()?;
    let cap = PI * PI / (d * d);
    let floor = 0.75 * cap;
    let rows = n_values
        .par_iter()
        .map(|&n| {
            let dom = DomainSpec::reuleaux(n, d, arc_samples);
            dom.validate()?;
            let est = solve(&dom, cfg)?;
            let slack = slack_for(cfg, d)?;
            Ok(ReuleauxRow {
                n,
                mu: est.mu,
                mu_low: est.mu_low,
                mu_high: est.mu_high,
                cap,
                floor,
                margin: cap - est.mu_high,
                slack,
                within_bounds: floor - slack <= est.mu && est.mu <= cap + slack,
                strictly_below_cap: est.mu_high < cap - slack,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut sorted: Vec<&ReuleauxRow> = rows.iter().collect();
    sorted.sort_by_key(|r| r.n);
    let monotone = sorted.windows(2).all(|w| w[1].mu >= w[0].mu - 2.0 * w[0].slack);
    let tri = rows.iter().find(|r| r.n == 3);
    let others_min = rows
        .iter()
        .filter(|r| r.n != 3)
        .map(|r| r.mu)
        .fold(f64::INFINITY, f64::min);
    let triangle_is_minimum = tri.is_some_and(|t| t.mu <= others_min);
    let status = match tri {
        None => Status::Inconclusive,
        Some(_) if rows.len() < 2 => Status::Inconclusive,
        Some(_) if triangle_is_minimum => Status::Supports,
        Some(t) if rows.iter().any(|r| r.n != 3 && r.mu < t.mu - t.slack) => Status::Contradicts,
        Some(_) => Status::Inconclusive,
    };
    let detail = match tri {
        Some(t) => format!(
            "μ(Reuleaux-3) = {:.6} at h = {}, W = {}; smallest other row {:.6}; margin below π²/d² = {:.6} \
             ({:.2}% of π²/d²). Existence of a minimizer is not decidable from a scan; the observed \
             minimum over the scanned family is at n = {}",
            t.mu,
            cfg.h,
            cfg.stencil_width,
            others_min,
            t.margin,
            100.0 * t.margin / cap,
            sorted
                .iter()
                .min_by(|a, b| a.mu.total_cmp(&b.mu))
                .map(|r| r.n)
                .unwrap_or(3)
        ),
        None => "no n = 3 row in the scan".into(),
    };
    let meta = RunMeta::new(cfg).with_note(
        "bodies are approximated by inscribed polygons, so each mu is biased upward relative to \
         the true Reuleaux body (monotonicity under inclusion)",
    );
    Ok(ReuleauxTable {
        width: d,
        arc_samples,
        meta,
        rows,
        triangle_is_minimum,
        monotone_within_slack: monotone,
        verdict: Verdict {
            claim: "the Reuleaux triangle minimizes μ₁ among planar convex sets of given diameter".into(),
            status,
            detail,
        },
    })
}

impl Experiment for ReuleauxTable {
    fn name(&self) -> &'static str {
        "reuleaux"
    }

    fn rows_csv(&self) -> Result<String> {
        csv_of(&self.rows)
    }

    fn series(&self) -> Vec<Series> {
        vec![Series {
            name: "mu_vs_n".into(),
            x: "n",
            y: "mu",
            points: self.rows.iter().map(|r| (r.n as f64, r.mu)).collect(),
        }]
    }

    fn verdict(&self) -> &Verdict {
        &self.verdict
    }

    fn within_bounds(&self) -> bool {
        self.rows.iter().all(|r| r.within_bounds)
    }
}

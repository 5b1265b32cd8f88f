//! Thin domains of fixed diameter collapsing onto a segment.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{csv_of, slack_for, Experiment, RunMeta, Series, Status, Verdict};
use crate::bounds::bounds_report;
use crate::eigensolver::{analytic_mu, solve, SolverConfig};
use crate::geometry::{ConvexPolygon, DomainSpec, Point2};
use crate::{Error, Result};

/// Family of thin domains of length `d` and thickness `ε`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThinShape {
    /// `d × ε` rectangle.
    Rectangle,
    /// Isosceles triangle with base `d` and height `ε`.
    Triangle,
}

impl ThinShape {
    pub fn domain(self, d: f64, eps: f64) -> Result<DomainSpec<f64>> {
        match self {
            Self::Rectangle => Ok(DomainSpec::rect(d / 2.0, eps / 2.0)),
            Self::Triangle => Ok(DomainSpec::polygon(ConvexPolygon::new(vec![
                Point2::new(-d / 2.0, 0.0),
                Point2::new(d / 2.0, 0.0),
                Point2::new(0.0, eps),
            ])?)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShrinkingRow {
    pub shape: ThinShape,
    pub eps: f64,
    pub diam: f64,
    pub area: f64,
    /// `π²/d²`, the limit value.
    pub target: f64,
    /// Closed form where one exists (rectangles: `π²/(d² + ε²)`).
    pub analytic: Option<f64>,
    pub mu: Option<f64>,
    pub mu_low: Option<f64>,
    pub mu_high: Option<f64>,
    /// `(mu − target)/target`.
    pub rel_gap: Option<f64>,
    pub slack: f64,
    pub within_bounds: Option<bool>,
    /// Why the row has no numbers (grid too coarse for that thickness).
    pub skipped: Option<String>,
}

/// Least-squares line `mu ≈ intercept + slope·ε²` over the solved rows of one shape.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitFit {
    pub shape: ThinShape,
    pub points: usize,
    pub intercept: f64,
    pub slope: f64,
    /// `(intercept − π²/d²)/(π²/d²)`.
    pub rel_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShrinkingTable {
    pub d: f64,
    pub target: f64,
    pub meta: RunMeta,
    pub rows: Vec<ShrinkingRow>,
    pub fits: Vec<LimitFit>,
    pub verdict: Verdict,
}

fn fit_line(points: &[(f64, f64)]) -> Option<(f64, f64)> {
    let n = points.len() as f64;
    if points.len() < 2 {
        return None;
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    Some((my - slope * mx, slope))
}

/// Solves every `(shape, ε)` pair and extrapolates `ε → 0` by a linear fit
/// in `ε²`. Rows whose grid has no interior node are kept, marked skipped.
pub fn shrinking_sequence(
    d: f64,
    thickness_values: &[f64],
    shapes: &[ThinShape],
    cfg: &SolverConfig<f64>,
) -> Result<ShrinkingTable> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::InvalidParameter(format!("length d must be positive, got {d}")));
    }
    if thickness_values.is_empty() || shapes.is_empty() {
        return Err(Error::InvalidParameter("need at least one thickness and one shape".into()));
    }
    if thickness_values.iter().any(|&e| !(e > 0.0 && e.is_finite()))
        || thickness_values.windows(2).any(|w| w[1] >= w[0])
    {
        return Err(Error::InvalidParameter(
            "thicknesses must be positive and strictly decreasing".into(),
        ));
    }
    cfg.validate()?;
    let target = PI * PI / (d * d);
    let jobs: Vec<(ThinShape, f64)> = shapes
        .iter()
        .flat_map(|&s| thickness_values.iter().map(move |&e| (s, e)))
        .collect();
    let rows = jobs
        .par_iter()
        .map(|&(shape, eps)| {
            let dom = shape.domain(d, eps)?;
            let rep = bounds_report(&dom, 2)?;
            let slack = slack_for(cfg, rep.diam)?;
            let mut row = ShrinkingRow {
                shape,
                eps,
                diam: rep.diam,
                area: rep.area,
                target,
                analytic: analytic_mu(&dom),
                mu: None,
                mu_low: None,
                mu_high: None,
                rel_gap: None,
                slack,
                within_bounds: None,
                skipped: None,
            };
            match solve(&dom, cfg) {
                Ok(est) => {
                    row.mu = Some(est.mu);
                    row.mu_low = Some(est.mu_low);
                    row.mu_high = Some(est.mu_high);
                    row.rel_gap = Some((est.mu - target) / target);
                    row.within_bounds =
                        Some(rep.jung_lower - slack <= est.mu && est.mu <= rep.diam_upper + slack);
                }
                Err(e @ Error::GridTooCoarse { .. }) => row.skipped = Some(e.to_string()),
                Err(e) => return Err(e),
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;

    let fits: Vec<LimitFit> = shapes
        .iter()
        .filter_map(|&shape| {
            let pts: Vec<(f64, f64)> = rows
                .iter()
                .filter(|r| r.shape == shape)
                .filter_map(|r| r.mu.map(|m| (r.eps * r.eps, m)))
                .collect();
            fit_line(&pts).map(|(intercept, slope)| LimitFit {
                shape,
                points: pts.len(),
                intercept,
                slope,
                rel_error: (intercept - target) / target,
            })
        })
        .collect();

    let worst = fits.iter().map(|f| f.rel_error.abs()).fold(0.0, f64::max);
    let status = if fits.len() < shapes.len() {
        Status::Inconclusive
    } else if worst <= 0.01 {
        Status::Supports
    } else {
        Status::Contradicts
    };
    let verdict = Verdict {
        claim: "if diam(Ω_n) → d and |Ω_n| → 0 then μ₁(Ω_n) → π²/d²".into(),
        status,
        detail: format!(
            "{} of {} shapes extrapolated (linear in ε²); largest relative distance of the \
             extrapolated limit from π²/d² = {:.3e} (threshold 1e-2)",
            fits.len(),
            shapes.len(),
            worst
        ),
    };
    Ok(ShrinkingTable {
        d,
        target,
        meta: RunMeta::new(cfg),
        rows,
        fits,
        verdict,
    })
}

impl Experiment for ShrinkingTable {
    fn name(&self) -> &'static str {
        "shrinking"
    }

    fn rows_csv(&self) -> Result<String> {
        csv_of(&self.rows)
    }

    fn series(&self) -> Vec<Series> {
        let mut out = Vec::new();
        for shape in [ThinShape::Rectangle, ThinShape::Triangle] {
            let points: Vec<(f64, f64)> = self
                .rows
                .iter()
                .filter(|r| r.shape == shape)
                .filter_map(|r| r.mu.map(|m| (r.eps, m)))
                .collect();
            if !points.is_empty() {
                let name = match shape {
                    ThinShape::Rectangle => "rectangle_mu_vs_eps",
                    ThinShape::Triangle => "triangle_mu_vs_eps",
                };
                out.push(Series { name: name.into(), x: "eps", y: "mu", points });
            }
        }
        out
    }

    fn verdict(&self) -> &Verdict {
        &self.verdict
    }

    fn within_bounds(&self) -> bool {
        self.rows.iter().all(|r| r.within_bounds != Some(false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_fit_is_exact_on_lines() {
        let (a, b) = fit_line(&[(0.0, 1.0), (1.0, 3.0), (2.0, 5.0)]).unwrap();
        assert!((a - 1.0).abs() < 1e-14 && (b - 2.0).abs() < 1e-14);
        assert!(fit_line(&[(1.0, 1.0)]).is_none());
    }

    #[test]
    fn rectangles_converge() {
        let cfg = SolverConfig::with_grid(1.0 / 32.0, 3).policy_iteration();
        let t = shrinking_sequence(1.0, &[0.4, 0.2, 0.1], &[ThinShape::Rectangle], &cfg).unwrap();
        assert_eq!(t.rows.len(), 3);
        for r in &t.rows {
            assert!(r.skipped.is_none());
            let exact = r.analytic.unwrap();
            assert!((exact - PI * PI / (1.0 + r.eps * r.eps)).abs() < 1e-12);
            assert!(r.within_bounds.unwrap(), "{r:?}");
        }
        assert_eq!(t.fits[0].points, 3);
        assert!(t.fits[0].rel_error.abs() < 0.01);
    }

    #[test]
    fn thicknesses_must_decrease() {
        let cfg = SolverConfig::with_grid(1.0 / 16.0, 2);
        assert!(shrinking_sequence(1.0, &[0.1, 0.2], &[ThinShape::Rectangle], &cfg).is_err());
        assert!(shrinking_sequence(0.0, &[0.1], &[ThinShape::Rectangle], &cfg).is_err());
    }

    #[test]
    fn triangle_shape() {
        let dom = ThinShape::Triangle.domain(2.0, 0.1).unwrap();
        let p = dom.to_planar().unwrap();
        assert!((p.diameter() - 2.0).abs() < 1e-12);
        assert!((p.area() - 0.1).abs() < 1e-12);
    }
}

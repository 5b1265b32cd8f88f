//! Rectangles degenerating to a segment under a volume or perimeter constraint.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{csv_of, strictly_decreasing, Experiment, Series, Status, Verdict};
use crate::bounds::{bounds_report, Constraint};
use crate::eigensolver::analytic_mu;
use crate::geometry::DomainSpec;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RectangleRow {
    pub n: usize,
    pub side_long: f64,
    pub side_short: f64,
    /// Closed form `π²/(4(α₁² + α₂²))`.
    pub mu: f64,
    pub diam: f64,
    pub jung_lower: f64,
    pub diam_upper: f64,
    pub within_bounds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RectangleTable {
    pub constraint: Constraint,
    pub level: f64,
    /// Value approached as `n → ∞`.
    pub limit: f64,
    pub strictly_decreasing: bool,
    pub rows: Vec<RectangleRow>,
    pub verdict: Verdict,
}

/// Sides of the `n`-th rectangle: `n × c/n` at area `c`, aspect `n : 1`
/// rescaled to perimeter `c`.
fn sides(constraint: Constraint, level: f64, n: usize) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(Error::InvalidParameter("rectangle index n must be >= 1".into()));
    }
    let n = n as f64;
    match constraint {
        Constraint::Volume => Ok((n, level / n)),
        Constraint::Perimeter => Ok((level * n / (2.0 * (n + 1.0)), level / (2.0 * (n + 1.0)))),
        Constraint::Diameter => Err(Error::InvalidParameter(
            "degenerating rectangles are defined for volume or perimeter constraints".into(),
        )),
    }
}

/// Closed-form eigenvalues along `R_n`; no solver involved.
///
/// At fixed area the values fall to 0. At fixed perimeter `c` they decrease
/// toward `4π²/c²`, the value of the limiting segment of length `c/2`.
pub fn degenerate_rectangles(constraint: Constraint, level: f64, n_values: &[usize]) -> Result<RectangleTable> {
    if !(level > 0.0 && level.is_finite()) {
        return Err(Error::InvalidParameter(format!("constraint level must be positive, got {level}")));
    }
    if n_values.is_empty() {
        return Err(Error::InvalidParameter("no rectangle indices given".into()));
    }
    let rows = n_values
        .iter()
        .map(|&n| {
            let (a, b) = sides(constraint, level, n)?;
            let dom = DomainSpec::rect(a / 2.0, b / 2.0);
            let mu = analytic_mu(&dom).expect("rectangles have a closed form");
            let rep = bounds_report(&dom, 2)?;
            Ok(RectangleRow {
                n,
                side_long: a.max(b),
                side_short: a.min(b),
                mu,
                diam: rep.diam,
                jung_lower: rep.jung_lower,
                diam_upper: rep.diam_upper,
                within_bounds: rep.jung_lower <= mu && mu <= rep.diam_upper * (1.0 + 1e-12),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let limit = match constraint {
        Constraint::Perimeter => 4.0 * PI * PI / (level * level),
        _ => 0.0,
    };
    let mus: Vec<f64> = rows.iter().map(|r| r.mu).collect();
    let decreasing = strictly_decreasing(&mus);
    let above = mus.iter().all(|&m| m > limit);
    let verdict = match constraint {
        Constraint::Volume => Verdict {
            claim: "at fixed area, μ₁ of rectangles degenerating to a segment tends to 0, so \
                    area-constrained minimization has no solution"
                .into(),
            status: if decreasing { Status::Supports } else { Status::Contradicts },
            detail: format!(
                "closed-form values strictly decreasing: {decreasing}; last value {:.6}",
                mus[mus.len() - 1]
            ),
        },
        _ => Verdict {
            claim: "at fixed perimeter, rectangles with one side tending to 0 form a minimizing \
                    sequence and the infimum is not attained"
                .into(),
            status: if decreasing && above { Status::Supports } else { Status::Contradicts },
            detail: format!(
                "closed-form values strictly decreasing: {decreasing}; all above the limit {limit:.6}: \
                 {above}; whether any convex set does better is not decided by this table"
            ),
        },
    };
    Ok(RectangleTable {
        constraint,
        level,
        limit,
        strictly_decreasing: decreasing,
        rows,
        verdict,
    })
}

impl Experiment for RectangleTable {
    fn name(&self) -> &'static str {
        match self.constraint {
            Constraint::Perimeter => "rectangles_perimeter",
            _ => "rectangles_volume",
        }
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn volume_sequence_closed_form() {
        let t = degenerate_rectangles(Constraint::Volume, 1.0, &[1, 2, 4, 8]).unwrap();
        for r in &t.rows {
            let n = r.n as f64;
            let want = PI * PI / (n * n + 1.0 / (n * n));
            assert!((r.mu - want).abs() < 1e-12 * want);
            assert!((r.side_long * r.side_short - 1.0).abs() < 1e-12);
            assert!(r.within_bounds);
        }
        assert!((t.rows[0].mu - PI * PI / 2.0).abs() < 1e-12);
        assert!(t.rows[3].mu < 0.16);
        assert!(t.strictly_decreasing);
        assert_eq!(t.verdict.status, Status::Supports);
    }

    #[test]
    fn perimeter_sequence_approaches_segment_value() {
        let c = 2.0 * PI;
        let t = degenerate_rectangles(Constraint::Perimeter, c, &[1, 2, 4, 8, 64, 1024]).unwrap();
        for r in &t.rows {
            assert!((2.0 * (r.side_long + r.side_short) - c).abs() < 1e-12);
        }
        assert!(t.strictly_decreasing);
        assert!((t.limit - 1.0).abs() < 1e-12);
        assert!(t.rows.last().unwrap().mu - t.limit < 0.01);
        assert_eq!(t.verdict.status, Status::Supports);
    }

    #[test]
    fn bad_input() {
        assert!(degenerate_rectangles(Constraint::Perimeter, 1.0, &[0]).is_err());
        assert!(degenerate_rectangles(Constraint::Diameter, 1.0, &[1]).is_err());
        assert!(degenerate_rectangles(Constraint::Volume, -1.0, &[1]).is_err());
        assert!(degenerate_rectangles(Constraint::Volume, 1.0, &[]).is_err());
    }
}

//! Continuity of μ₁ under Hausdorff convergence.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{csv_of, slack_for, Experiment, RunMeta, Series, Status, Verdict};
use crate::bounds::bounds_report;
use crate::eigensolver::{analytic_mu, solve, SolverConfig};
use crate::geometry::{
    disk_hausdorff_distance, hausdorff_distance, regular_polygon, ConvexPolygon, DomainSpec, PlanarDomain, Point2,
    DEFAULT_ANGLES,
};
use crate::{Error, Result};

/// Regular `n`-gons inscribed in the origin-centered disk of radius `r`.
pub fn inscribed_polygons(n_values: &[usize], r: f64) -> Result<Vec<ConvexPolygon<f64>>> {
    n_values.iter().map(|&n| regular_polygon(n, r)).collect()
}

/// `t·P` for every factor `t`.
pub fn scaled_copies(p: &ConvexPolygon<f64>, factors: &[f64]) -> Result<Vec<ConvexPolygon<f64>>> {
    factors.iter().map(|&t| p.scale(t)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HausdorffRow {
    pub index: usize,
    pub vertices: usize,
    pub hausdorff: f64,
    /// Smallest `ε` with `(1 − ε)Ω ⊂ Ω_n` (scaling about the origin).
    pub eps_in: f64,
    /// Smallest `ε` with `Ω_n ⊂ (1 + ε)Ω`.
    pub eps_out: f64,
    pub mu: f64,
    pub mu_low: f64,
    pub mu_high: f64,
    /// `|mu − μ(Ω)|`.
    pub delta: f64,
    /// `μ(Ω)/(1 + ε_out)²`.
    pub lower: f64,
    /// `μ(Ω)/(1 − ε_in)²`, infinite when `ε_in ≥ 1`.
    pub upper: f64,
    pub slack: f64,
    /// `lower − slack ≤ mu ≤ upper + slack`.
    pub sandwich_ok: bool,
    pub within_bounds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HausdorffTable {
    pub target: String,
    pub target_mu: f64,
    /// The target value is a closed form rather than a solve at the same grid.
    pub target_analytic: bool,
    pub meta: RunMeta,
    pub rows: Vec<HausdorffRow>,
    /// `delta` decreases along the rows.
    pub gap_decreasing: bool,
    pub verdict: Verdict,
}

/// Gauge-based inclusion factors of `p` against the target.
fn sandwich_factors(target: &PlanarDomain<f64>, p: &ConvexPolygon<f64>) -> Result<(f64, f64)> {
    match target {
        PlanarDomain::Disk { center, radius } => {
            let shifted = p.translate(-*center);
            let inr = shifted.origin_inradius();
            let outr = shifted.vertices().iter().map(|v| v.norm()).fold(0.0, f64::max);
            Ok((1.0 - inr / radius, outr / radius - 1.0))
        }
        PlanarDomain::Polygon(k) => {
            let out = p
                .vertices()
                .iter()
                .map(|&v| k.gauge(v))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            let inn = k
                .vertices()
                .iter()
                .map(|&w| p.gauge(w))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            Ok((1.0 - 1.0 / inn, out - 1.0))
        }
    }
}

fn target_distance(target: &PlanarDomain<f64>, p: &ConvexPolygon<f64>) -> Result<f64> {
    match target {
        PlanarDomain::Disk { center, radius } => disk_hausdorff_distance(p, *center, *radius),
        PlanarDomain::Polygon(k) => Ok(hausdorff_distance(k, p, DEFAULT_ANGLES)),
    }
}

/// Solves each approximant and compares it with the target, both through the
/// eigenvalue gap and through the inclusion sandwich
/// `(1 − ε)Ω ⊂ Ω_n ⊂ (1 + ε)Ω ⇒ μ(Ω)/(1 + ε)² ≤ μ(Ω_n) ≤ μ(Ω)/(1 − ε)²`.
///
/// The target's value is its closed form when it has one, otherwise a solve
/// with the same configuration. Scalings are about the origin, which must lie
/// inside the target and every approximant.
pub fn hausdorff_continuity_experiment(
    target: &DomainSpec<f64>,
    approximants: &[ConvexPolygon<f64>],
    cfg: &SolverConfig<f64>,
) -> Result<HausdorffTable> {
    if approximants.is_empty() {
        return Err(Error::InvalidParameter("no approximants given".into()));
    }
    cfg.validate()?;
    let planar = target.to_planar()?;
    let (target_mu, target_analytic) = match analytic_mu(target) {
        Some(m) => (m, true),
        None => (solve(target, cfg)?.mu, false),
    };
    let rows = approximants
        .par_iter()
        .enumerate()
        .map(|(index, p)| {
            let (eps_in, eps_out) = sandwich_factors(&planar, p)?;
            let dom = DomainSpec::polygon(p.clone());
            let rep = bounds_report(&dom, 2)?;
            let est = solve(&dom, cfg)?;
            let slack = slack_for(cfg, rep.diam)?;
            let lower = target_mu / (1.0 + eps_out).powi(2);
            let upper = if eps_in < 1.0 {
                target_mu / (1.0 - eps_in).powi(2)
            } else {
                f64::INFINITY
            };
            Ok(HausdorffRow {
                index,
                vertices: p.len(),
                hausdorff: target_distance(&planar, p)?,
                eps_in,
                eps_out,
                mu: est.mu,
                mu_low: est.mu_low,
                mu_high: est.mu_high,
                delta: (est.mu - target_mu).abs(),
                lower,
                upper,
                slack,
                sandwich_ok: lower - slack <= est.mu && est.mu <= upper + slack,
                within_bounds: rep.jung_lower - slack <= est.mu && est.mu <= rep.diam_upper + slack,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let gap_decreasing = rows.windows(2).all(|w| w[1].delta < w[0].delta);
    let sandwich = rows.iter().all(|r| r.sandwich_ok);
    let last = rows.last().expect("non-empty");
    let status = if gap_decreasing && sandwich {
        Status::Supports
    } else if sandwich {
        Status::Inconclusive
    } else {
        Status::Contradicts
    };
    Ok(HausdorffTable {
        target: target.label(),
        target_mu,
        target_analytic,
        meta: RunMeta::new(cfg),
        verdict: Verdict {
            claim: "μ₁ is continuous under Hausdorff convergence of convex sets".into(),
            status,
            detail: format!(
                "eigenvalue gap decreasing along the sequence: {gap_decreasing}; all inclusion \
                 sandwiches hold within slack: {sandwich}; final Hausdorff distance {:.3e}, final \
                 relative gap {:.3e}",
                last.hausdorff,
                last.delta / target_mu
            ),
        },
        rows,
        gap_decreasing,
    })
}

impl Experiment for HausdorffTable {
    fn name(&self) -> &'static str {
        "hausdorff"
    }

    fn rows_csv(&self) -> Result<String> {
        csv_of(&self.rows)
    }

    fn series(&self) -> Vec<Series> {
        vec![Series {
            name: "delta_vs_distance".into(),
            x: "hausdorff",
            y: "delta",
            points: self.rows.iter().map(|r| (r.hausdorff, r.delta)).collect(),
        }]
    }

    fn verdict(&self) -> &Verdict {
        &self.verdict
    }

    fn within_bounds(&self) -> bool {
        self.rows.iter().all(|r| r.within_bounds)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerturbationRow {
    pub trial: usize,
    /// Largest vertex displacement allowed in this trial.
    pub amplitude: f64,
    pub hausdorff: f64,
    pub mu: f64,
    pub delta: f64,
    pub within_bounds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerturbationTable {
    pub base_mu: f64,
    pub seed: u64,
    pub meta: RunMeta,
    pub rows: Vec<PerturbationRow>,
    /// Least-squares slope of `delta` against `hausdorff` through the origin.
    pub slope: f64,
    /// `max delta / hausdorff`.
    pub max_ratio: f64,
    pub verdict: Verdict,
}

/// Random convex perturbations of `base`: every vertex moves by at most
/// `amplitude_t = max_amplitude·(t + 1)/trials` and the hull is taken. Fits
/// `|Δμ| ≈ C·d_H`.
pub fn perturbation_regression(
    base: &ConvexPolygon<f64>,
    trials: usize,
    max_amplitude: f64,
    seed: u64,
    cfg: &SolverConfig<f64>,
) -> Result<PerturbationTable> {
    if trials == 0 || !(max_amplitude > 0.0) {
        return Err(Error::InvalidParameter("need trials >= 1 and a positive amplitude".into()));
    }
    cfg.validate()?;
    let base_mu = solve(&DomainSpec::polygon(base.clone()), cfg)?.mu;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shapes: Vec<(f64, ConvexPolygon<f64>)> = (0..trials)
        .map(|t| {
            let amp = max_amplitude * (t + 1) as f64 / trials as f64;
            let moved: Vec<Point2<f64>> = base
                .vertices()
                .iter()
                .map(|&v| {
                    let r = amp * rng.gen::<f64>().sqrt();
                    v + Point2::polar(rng.gen_range(0.0..std::f64::consts::TAU)) * r
                })
                .collect();
            Ok((amp, ConvexPolygon::hull(&moved)?))
        })
        .collect::<Result<_>>()?;
    let rows = shapes
        .par_iter()
        .enumerate()
        .map(|(trial, (amplitude, p))| {
            let dom = DomainSpec::polygon(p.clone());
            let rep = bounds_report(&dom, 2)?;
            let slack = slack_for(cfg, rep.diam)?;
            let mu = solve(&dom, cfg)?.mu;
            Ok(PerturbationRow {
                trial,
                amplitude: *amplitude,
                hausdorff: hausdorff_distance(base, p, DEFAULT_ANGLES),
                mu,
                delta: (mu - base_mu).abs(),
                within_bounds: rep.jung_lower - slack <= mu && mu <= rep.diam_upper + slack,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let sxx: f64 = rows.iter().map(|r| r.hausdorff * r.hausdorff).sum();
    let sxy: f64 = rows.iter().map(|r| r.hausdorff * r.delta).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let max_ratio = rows
        .iter()
        .filter(|r| r.hausdorff > 0.0)
        .map(|r| r.delta / r.hausdorff)
        .fold(0.0, f64::max);
    Ok(PerturbationTable {
        base_mu,
        seed,
        meta: RunMeta::new(cfg),
        verdict: Verdict {
            claim: "|Δμ₁| is bounded by a constant times the Hausdorff distance".into(),
            status: if max_ratio.is_finite() { Status::Supports } else { Status::Inconclusive },
            detail: format!(
                "{} trials: fitted C = {slope:.4}, largest observed |Δμ|/d_H = {max_ratio:.4}",
                rows.len()
            ),
        },
        rows,
        slope,
        max_ratio,
    })
}

impl Experiment for PerturbationTable {
    fn name(&self) -> &'static str {
        "perturbation"
    }

    fn rows_csv(&self) -> Result<String> {
        csv_of(&self.rows)
    }

    fn series(&self) -> Vec<Series> {
        vec![Series {
            name: "delta_vs_distance".into(),
            x: "hausdorff",
            y: "delta",
            points: self.rows.iter().map(|r| (r.hausdorff, r.delta)).collect(),
        }]
    }

    fn verdict(&self) -> &Verdict {
        &self.verdict
    }

    fn within_bounds(&self) -> bool {
        self.rows.iter().all(|r| r.within_bounds)
    }
}

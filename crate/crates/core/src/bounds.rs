//! Closed-form bounds and the maximality comparisons.
//!
//! For a convex domain of diameter `d` in the plane,
//! `(3/4)·π²/d² ≤ μ₁ ≤ π²/d²`, with equality on the right whenever the domain
//! fits in a disk of radius `d/2`. Computed eigenvalues are compared with these
//! values up to [`slack`], an envelope of the discretization error.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eigensolver::{analytic_mu, solve, SolverConfig};
use crate::geometry::{jung_bound, DomainSpec, PlanarDomain, GEOM_TOL};
use crate::grid::build_stencil;
use crate::{Error, Result, Scalar};

/// Coefficient of `h/diam` in [`slack`].
pub const SLACK_A: f64 = 0.5295;
/// Coefficient of `dθ²` in [`slack`].
pub const SLACK_B: f64 = 0.1254;

/// Relative discretization slack `a·(h/diam) + b·dθ²`, where `dθ` is the
/// widest angular gap of the width-`W` stencil.
///
/// The constants were fitted once, as an envelope with 25% margin, on the
/// disk, on rectangles of aspect ratio 1 to 12 and on rectangles of aspect
/// ratio 1, 2 and 4 rotated by `kπ/32`, at
/// `h ∈ {1/16, 1/32, 1/64, 1/128}` and `W ∈ {2, 3, 4}`
/// (`cargo run --release --example calibrate_slack`), and are frozen.
pub fn slack_relative<T: Scalar>(h: T, diam: T, width: usize) -> Result<T> {
    if !(h > T::zero() && diam > T::zero()) {
        return Err(Error::InvalidParameter("slack needs positive h and diameter".into()));
    }
    let gap = build_stencil::<T>(width)?.max_angular_gap();
    Ok(T::lit(SLACK_A) * h / diam + T::lit(SLACK_B) * gap * gap)
}

/// [`slack_relative`] in eigenvalue units, i.e. scaled by `π²/diam²`.
pub fn slack<T: Scalar>(h: T, diam: T, width: usize) -> Result<T> {
    Ok(slack_relative(h, diam, width)? * T::PI() * T::PI() / (diam * diam))
}

/// Geometric quantities and eigenvalue bounds of a planar domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct BoundsReport<T> {
    pub diam: T,
    pub perimeter: T,
    pub area: T,
    /// `(N+1)/(2N)·π²/diam²`.
    pub jung_lower: T,
    /// `π²/diam²`.
    pub diam_upper: T,
    pub enclosing_radius: T,
    /// The domain fits in a ball of radius `diam/2`, so `μ₁ = π²/diam²`.
    pub equality_certified: bool,
}

/// Bounds for a planar domain, with the Jung factor of dimension `dim`.
pub fn bounds_report<T: Scalar>(domain: &DomainSpec<T>, dim: usize) -> Result<BoundsReport<T>> {
    domain.validate()?;
    planar_report(&domain.to_planar()?, dim)
}

pub fn planar_report<T: Scalar>(domain: &PlanarDomain<T>, dim: usize) -> Result<BoundsReport<T>> {
    let diam = domain.diameter();
    let circle = domain.enclosing_circle();
    Ok(BoundsReport {
        diam,
        perimeter: domain.perimeter(),
        area: domain.area(),
        jung_lower: jung_bound(diam, dim)?,
        diam_upper: T::PI() * T::PI() / (diam * diam),
        enclosing_radius: circle.radius,
        equality_certified: circle.radius <= diam * T::half() + T::lit(GEOM_TOL),
    })
}

/// Quantity held fixed when comparing domains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Constraint {
    Diameter,
    Perimeter,
    Volume,
}

impl Constraint {
    pub fn measure<T: Scalar>(self, d: &PlanarDomain<T>) -> T {
        match self {
            Self::Diameter => d.diameter(),
            Self::Perimeter => d.perimeter(),
            Self::Volume => d.area(),
        }
    }

    /// Factor `t` with `measure(tΩ) = level`.
    pub fn scale_factor<T: Scalar>(self, d: &PlanarDomain<T>, level: T) -> T {
        let ratio = level / self.measure(d);
        match self {
            Self::Volume => ratio.sqrt(),
            _ => ratio,
        }
    }

    /// Radius of the disk meeting the constraint.
    pub fn disk_radius<T: Scalar>(self, level: T) -> T {
        match self {
            Self::Diameter => level * T::half(),
            Self::Perimeter => level / T::TAU(),
            Self::Volume => (level / T::PI()).sqrt(),
        }
    }
}

impl std::fmt::Display for Constraint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Diameter => "diameter",
            Self::Perimeter => "perimeter",
            Self::Volume => "volume",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct MaximalityRow<T> {
    pub domain_id: String,
    pub constraint: Constraint,
    pub mu: T,
    pub mu_low: T,
    pub mu_high: T,
    pub diam: T,
    pub jung_lower: T,
    pub diam_upper: T,
    pub equality_certified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct MaximalityTable<T> {
    pub constraint: Constraint,
    pub level: T,
    pub h: T,
    #[serde(rename = "W")]
    pub stencil_width: usize,
    /// One row per input domain, in input order, then the disk.
    pub rows: Vec<MaximalityRow<T>>,
    /// Largest `mu_high − slack` over the computed rows.
    pub max_computed: T,
    /// The disk's value dominates every computed `mu_high − slack`.
    pub ball_dominates: bool,
}

/// Rescales every domain to `constraint = level`, solves them concurrently
/// with a shared configuration and appends the disk at the same level.
///
/// Rescaling uses the scaling law: each domain is multiplied by the exact
/// factor that meets the constraint, so no remeshing decision depends on it.
pub fn check_maximality<T: Scalar>(
    domains: &[DomainSpec<T>],
    constraint: Constraint,
    level: T,
    cfg: &SolverConfig<T>,
) -> Result<MaximalityTable<T>> {
    if !(level > T::zero() && level.is_finite()) {
        return Err(Error::InvalidParameter(format!("constraint level must be positive, got {level}")));
    }
    cfg.validate()?;
    let solved: Vec<(MaximalityRow<T>, T)> = domains
        .par_iter()
        .map(|d| {
            d.validate()?;
            let planar = d.to_planar()?;
            let t = constraint.scale_factor(&planar, level);
            let scaled = d.scale(t)?;
            let sp = scaled.to_planar()?;
            let reached = constraint.measure(&sp);
            if ((reached - level) / level).abs() > T::lit(1e-6) {
                return Err(Error::Constraint(format!(
                    "{} reaches {constraint} {reached} instead of {level}",
                    d.label()
                )));
            }
            let report = planar_report(&sp, 2)?;
            let est = solve(&scaled, cfg)?;
            let s = slack(cfg.h, report.diam, cfg.stencil_width)?;
            Ok((
                MaximalityRow {
                    domain_id: d.label(),
                    constraint,
                    mu: est.mu,
                    mu_low: est.mu_low,
                    mu_high: est.mu_high,
                    diam: report.diam,
                    jung_lower: report.jung_lower,
                    diam_upper: report.diam_upper,
                    equality_certified: report.equality_certified,
                },
                est.mu_high - s,
            ))
        })
        .collect::<Result<_>>()?;

    let r = constraint.disk_radius(level);
    let disk = DomainSpec::ball(r, 2);
    let mu_disk = analytic_mu(&disk).expect("disk has a closed form");
    let disk_report = bounds_report(&disk, 2)?;
    let max_computed = solved
        .iter()
        .map(|(_, v)| *v)
        .fold(T::neg_infinity(), T::max);
    let mut rows: Vec<MaximalityRow<T>> = solved.into_iter().map(|(row, _)| row).collect();
    rows.push(MaximalityRow {
        domain_id: disk.label(),
        constraint,
        mu: mu_disk,
        mu_low: mu_disk,
        mu_high: mu_disk,
        diam: disk_report.diam,
        jung_lower: disk_report.jung_lower,
        diam_upper: disk_report.diam_upper,
        equality_certified: disk_report.equality_certified,
    });
    Ok(MaximalityTable {
        constraint,
        level,
        h: cfg.h,
        stencil_width: cfg.stencil_width,
        rows,
        max_computed,
        ball_dominates: mu_disk >= max_computed,
    })
}

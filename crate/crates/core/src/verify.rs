//! Reproducible pass/fail suites over closed forms and inequalities.
//!
//! Grid steps are given relative to each domain's diameter, so every check
//! runs on lattices of comparable size whatever the domain's scale.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{bounds_report, check_maximality, slack, Constraint};
use crate::eigensolver::{analytic_mu, solve, EigenEstimate, InnerSolver, SolverConfig};
use crate::explorer::degenerate_rectangles;
use crate::geometry::random::random_convex_polygon;
use crate::geometry::{regular_polygon, ConvexPolygon, DomainSpec, Point2};
use crate::{Error, Result};

/// Relative tolerance of the analytic reproductions.
pub const ANALYTIC_TOL: f64 = 0.02;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Analytic,
    Inequalities,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "analytic" => Ok(Self::Analytic),
            "inequalities" => Ok(Self::Inequalities),
            _ => Err(Error::InvalidParameter(format!(
                "unknown suite {s:?} (expected analytic or inequalities)"
            ))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Analytic => "analytic",
            Self::Inequalities => "inequalities",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Grid step as a fraction of the domain's diameter.
    pub h_rel: f64,
    #[serde(rename = "W")]
    pub stencil_width: usize,
    pub inner: InnerSolver,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            h_rel: 1.0 / 128.0,
            stencil_width: 4,
            inner: InnerSolver::PolicyIteration,
            seed: 0,
        }
    }
}

impl VerifyOptions {
    fn config(&self, diam: f64) -> SolverConfig<f64> {
        let mut cfg = SolverConfig::with_grid(self.h_rel * diam, self.stencil_width);
        cfg.inner = self.inner;
        cfg
    }
}

/// One line of a suite's outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: String) -> Self {
        Self {
            name: name.into(),
            passed,
            detail,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {} {}", self.name, self.detail)
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<Vec<Check>> {
    if !(opts.h_rel > 0.0 && opts.h_rel < 1.0) {
        return Err(Error::InvalidParameter(format!("h_rel must lie in (0, 1), got {}", opts.h_rel)));
    }
    match suite {
        Suite::Analytic => analytic_suite(opts),
        Suite::Inequalities => inequality_suite(opts),
    }
}

struct Solved {
    name: &'static str,
    domain: DomainSpec<f64>,
    diam: f64,
    cfg: SolverConfig<f64>,
    est: EigenEstimate<f64>,
}

fn solve_all(jobs: Vec<(&'static str, DomainSpec<f64>, SolverConfig<f64>)>) -> Result<Vec<Solved>> {
    jobs.into_par_iter()
        .map(|(name, domain, cfg)| {
            let diam = domain.to_planar()?.diameter();
            let est = solve(&domain, &cfg)?;
            Ok(Solved {
                name,
                domain,
                diam,
                cfg,
                est,
            })
        })
        .collect()
}

fn analytic_suite(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (name, dom, exact) in [
        ("closed_form_ball_r0.5", DomainSpec::ball(0.5, 2), PI * PI),
        ("closed_form_rect_1x0.5", DomainSpec::rect(1.0, 0.5), PI * PI / 5.0),
        ("closed_form_ball_r1_dim3", DomainSpec::ball(1.0, 3), PI * PI / 4.0),
    ] {
        let got = analytic_mu(&dom).expect("closed form");
        checks.push(Check::new(
            name,
            (got - exact).abs() <= 1e-12 * exact,
            format!("value={got:.12} expected={exact:.12}"),
        ));
    }

    let domains = [
        ("ball_r1", DomainSpec::ball(1.0, 2)),
        ("ball_r2", DomainSpec::ball(2.0, 2)),
        ("square_side2", DomainSpec::rect(1.0, 1.0)),
        ("square_side1", DomainSpec::rect(0.5, 0.5)),
        ("rect_2to1", DomainSpec::rect(1.0, 0.5)),
    ];
    let jobs = domains
        .into_iter()
        .map(|(name, d)| {
            let diam = d.to_planar()?.diameter();
            Ok((name, d, opts.config(diam)))
        })
        .collect::<Result<Vec<_>>>()?;
    for s in solve_all(jobs)? {
        let exact = analytic_mu(&s.domain).expect("closed form");
        let rel = (s.est.mu - exact) / exact;
        let lo = exact * (1.0 - ANALYTIC_TOL);
        let hi = exact * (1.0 + ANALYTIC_TOL);
        let bracket_ok = s.est.mu_low <= hi && s.est.mu_high >= lo;
        checks.push(Check::new(
            s.name,
            rel.abs() <= ANALYTIC_TOL && bracket_ok,
            format!(
                "mu={:.6} exact={exact:.6} rel_err={rel:+.3e} bracket=[{:.6},{:.6}] h={} W={}",
                s.est.mu, s.est.mu_low, s.est.mu_high, s.cfg.h, s.cfg.stencil_width
            ),
        ));
    }
    Ok(checks)
}

fn equilateral_triangle() -> Result<ConvexPolygon<f64>> {
    ConvexPolygon::new(vec![
        Point2::new(-0.5, 0.0),
        Point2::new(0.5, 0.0),
        Point2::new(0.0, 0.75f64.sqrt()),
    ])
}

fn inequality_suite(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let random: Vec<ConvexPolygon<f64>> = (0..3)
        .map(|i| random_convex_polygon(&mut rng, 5 + 2 * i, 0.5))
        .collect::<Result<_>>()?;
    let names = ["random_0", "random_1", "random_2"];

    let mut domains: Vec<(&'static str, DomainSpec<f64>)> = vec![
        ("square_d1", DomainSpec::rect(0.5 / 2f64.sqrt(), 0.5 / 2f64.sqrt())),
        ("hexagon_d1", DomainSpec::polygon(regular_polygon(6, 0.5)?)),
        ("triangle_side1", DomainSpec::polygon(equilateral_triangle()?)),
        ("reuleaux3_d1", DomainSpec::reuleaux(3, 1.0, 64)),
    ];
    for (name, p) in names.into_iter().zip(random) {
        domains.push((name, DomainSpec::polygon(p)));
    }

    // Scaling pair on a dyadic triangle, and a nested pair on a shared lattice.
    let tri = ConvexPolygon::new(vec![Point2::new(-0.5, -0.25), Point2::new(0.625, -0.125), Point2::new(0.0, 0.5)])?;
    let base_cfg = opts.config(tri.diameter());
    let mut doubled_cfg = base_cfg.clone();
    doubled_cfg.h = 2.0 * base_cfg.h;
    let mut nested_cfg = opts.config(2.0);
    nested_cfg.anchor = Some(Point2::origin());

    let mut jobs = domains
        .into_iter()
        .map(|(name, d)| {
            let diam = d.to_planar()?.diameter();
            Ok((name, d, opts.config(diam)))
        })
        .collect::<Result<Vec<_>>>()?;
    jobs.push(("scaling_base", DomainSpec::polygon(tri.clone()), base_cfg));
    jobs.push(("scaling_doubled", DomainSpec::polygon(tri.scale(2.0)?), doubled_cfg));
    jobs.push(("nested_inner", DomainSpec::polygon(regular_polygon(6, 0.75)?), nested_cfg.clone()));
    jobs.push(("nested_outer", DomainSpec::ball(1.0, 2), nested_cfg));
    let solved = solve_all(jobs)?;
    let find = |name: &str| solved.iter().find(|s| s.name == name).expect("job present");

    let mut checks = Vec::new();
    for s in solved.iter().filter(|s| !s.name.starts_with("scaling") && !s.name.starts_with("nested")) {
        let rep = bounds_report(&s.domain, 2)?;
        let sl = slack(s.cfg.h, s.diam, s.cfg.stencil_width)?;
        checks.push(Check::new(
            format!("diameter_bound_{}", s.name),
            s.est.mu_low <= rep.diam_upper + sl,
            format!("mu_low={:.6} cap={:.6} slack={sl:.3e}", s.est.mu_low, rep.diam_upper),
        ));
        checks.push(Check::new(
            format!("jung_floor_{}", s.name),
            s.est.mu_high >= rep.jung_lower - sl,
            format!("mu_high={:.6} floor={:.6} slack={sl:.3e}", s.est.mu_high, rep.jung_lower),
        ));
        if rep.equality_certified {
            checks.push(Check::new(
                format!("equality_{}", s.name),
                (s.est.mu - rep.diam_upper).abs() <= sl,
                format!("mu={:.6} cap={:.6} slack={sl:.3e}", s.est.mu, rep.diam_upper),
            ));
        }
        if s.name.starts_with("reuleaux") {
            checks.push(Check::new(
                "reuleaux_strictly_below_cap",
                s.est.mu_high < rep.diam_upper - sl,
                format!(
                    "mu_high={:.6} cap={:.6} margin={:.3e} slack={sl:.3e}",
                    s.est.mu_high,
                    rep.diam_upper,
                    rep.diam_upper - s.est.mu_high
                ),
            ));
        }
    }

    let (a, b) = (find("scaling_base").est.mu, find("scaling_doubled").est.mu);
    let ulps = (a / 4.0 - b).abs() / (f64::EPSILON * b);
    checks.push(Check::new(
        "scaling_law",
        ulps <= 8.0,
        format!("mu(P)/4={:.15} mu(2P)={b:.15} diff_ulp={ulps:.1}", a / 4.0),
    ));

    let (inner, outer) = (find("nested_inner").est.mu, find("nested_outer").est.mu);
    let tol = find("nested_inner").cfg.tol_bracket * inner;
    checks.push(Check::new(
        "monotone_under_inclusion",
        inner >= outer - tol,
        format!("mu(hexagon)={inner:.6} mu(disk)={outer:.6}"),
    ));

    let shapes = [
        DomainSpec::polygon(regular_polygon(6, 1.0)?),
        DomainSpec::rect(1.0, 1.0),
        DomainSpec::polygon(equilateral_triangle()?),
        DomainSpec::reuleaux(3, 1.0, 64),
        DomainSpec::rect(1.0, 0.5),
    ];
    let level = PI;
    let table = check_maximality(&shapes, Constraint::Volume, level, &opts.config(2.0))?;
    let disk = table.rows.last().expect("disk row").mu;
    checks.push(Check::new(
        "disk_maximizes_at_fixed_area",
        table.ball_dominates,
        format!("disk={disk:.6} max(mu_high - slack)={:.6}", table.max_computed),
    ));

    let rects = degenerate_rectangles(Constraint::Volume, 1.0, &[1, 2, 4, 8])?;
    let last = rects.rows.last().expect("rows").mu;
    checks.push(Check::new(
        "degenerating_rectangles",
        rects.strictly_decreasing && last < 0.16,
        format!("mu(n=8)={last:.6}"),
    ));
    Ok(checks)
}

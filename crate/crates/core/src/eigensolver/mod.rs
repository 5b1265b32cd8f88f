//! Principal eigenpair of `−Λu = μu` by nonlinear inverse power iteration.
//!
//! Each outer step solves `−Λv = u_k` (explicit pseudo-time marching, or
//! Howard policy iteration when requested), normalizes `u_{k+1} = v / max v`
//! and evaluates the Collatz–Wielandt bracket
//! `[min (−Λu)/u, max (−Λu)/u]` over nodes where `u ≥ η`. For a positive
//! field the lower end is a certified lower bound of the discrete eigenvalue,
//! and it is what gets reported once the bracket closes.
//!
//! All iteration happens in lattice units (operator scaled by `h²`), so a
//! similar domain on a similar grid runs through the same arithmetic.

mod inner;
mod sparse;

use serde::{Deserialize, Serialize};

use crate::geometry::{DomainSpec, Point2};
use crate::grid::{build_stencil, rasterize_with, Grid2, GridOptions, ScalarField};
use crate::operator::apply_scaled;
use crate::{Error, Result, Scalar};

/// Which inner solver handles `−Λv = u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InnerSolver {
    /// Jacobi-style explicit marching with per-node CFL step.
    #[default]
    PseudoTime,
    /// Howard policy iteration with ILU(0)-preconditioned BiCGSTAB.
    PolicyIteration,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct SolverConfig<T> {
    /// Grid spacing.
    pub h: T,
    /// Stencil width `W`.
    pub stencil_width: usize,
    /// Relative width `(μ_high − μ_low)/μ_high` at which the bracket counts as closed.
    pub tol_bracket: T,
    /// Sup-norm residual target of each inner solve (source normalized to sup-norm 1).
    pub tol_inner: T,
    pub max_outer: usize,
    pub max_inner: usize,
    /// Relative threshold `η`: nodes with `u < η·max u` are left out of the bracket.
    pub cw_floor: T,
    pub inner: InnerSolver,
    /// Early inner solves stop at a looser residual proportional to the previous bracket width.
    pub adaptive_inner: bool,
    /// Policy iteration solves `−Λv − σv = u` with `σ = shift ×` the certified
    /// lower bound `min (−Λu)/u` over all nodes. Explicit marching slows down as
    /// `σ` approaches `μ`, so it always runs unshifted.
    pub shift: T,
    pub arm_floor: T,
    /// Lattice anchor; `None` centers the lattice on the bounding box.
    #[serde(skip)]
    pub anchor: Option<Point2<T>>,
}

impl<T: Scalar> Default for SolverConfig<T> {
    fn default() -> Self {
        Self {
            h: T::lit(1.0 / 64.0),
            stencil_width: 4,
            tol_bracket: T::lit(1e-6),
            tol_inner: T::lit(1e-8),
            max_outer: 200,
            max_inner: 200_000,
            cw_floor: T::lit(1e-3),
            inner: InnerSolver::PseudoTime,
            adaptive_inner: true,
            shift: T::lit(0.9),
            arm_floor: T::lit(crate::grid::DEFAULT_ARM_FLOOR),
            anchor: None,
        }
    }
}

impl<T: Scalar> SolverConfig<T> {
    pub fn with_grid(h: T, stencil_width: usize) -> Self {
        Self {
            h,
            stencil_width,
            ..Self::default()
        }
    }

    pub fn policy_iteration(mut self) -> Self {
        self.inner = InnerSolver::PolicyIteration;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let pos = |name: &str, x: T| {
            if x > T::zero() && x.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("{name} must be positive, got {x}")))
            }
        };
        pos("h", self.h)?;
        pos("tol_bracket", self.tol_bracket)?;
        pos("tol_inner", self.tol_inner)?;
        pos("cw_floor", self.cw_floor)?;
        pos("arm_floor", self.arm_floor)?;
        for (name, x) in [
            ("tol_bracket", self.tol_bracket),
            ("tol_inner", self.tol_inner),
            ("cw_floor", self.cw_floor),
            ("arm_floor", self.arm_floor),
        ] {
            if x >= T::one() {
                return Err(Error::InvalidParameter(format!("{name} must be < 1, got {x}")));
            }
        }
        if !(self.shift >= T::zero() && self.shift < T::one()) {
            return Err(Error::InvalidParameter(format!("shift must lie in [0, 1), got {}", self.shift)));
        }
        if self.stencil_width == 0 || self.max_outer == 0 || self.max_inner == 0 {
            return Err(Error::InvalidParameter(
                "stencil width and iteration limits must be positive".into(),
            ));
        }
        Ok(())
    }

    pub fn grid_options(&self) -> GridOptions<T> {
        GridOptions {
            anchor: self.anchor,
            arm_floor: self.arm_floor,
        }
    }
}

/// Converged discrete eigenpair.
#[derive(Debug, Clone)]
pub struct EigenEstimate<T> {
    /// Reported eigenvalue (`mu_low`).
    pub mu: T,
    pub mu_low: T,
    pub mu_high: T,
    /// Positive discrete eigenfunction, sup-norm 1.
    pub eigenfunction: ScalarField<T>,
    pub outer_iters: usize,
    pub inner_iters_total: usize,
    pub h: T,
    pub stencil_width: usize,
    /// `max |−Λu − μu|` over nodes with `u ≥ η`.
    pub residual: T,
    /// Bracket after every outer step.
    pub history: Vec<(T, T)>,
    pub interior_nodes: usize,
}

/// The JSON face of an [`EigenEstimate`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct EstimateSummary<T> {
    pub mu: T,
    pub mu_low: T,
    pub mu_high: T,
    pub h: T,
    #[serde(rename = "W")]
    pub stencil_width: usize,
    pub outer_iters: usize,
    pub inner_iters_total: usize,
    pub residual: T,
}

impl<T: Scalar> EigenEstimate<T> {
    pub fn summary(&self) -> EstimateSummary<T> {
        EstimateSummary {
            mu: self.mu,
            mu_low: self.mu_low,
            mu_high: self.mu_high,
            h: self.h,
            stencil_width: self.stencil_width,
            outer_iters: self.outer_iters,
            inner_iters_total: self.inner_iters_total,
            residual: self.residual,
        }
    }
}

/// Closed-form eigenvalue for balls (`π²/4r²`, any dimension) and
/// hyperrectangles `∏(−α_i, α_i)` (`π²/(4Σα_i²)`).
pub fn analytic_mu<T: Scalar>(domain: &DomainSpec<T>) -> Option<T> {
    let pi2 = T::PI() * T::PI();
    let four = T::lit(4.0);
    match domain {
        DomainSpec::Ball { r, .. } => Some(pi2 / (four * *r * *r)),
        DomainSpec::HyperRect { alphas } => {
            let s: T = alphas.iter().map(|&a| a * a).sum();
            Some(pi2 / (four * s))
        }
        _ => None,
    }
}

/// Rasterizes `domain` and solves on the resulting grid.
pub fn solve<T: Scalar>(domain: &DomainSpec<T>, cfg: &SolverConfig<T>) -> Result<EigenEstimate<T>> {
    cfg.validate()?;
    let planar = domain.to_planar()?;
    let stencil = build_stencil(cfg.stencil_width)?;
    let grid = rasterize_with(&planar, cfg.h, &stencil, cfg.grid_options())?;
    solve_on_grid(&grid, cfg)
}

/// Initial iterate: product of distances to the sides of the (lattice) box
/// around the interior nodes, normalized to sup-norm 1.
fn initial_guess<T: Scalar>(grid: &Grid2<T>) -> Vec<T> {
    let n = grid.interior_count();
    let coords: Vec<(i64, i64)> = (0..n).map(|k| grid.lattice_coords(k)).collect();
    let (mut i0, mut i1, mut j0, mut j1) = (i64::MAX, i64::MIN, i64::MAX, i64::MIN);
    for &(i, j) in &coords {
        i0 = i0.min(i);
        i1 = i1.max(i);
        j0 = j0.min(j);
        j1 = j1.max(j);
    }
    let (i0, i1, j0, j1) = (i0 - 1, i1 + 1, j0 - 1, j1 + 1);
    let f = |x: i64| T::from_i64(x).unwrap();
    let mut u: Vec<T> = coords
        .iter()
        .map(|&(i, j)| f(i - i0) * f(i1 - i) * f(j - j0) * f(j1 - j))
        .collect();
    let m = u.iter().copied().fold(T::zero(), T::max);
    u.iter_mut().for_each(|x| *x = *x / m);
    u
}

/// Smallest ratio `(−Λu)/u` over all nodes: a lower bound of the discrete
/// principal eigenvalue for any positive `u`.
fn certified_floor<T: Scalar>(u: &[T], lw: &[T]) -> T {
    u.iter().zip(lw).fold(T::infinity(), |m, (&uk, &lk)| m.min(-lk / uk))
}

/// Bracket in lattice units; `lw` must hold `h²·Λu`.
fn bracket_scaled<T: Scalar>(u: &[T], lw: &[T], eta: T) -> (T, T) {
    let umax = u.iter().copied().fold(T::zero(), T::max);
    let floor = eta * umax;
    let mut lo = T::infinity();
    let mut hi = T::neg_infinity();
    for (&uk, &lk) in u.iter().zip(lw) {
        if uk >= floor {
            let r = -lk / uk;
            lo = lo.min(r);
            hi = hi.max(r);
        }
    }
    (lo, hi)
}

/// Collatz–Wielandt bracket `(min, max)` of `(−Λu)/u` over `{u ≥ η·max u}`.
pub fn collatz_wielandt<T: Scalar>(u: &ScalarField<T>, grid: &Grid2<T>, eta: T) -> Result<(T, T)> {
    let vals = u.interior_values(grid)?;
    if let Some(node) = vals.iter().position(|&x| !(x > T::zero())) {
        return Err(Error::NonPositiveField { node });
    }
    let n = vals.len();
    let mut lw = vec![T::zero(); n];
    let mut arg = vec![0u16; n];
    apply_scaled(grid, &vals, &mut lw, &mut arg);
    let (lo, hi) = bracket_scaled(&vals, &lw, eta);
    let h2 = grid.h() * grid.h();
    Ok((lo / h2, hi / h2))
}

/// Inverse power iteration on an existing grid.
pub fn solve_on_grid<T: Scalar>(grid: &Grid2<T>, cfg: &SolverConfig<T>) -> Result<EigenEstimate<T>> {
    cfg.validate()?;
    let n = grid.interior_count();
    let h2 = grid.h() * grid.h();
    let tau = inner::local_time_steps(grid);
    let mut u = initial_guess(grid);
    let mut lw = vec![T::zero(); n];
    let mut arg = vec![0u16; n];
    apply_scaled(grid, &u, &mut lw, &mut arg);
    let (mut lo, mut hi) = bracket_scaled(&u, &lw, cfg.cw_floor);
    let shift = match cfg.inner {
        InnerSolver::PseudoTime => T::zero(),
        InnerSolver::PolicyIteration => cfg.shift,
    };
    let mut sigma = shift * certified_floor(&u, &lw).max(T::zero());
    // warm start: the solution if u were already an eigenfunction
    let mut w: Vec<T> = u
        .iter()
        .map(|&x| x / (hi - sigma).max(T::epsilon()))
        .collect();

    let mut history = Vec::new();
    let mut inner_total = 0usize;
    let mut gap = T::one();
    let stalled = |iters, residual: T, lo: T, hi: T| Error::InnerStalled {
        iters,
        residual: residual.as_f64(),
        mu_low: (lo / h2).as_f64(),
        mu_high: (hi / h2).as_f64(),
    };
    for outer in 1..=cfg.max_outer {
        let tol = if cfg.adaptive_inner {
            cfg.tol_inner.max((gap * T::lit(1e-2)).min(T::lit(1e-3)))
        } else {
            cfg.tol_inner
        };
        let report = match cfg.inner {
            InnerSolver::PseudoTime => {
                inner::pseudo_time(grid, &tau, sigma, &u, &mut w, tol, cfg.max_inner)
            }
            InnerSolver::PolicyIteration => {
                inner::policy_iteration(grid, sigma, &u, &mut w, tol, cfg.max_inner)
            }
        };
        inner_total += report.iters;
        if !report.converged || w.iter().any(|&x| !(x > T::zero())) {
            return Err(stalled(report.iters, report.residual, lo, hi));
        }
        let m = w.iter().copied().fold(T::zero(), T::max);
        let inv = T::one() / m;
        u.iter_mut().zip(&w).for_each(|(uk, &wk)| *uk = wk * inv);
        apply_scaled(grid, &u, &mut lw, &mut arg);
        (lo, hi) = bracket_scaled(&u, &lw, cfg.cw_floor);
        history.push((lo / h2, hi / h2));
        gap = (hi - lo) / hi.abs();
        if gap <= cfg.tol_bracket {
            let floor = cfg.cw_floor;
            let residual = u
                .iter()
                .zip(&lw)
                .filter(|(&uk, _)| uk >= floor)
                .fold(T::zero(), |r, (&uk, &lk)| r.max((lk + lo * uk).abs()))
                / h2;
            return Ok(EigenEstimate {
                mu: lo / h2,
                mu_low: lo / h2,
                mu_high: hi / h2,
                eigenfunction: ScalarField::from_interior(grid, &u)?,
                outer_iters: outer,
                inner_iters_total: inner_total,
                h: grid.h(),
                stencil_width: grid.stencil().width(),
                residual,
                history,
                interior_nodes: n,
            });
        }
        // w stays as warm start: the next solution is ≈ u/(μ − σ) ≈ w
        sigma = sigma.max(shift * certified_floor(&u, &lw).max(T::zero()));
    }
    Err(Error::BracketNotClosed {
        outer: cfg.max_outer,
        mu_low: (lo / h2).as_f64(),
        mu_high: (hi / h2).as_f64(),
    })
}

/// One row of a refinement sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct RefinementRow<T> {
    pub h: T,
    #[serde(rename = "W")]
    pub stencil_width: usize,
    pub mu: T,
    pub mu_low: T,
    pub mu_high: T,
    pub outer_iters: usize,
    pub inner_iters_total: usize,
    pub analytic: Option<T>,
    pub rel_error: Option<T>,
    /// Richardson extrapolation (second order in `h`) from the previous row
    /// with the same `W`; filled only when requested.
    pub extrapolated: Option<T>,
}

/// Solves on every `(h, W)` pair; rows ordered by `W`, then by the order of `hs`.
pub fn refinement_table<T: Scalar>(
    domain: &DomainSpec<T>,
    hs: &[T],
    widths: &[usize],
    base: &SolverConfig<T>,
    richardson: bool,
) -> Result<Vec<RefinementRow<T>>> {
    let exact = analytic_mu(domain);
    let mut rows: Vec<RefinementRow<T>> = Vec::new();
    for &w in widths {
        let mut prev: Option<(T, T)> = None;
        for &h in hs {
            let cfg = SolverConfig {
                h,
                stencil_width: w,
                ..*base
            };
            let est = solve(domain, &cfg)?;
            let extrapolated = if richardson {
                prev.map(|(h0, mu0)| {
                    let r2 = (h0 / h) * (h0 / h);
                    (r2 * est.mu - mu0) / (r2 - T::one())
                })
            } else {
                None
            };
            prev = Some((h, est.mu));
            rows.push(RefinementRow {
                h,
                stencil_width: w,
                mu: est.mu,
                mu_low: est.mu_low,
                mu_high: est.mu_high,
                outer_iters: est.outer_iters,
                inner_iters_total: est.inner_iters_total,
                analytic: exact,
                rel_error: exact.map(|e| (est.mu - e) / e),
                extrapolated,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ConvexPolygon, PlanarDomain};
    use crate::grid::rasterize;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    /// The nine-point problem on the square (0,4)² at h = 1 with the four
    /// W = 1 directions, written out directly on a 5×5 array.
    fn toy_operator(u: &[[f64; 5]; 5], i: usize, j: usize) -> f64 {
        let d = |di: isize, dj: isize, len2: f64| {
            let p = u[(i as isize + di) as usize][(j as isize + dj) as usize];
            let m = u[(i as isize - di) as usize][(j as isize - dj) as usize];
            (p + m - 2.0 * u[i][j]) / len2
        };
        d(1, 0, 1.0).max(d(0, 1, 1.0)).max(d(1, 1, 2.0)).max(d(1, -1, 2.0))
    }

    /// Normalized explicit flow `u ← u + τΛu` from a random start; at the
    /// fixed point `Λu = −μu`, so the contraction factor is `1 − τμ`.
    fn toy_oracle(rng: &mut ChaCha8Rng) -> f64 {
        let tau = 0.25;
        let mut u = [[0.0f64; 5]; 5];
        for row in u.iter_mut().take(4).skip(1) {
            for x in row.iter_mut().take(4).skip(1) {
                *x = rng.gen_range(0.01..1.0);
            }
        }
        let mut rho = 0.0;
        for _ in 0..4000 {
            let mut v = u;
            for i in 1..4 {
                for j in 1..4 {
                    v[i][j] = u[i][j] + tau * toy_operator(&u, i, j);
                }
            }
            let m = v.iter().flatten().fold(0.0f64, |a, &b| a.max(b));
            let um = u.iter().flatten().fold(0.0f64, |a, &b| a.max(b));
            rho = m / um;
            for row in v.iter_mut() {
                for x in row.iter_mut() {
                    *x /= m;
                }
            }
            u = v;
        }
        (1.0 - rho) / tau
    }

    fn toy_grid() -> Grid2<f64> {
        let sq = PlanarDomain::Polygon(ConvexPolygon::rectangle(0.0, 0.0, 4.0, 4.0).unwrap());
        rasterize(&sq, 1.0, &build_stencil(1).unwrap()).unwrap()
    }

    fn tight(inner: InnerSolver) -> SolverConfig<f64> {
        SolverConfig {
            h: 1.0,
            stencil_width: 1,
            tol_bracket: 1e-13,
            tol_inner: 1e-14,
            inner,
            ..SolverConfig::default()
        }
    }

    #[test]
    fn toy_problem_matches_fixed_point_oracle() {
        let grid = toy_grid();
        assert_eq!(grid.interior_count(), 9);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let oracle: Vec<f64> = (0..100).map(|_| toy_oracle(&mut rng)).collect();
        let spread = oracle.iter().fold(0.0f64, |m, &x| m.max((x - oracle[0]).abs()));
        assert!(spread < 1e-12, "oracle starts disagree by {spread}");
        for inner in [InnerSolver::PseudoTime, InnerSolver::PolicyIteration] {
            let est = solve_on_grid(&grid, &tight(inner)).unwrap();
            assert!(
                (est.mu - oracle[0]).abs() < 1e-10,
                "{inner:?}: {} vs oracle {}",
                est.mu,
                oracle[0]
            );
            assert!(est.mu_low <= est.mu_high);
        }
    }

    #[test]
    fn inner_solvers_agree() {
        let disk = DomainSpec::ball(1.0, 2);
        let cfg = SolverConfig::<f64>::with_grid(1.0 / 12.0, 2);
        let a = solve(&disk, &cfg).unwrap();
        let b = solve(&disk, &cfg.policy_iteration()).unwrap();
        assert!(((a.mu - b.mu) / a.mu).abs() < cfg.tol_bracket);
    }

    #[test]
    fn estimate_invariants() {
        let cfg = SolverConfig::with_grid(1.0 / 16.0, 3).policy_iteration();
        let est = solve(&DomainSpec::rect(1.0, 0.6), &cfg).unwrap();
        assert!(est.mu_low <= est.mu && est.mu <= est.mu_high);
        assert!((est.mu_high - est.mu_low) / est.mu_high <= cfg.tol_bracket);
        assert_eq!(est.history.len(), est.outer_iters);
        let vals = est.eigenfunction.values();
        let grid = crate::grid::rasterize(
            &DomainSpec::rect(1.0, 0.6).to_planar().unwrap(),
            cfg.h,
            &build_stencil(3).unwrap(),
        )
        .unwrap();
        let inner = est.eigenfunction.interior_values(&grid).unwrap();
        assert!(inner.iter().all(|&x| x > 0.0));
        assert_eq!(vals.iter().copied().fold(0.0, f64::max), 1.0);
        let json = serde_json::to_value(est.summary()).unwrap();
        for key in ["mu", "mu_low", "mu_high", "h", "W", "outer_iters", "inner_iters_total", "residual"] {
            assert!(json.get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn flat_field_has_zero_lower_ratio() {
        let sq = PlanarDomain::Polygon(ConvexPolygon::rectangle(-1.0, -1.0, 1.0, 1.0).unwrap());
        let grid = rasterize(&sq, 0.125, &build_stencil(2).unwrap()).unwrap();
        let ones = vec![1.0; grid.interior_count()];
        let u = ScalarField::from_interior(&grid, &ones).unwrap();
        let (lo, hi) = collatz_wielandt(&u, &grid, 1e-3).unwrap();
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0);
    }

    #[test]
    fn bracket_rejects_nonpositive_fields() {
        let grid = toy_grid();
        let mut vals = vec![1.0; 9];
        vals[4] = 0.0;
        let u = ScalarField::from_interior(&grid, &vals).unwrap();
        assert!(matches!(collatz_wielandt(&u, &grid, 1e-3), Err(Error::NonPositiveField { node: 4 })));
    }

    #[test]
    fn bracket_of_sampled_cosine_contains_solution() {
        let disk = DomainSpec::ball(1.0, 2);
        let cfg = SolverConfig::with_grid(1.0 / 16.0, 3).policy_iteration();
        let est = solve(&disk, &cfg).unwrap();
        let grid = rasterize(&disk.to_planar().unwrap(), cfg.h, &build_stencil(3).unwrap()).unwrap();
        let u = ScalarField::sample(&grid, |p| (PI / 2.0 * p.norm()).cos());
        let (lo, hi) = collatz_wielandt(&u, &grid, cfg.cw_floor).unwrap();
        assert!(lo <= est.mu && est.mu <= hi, "[{lo}, {hi}] vs {}", est.mu);
    }

    #[test]
    fn closed_forms() {
        assert!((analytic_mu(&DomainSpec::ball(0.5, 2)).unwrap() - PI * PI).abs() < 1e-12);
        assert!((analytic_mu(&DomainSpec::ball(0.5, 7)).unwrap() - PI * PI).abs() < 1e-12);
        assert!((analytic_mu(&DomainSpec::rect(1.0, 0.5)).unwrap() - PI * PI / 5.0).abs() < 1e-12);
        let cube = DomainSpec::HyperRect { alphas: vec![1.0; 3] };
        assert!((analytic_mu(&cube).unwrap() - PI * PI / 12.0).abs() < 1e-12);
        let mut last = f64::INFINITY;
        for n in [1.0, 2.0, 4.0, 8.0, 16.0] {
            let r = DomainSpec::rect(n / 2.0, 1.0 / (2.0 * n));
            let mu = analytic_mu(&r).unwrap();
            assert!(mu < last);
            last = mu;
        }
        assert!(last < 0.04);
        assert!(analytic_mu(&DomainSpec::reuleaux(3, 1.0f64, 8)).is_none());
    }

    #[test]
    fn config_validation() {
        let ok = SolverConfig::<f64>::default();
        assert!(ok.validate().is_ok());
        for bad in [
            SolverConfig { h: 0.0, ..ok },
            SolverConfig { tol_bracket: 1.5, ..ok },
            SolverConfig { cw_floor: -1.0, ..ok },
            SolverConfig { stencil_width: 0, ..ok },
            SolverConfig { shift: 1.0, ..ok },
            SolverConfig { max_outer: 0, ..ok },
        ] {
            assert!(matches!(bad.validate(), Err(Error::InvalidParameter(_))));
        }
    }

    #[test]
    fn exhausted_outer_budget_reports_bracket() {
        let cfg = SolverConfig {
            max_outer: 1,
            ..SolverConfig::with_grid(1.0 / 16.0, 2)
        };
        match solve(&DomainSpec::ball(1.0, 2), &cfg) {
            Err(Error::BracketNotClosed { outer, mu_low, mu_high }) => {
                assert_eq!(outer, 1);
                assert!(mu_low <= mu_high);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn exhausted_inner_budget_stalls() {
        let cfg = SolverConfig {
            max_inner: 3,
            ..SolverConfig::with_grid(1.0 / 16.0, 2)
        };
        assert!(matches!(
            solve(&DomainSpec::ball(1.0, 2), &cfg),
            Err(Error::InnerStalled { .. })
        ));
    }

    #[test]
    fn refinement_rows_and_extrapolation() {
        let cfg = SolverConfig::<f64>::with_grid(0.25, 2).policy_iteration();
        let rows = refinement_table(&DomainSpec::ball(1.0, 2), &[1.0 / 8.0, 1.0 / 16.0], &[2], &cfg, true).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows[0].extrapolated.is_none());
        let x = rows[1].extrapolated.unwrap();
        assert!((x - (4.0 * rows[1].mu - rows[0].mu) / 3.0).abs() < 1e-12);
        assert!(rows[1].rel_error.unwrap().abs() < rows[0].rel_error.unwrap().abs());
    }

    #[test]
    fn single_precision() {
        // the inner residual cannot drop below ≈ 4ε/((μ − σ)h²) in lattice
        // units, so f32 runs need coarse grids, loose tolerances and no shift
        let cfg = SolverConfig::<f32> {
            tol_bracket: 1e-3,
            tol_inner: 1e-4,
            shift: 0.0,
            ..SolverConfig::with_grid(1.0 / 8.0, 2)
        };
        for cfg in [cfg, cfg.policy_iteration()] {
            let est = solve(&DomainSpec::ball(1.0f32, 2), &cfg).unwrap();
            let est64 = solve(&DomainSpec::ball(1.0f64, 2), &SolverConfig::with_grid(1.0 / 8.0, 2)).unwrap();
            assert!(((est.mu as f64 - est64.mu) / est64.mu).abs() < 2e-3, "{} vs {}", est.mu, est64.mu);
        }
    }
}

//! Inner solvers for `−Λ̂w − σw = f` (operator in units of `1/h²`, `f > 0`,
//! `σ` below the discrete principal eigenvalue).

use super::sparse::{bicgstab, Csr, Ilu0};
use crate::grid::{Grid2, NO_NODE};
use crate::operator::{apply_scaled, second_difference};
use crate::Scalar;

/// Outcome of one inner solve.
#[derive(Debug, Clone, Copy)]
pub(crate) struct InnerReport<T> {
    pub iters: usize,
    pub residual: T,
    pub converged: bool,
}

/// Fraction of the local stability limit used as pseudo-time step.
const CFL_FACTOR: f64 = 0.45;

/// Per-node explicit step `0.45 · min_e s₊s₋` (lattice units).
pub(crate) fn local_time_steps<T: Scalar>(grid: &Grid2<T>) -> Vec<T> {
    let c = T::lit(CFL_FACTOR);
    (0..grid.interior_count())
        .map(|k| {
            grid.arms_of(k)
                .iter()
                .map(|a| a.plus * a.minus)
                .fold(T::infinity(), T::min)
                * c
        })
        .collect()
}

fn sup_residual<T: Scalar>(lw: &[T], w: &[T], sigma: T, f: &[T]) -> T {
    lw.iter()
        .zip(w)
        .zip(f)
        .fold(T::zero(), |m, ((&l, &wi), &fi)| m.max((l + sigma * wi + fi).abs()))
}

/// Damped explicit marching `w ← w + τ(Λ̂w + σw + f)` until the residual drops below `tol`.
pub(crate) fn pseudo_time<T: Scalar>(
    grid: &Grid2<T>,
    tau: &[T],
    sigma: T,
    f: &[T],
    w: &mut [T],
    tol: T,
    max_iter: usize,
) -> InnerReport<T> {
    let n = w.len();
    let mut lw = vec![T::zero(); n];
    let mut arg = vec![0u16; n];
    let mut residual = T::infinity();
    for it in 0..=max_iter {
        apply_scaled(grid, w, &mut lw, &mut arg);
        residual = sup_residual(&lw, w, sigma, f);
        if residual < tol {
            return InnerReport { iters: it, residual, converged: true };
        }
        if it == max_iter {
            break;
        }
        for k in 0..n {
            w[k] = w[k] + tau[k] * (lw[k] + sigma * w[k] + f[k]);
        }
    }
    InnerReport { iters: max_iter, residual, converged: false }
}

/// Assembles `A_π − σI` with `(A_π w)_k = −D̂²_{π(k)} w(k)`.
fn policy_matrix<T: Scalar>(grid: &Grid2<T>, policy: &[u16], sigma: T) -> Csr<T> {
    let n = grid.interior_count();
    let mut a = Csr::with_capacity(n, 3 * n);
    let mut row: Vec<(u32, T)> = Vec::with_capacity(3);
    for (k, &d) in policy.iter().enumerate() {
        let arm = &grid.arms_of(k)[d as usize];
        row.clear();
        row.push((k as u32, arm.w_center - sigma));
        if arm.next != NO_NODE {
            row.push((arm.next, -arm.w_plus));
        }
        if arm.prev != NO_NODE {
            row.push((arm.prev, -arm.w_minus));
        }
        a.push_row(&mut row);
    }
    a
}

/// Howard's policy iteration: freeze the maximizing direction at every node,
/// solve the resulting linear system, re-evaluate the maximizers, repeat.
///
/// A node switches direction only when the new one beats the current one by
/// more than `tol / 2`, which rules out cycling on rounding-level ties.
pub(crate) fn policy_iteration<T: Scalar>(
    grid: &Grid2<T>,
    sigma: T,
    f: &[T],
    w: &mut [T],
    tol: T,
    max_iter: usize,
) -> InnerReport<T> {
    let n = w.len();
    let mut lw = vec![T::zero(); n];
    let mut policy = vec![0u16; n];
    apply_scaled(grid, w, &mut lw, &mut policy);
    let fscale = f.iter().fold(T::zero(), |m, &x| m.max(x.abs())).max(T::min_positive_value());
    // round-off floor of a residual evaluated at the scale of the warm start
    let wscale = w.iter().fold(T::zero(), |m, &x| m.max(x.abs()));
    let lin_tol = (T::lit(0.1) * tol * fscale).max(T::lit(8.0) * T::epsilon() * wscale);
    let switch = tol * T::half();
    let mut best = vec![0u16; n];
    let mut residual = T::infinity();
    let mut last_stable = T::infinity();
    for it in 1..=max_iter {
        let a = policy_matrix(grid, &policy, sigma);
        let Some(ilu) = Ilu0::new(&a) else {
            return InnerReport { iters: it, residual, converged: false };
        };
        let krylov_converged = bicgstab(&a, &ilu, f, w, lin_tol, 20_000);
        apply_scaled(grid, w, &mut lw, &mut best);
        residual = sup_residual(&lw, w, sigma, f);
        if residual < tol {
            return InnerReport { iters: it, residual, converged: true };
        }
        let mut changed = false;
        for k in 0..n {
            let current = second_difference(grid, w, k, policy[k] as usize);
            if lw[k] - current > switch {
                policy[k] = best[k];
                changed = true;
            }
        }
        if !changed {
            // same policy again: only worth it while restarted Krylov solves keep improving
            let stuck = krylov_converged || residual > T::half() * last_stable;
            last_stable = residual;
            if stuck {
                return InnerReport { iters: it, residual, converged: false };
            }
        }
    }
    InnerReport { iters: max_iter, residual, converged: false }
}

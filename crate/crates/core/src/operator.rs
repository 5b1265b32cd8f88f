//! Discrete truncated Laplacian: the largest eigenvalue of the Hessian
//! replaced by the maximum, over the stencil directions, of the
//! boundary-clipped second directional difference.

use rayon::prelude::*;

use crate::grid::{Grid2, ScalarField, NO_NODE};
use crate::{Result, Scalar};

/// `Λu` at every interior node, with the direction achieving the maximum.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorOutput<T> {
    pub values: Vec<T>,
    pub argmax: Vec<u16>,
}

/// Second difference along one direction with legs `s_plus`, `s_minus`:
///
/// `2·[s₋·u(x+s₊e) + s₊·u(x−s₋e) − (s₊+s₋)·u(x)] / (s₊·s₋·(s₊+s₋))`
///
/// A leg ending on the boundary carries the value 0.
#[inline]
pub fn directional_second_difference<T: Scalar>(u: T, u_plus: T, u_minus: T, s_plus: T, s_minus: T) -> T {
    let sum = s_plus + s_minus;
    T::two() * (s_minus * u_plus + s_plus * u_minus - sum * u) / (s_plus * s_minus * sum)
}

#[inline]
fn at<T: Scalar>(u: &[T], k: u32) -> T {
    if k == NO_NODE {
        T::zero()
    } else {
        u[k as usize]
    }
}

/// Second difference of interior node `k` along direction `dir`, in units of `1/h²`.
#[inline]
pub(crate) fn second_difference<T: Scalar>(grid: &Grid2<T>, u: &[T], k: usize, dir: usize) -> T {
    let a = &grid.arms_of(k)[dir];
    a.w_plus * at(u, a.next) + a.w_minus * at(u, a.prev) - a.w_center * u[k]
}

/// Max over directions at node `k` (lowest index wins ties), in units of `1/h²`.
#[inline]
pub(crate) fn node_max<T: Scalar>(grid: &Grid2<T>, u: &[T], k: usize) -> (T, u16) {
    let uk = u[k];
    let mut best = T::neg_infinity();
    let mut arg = 0u16;
    for (d, a) in grid.arms_of(k).iter().enumerate() {
        let v = a.w_plus * at(u, a.next) + a.w_minus * at(u, a.prev) - a.w_center * uk;
        if v > best {
            best = v;
            arg = d as u16;
        }
    }
    (best, arg)
}

/// `h²·Λu` on interior values; the solver works in these units.
pub(crate) fn apply_scaled<T: Scalar>(grid: &Grid2<T>, u: &[T], out: &mut [T], argmax: &mut [u16]) {
    out.par_iter_mut()
        .zip(argmax.par_iter_mut())
        .enumerate()
        .with_min_len(512)
        .for_each(|(k, (o, a))| {
            let (v, d) = node_max(grid, u, k);
            *o = v;
            *a = d;
        });
}

/// Applies the discrete operator `Λ` to a field.
pub fn apply<T: Scalar>(u: &ScalarField<T>, grid: &Grid2<T>) -> Result<OperatorOutput<T>> {
    let vals = u.interior_values(grid)?;
    let n = grid.interior_count();
    let mut values = vec![T::zero(); n];
    let mut argmax = vec![0u16; n];
    apply_scaled(grid, &vals, &mut values, &mut argmax);
    let inv_h2 = T::one() / (grid.h() * grid.h());
    values.iter_mut().for_each(|v| *v = *v * inv_h2);
    Ok(OperatorOutput { values, argmax })
}

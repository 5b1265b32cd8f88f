//! Small sparse toolkit for the policy systems: CSR storage, ILU(0) and
//! right-preconditioned BiCGSTAB.

use crate::Scalar;

/// Compressed sparse row matrix with sorted column indices per row.
#[derive(Debug, Clone)]
pub(crate) struct Csr<T> {
    pub n: usize,
    pub row_ptr: Vec<usize>,
    pub cols: Vec<u32>,
    pub vals: Vec<T>,
}

impl<T: Scalar> Csr<T> {
    pub fn with_capacity(n: usize, nnz: usize) -> Self {
        let mut row_ptr = Vec::with_capacity(n + 1);
        row_ptr.push(0);
        Self {
            n,
            row_ptr,
            cols: Vec::with_capacity(nnz),
            vals: Vec::with_capacity(nnz),
        }
    }

    /// Appends one row; `entries` need not be sorted.
    pub fn push_row(&mut self, entries: &mut [(u32, T)]) {
        entries.sort_unstable_by_key(|e| e.0);
        for &(c, v) in entries.iter() {
            self.cols.push(c);
            self.vals.push(v);
        }
        self.row_ptr.push(self.cols.len());
    }

    pub fn matvec(&self, x: &[T], y: &mut [T]) {
        for (i, yi) in y.iter_mut().enumerate() {
            let mut s = T::zero();
            for p in self.row_ptr[i]..self.row_ptr[i + 1] {
                s = s + self.vals[p] * x[self.cols[p] as usize];
            }
            *yi = s;
        }
    }
}

/// Incomplete LU factorization with the sparsity pattern of `A`.
///
/// Exists without pivoting for nonsingular M-matrices.
pub(crate) struct Ilu0<T> {
    lu: Csr<T>,
    diag: Vec<usize>,
}

impl<T: Scalar> Ilu0<T> {
    pub fn new(a: &Csr<T>) -> Option<Self> {
        let mut lu = a.clone();
        let n = a.n;
        let mut diag = vec![usize::MAX; n];
        for i in 0..n {
            for p in lu.row_ptr[i]..lu.row_ptr[i + 1] {
                if lu.cols[p] as usize == i {
                    diag[i] = p;
                }
            }
            if diag[i] == usize::MAX {
                return None;
            }
        }
        for i in 0..n {
            let (start, end) = (lu.row_ptr[i], lu.row_ptr[i + 1]);
            for p in start..end {
                let k = lu.cols[p] as usize;
                if k >= i {
                    break;
                }
                let pivot = lu.vals[diag[k]];
                if pivot == T::zero() {
                    return None;
                }
                let l = lu.vals[p] / pivot;
                lu.vals[p] = l;
                // row_i[j] -= l * row_k[j] for j > k present in both patterns
                for q in (p + 1)..end {
                    let j = lu.cols[q];
                    for r in (diag[k] + 1)..lu.row_ptr[k + 1] {
                        if lu.cols[r] == j {
                            lu.vals[q] = lu.vals[q] - l * lu.vals[r];
                            break;
                        }
                    }
                }
            }
            if !(lu.vals[diag[i]] != T::zero()) {
                return None;
            }
        }
        Some(Self { lu, diag })
    }

    /// `x ← (LU)⁻¹ b`
    pub fn solve(&self, b: &[T], x: &mut [T]) {
        let lu = &self.lu;
        for i in 0..lu.n {
            let mut s = b[i];
            for p in lu.row_ptr[i]..self.diag[i] {
                s = s - lu.vals[p] * x[lu.cols[p] as usize];
            }
            x[i] = s;
        }
        for i in (0..lu.n).rev() {
            let mut s = x[i];
            for p in (self.diag[i] + 1)..lu.row_ptr[i + 1] {
                s = s - lu.vals[p] * x[lu.cols[p] as usize];
            }
            x[i] = s / lu.vals[self.diag[i]];
        }
    }
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |s, (&x, &y)| s + x * y)
}

fn sup<T: Scalar>(a: &[T]) -> T {
    a.iter().fold(T::zero(), |m, &x| m.max(x.abs()))
}

/// Right-preconditioned BiCGSTAB; stops when `‖b − Ax‖∞ ≤ tol` and reports
/// whether it got there.
pub(crate) fn bicgstab<T: Scalar>(
    a: &Csr<T>,
    m: &Ilu0<T>,
    b: &[T],
    x: &mut [T],
    tol: T,
    max_iter: usize,
) -> bool {
    let n = a.n;
    let mut r = vec![T::zero(); n];
    a.matvec(x, &mut r);
    r.iter_mut().zip(b).for_each(|(ri, &bi)| *ri = bi - *ri);
    if sup(&r) <= tol {
        return true;
    }
    let mut r_hat = r.clone();
    let (mut rho, mut alpha, mut omega) = (T::one(), T::one(), T::one());
    let mut v = vec![T::zero(); n];
    let mut p = vec![T::zero(); n];
    let mut p_hat = vec![T::zero(); n];
    let mut s = vec![T::zero(); n];
    let mut s_hat = vec![T::zero(); n];
    let mut t = vec![T::zero(); n];
    let tiny = T::min_positive_value().sqrt();

    for _ in 0..max_iter {
        let rho_new = dot(&r_hat, &r);
        if rho_new.abs() < tiny * tiny {
            // breakdown: restart the shadow residual
            r_hat.copy_from_slice(&r);
            rho = T::one();
            alpha = T::one();
            omega = T::one();
            v.iter_mut().for_each(|e| *e = T::zero());
            p.iter_mut().for_each(|e| *e = T::zero());
            continue;
        }
        let beta = (rho_new / rho) * (alpha / omega);
        for i in 0..n {
            p[i] = r[i] + beta * (p[i] - omega * v[i]);
        }
        m.solve(&p, &mut p_hat);
        a.matvec(&p_hat, &mut v);
        let denom = dot(&r_hat, &v);
        if denom == T::zero() {
            r_hat.copy_from_slice(&r);
            rho = T::one();
            alpha = T::one();
            omega = T::one();
            v.iter_mut().for_each(|e| *e = T::zero());
            p.iter_mut().for_each(|e| *e = T::zero());
            continue;
        }
        alpha = rho_new / denom;
        for i in 0..n {
            s[i] = r[i] - alpha * v[i];
        }
        if sup(&s) <= tol {
            for i in 0..n {
                x[i] = x[i] + alpha * p_hat[i];
            }
            a.matvec(x, &mut r);
            r.iter_mut().zip(b).for_each(|(ri, &bi)| *ri = bi - *ri);
            if sup(&r) <= tol {
                return true;
            }
            r_hat.copy_from_slice(&r);
            rho = T::one();
            alpha = T::one();
            omega = T::one();
            v.iter_mut().for_each(|e| *e = T::zero());
            p.iter_mut().for_each(|e| *e = T::zero());
            continue;
        }
        m.solve(&s, &mut s_hat);
        a.matvec(&s_hat, &mut t);
        let tt = dot(&t, &t);
        omega = if tt > T::zero() { dot(&t, &s) / tt } else { T::zero() };
        for i in 0..n {
            x[i] = x[i] + alpha * p_hat[i] + omega * s_hat[i];
            r[i] = s[i] - omega * t[i];
        }
        rho = rho_new;
        if sup(&r) <= tol {
            // confirm against the true residual
            a.matvec(x, &mut t);
            let true_res = t.iter().zip(b).fold(T::zero(), |m, (&ti, &bi)| m.max((bi - ti).abs()));
            if true_res <= tol {
                return true;
            }
            r.iter_mut().zip(b).zip(&t).for_each(|((ri, &bi), &ti)| *ri = bi - ti);
        }
        if omega == T::zero() {
            r_hat.copy_from_slice(&r);
            rho = T::one();
            alpha = T::one();
            omega = T::one();
            v.iter_mut().for_each(|e| *e = T::zero());
            p.iter_mut().for_each(|e| *e = T::zero());
        }
    }
    false
}

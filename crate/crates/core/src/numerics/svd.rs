//! One-sided (Hestenes) Jacobi SVD.

use super::{ComplexMatrix, C64, JACOBI_MAX_SWEEPS, JACOBI_TOL};
use crate::error::{Error, Result};

/// `a = U diag(singular_values) V^dagger` with full square `U` (m x m) and `V` (n x n).
#[derive(Clone, Debug)]
pub struct Svd {
    /// Descending, length `min(m, n)`.
    pub singular_values: Vec<f64>,
    pub u: ComplexMatrix,
    pub v: ComplexMatrix,
}

impl Svd {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let (m, n) = (self.u.rows(), self.v.rows());
        let k = self.singular_values.len();
        let us = ComplexMatrix::from_fn(m, n, |i, j| {
            if j < k {
                self.u[(i, j)] * self.singular_values[j]
            } else {
                C64::new(0.0, 0.0)
            }
        });
        &us * &self.v.adjoint()
    }
}

pub fn svd_small(a: &ComplexMatrix) -> Result<Svd> {
    if a.rows() < a.cols() {
        let t = svd_tall(&a.adjoint())?;
        return Ok(Svd {
            singular_values: t.singular_values,
            u: t.v,
            v: t.u,
        });
    }
    svd_tall(a)
}

fn dot(x: &[C64], y: &[C64]) -> C64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

fn norm(x: &[C64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn column_rotate(cols: &mut [Vec<C64>], j: usize, k: usize, c: f64, s: f64, phase: C64) {
    let (left, right) = cols.split_at_mut(k);
    let (xj, xk) = (&mut left[j], &mut right[0]);
    let sp = phase.conj() * s;
    let sq = phase * s;
    for (a, b) in xj.iter_mut().zip(xk.iter_mut()) {
        let (aj, ak) = (*a, *b);
        *a = aj * c - ak * sp;
        *b = aj * sq + ak * c;
    }
}

/// m >= n case.
fn svd_tall(a: &ComplexMatrix) -> Result<Svd> {
    let (m, n) = a.dims();
    let mut w: Vec<Vec<C64>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<C64>> = (0..n)
        .map(|j| (0..n).map(|i| C64::new(if i == j { 1.0 } else { 0.0 }, 0.0)).collect())
        .collect();
    let scale = a.hs_norm();

    let mut sweep = 0;
    loop {
        // Off-diagonal mass of W^dagger W, compared against ||a||^2.
        let mut off = 0.0;
        for j in 0..n {
            for k in j + 1..n {
                off += 2.0 * dot(&w[j], &w[k]).norm_sqr();
            }
        }
        if off.sqrt() <= JACOBI_TOL * scale * scale {
            break;
        }
        if sweep == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps: sweep });
        }
        sweep += 1;
        for j in 0..n {
            for k in j + 1..n {
                let gamma = dot(&w[j], &w[k]);
                let g = gamma.norm();
                if g == 0.0 {
                    continue;
                }
                let alpha = dot(&w[j], &w[j]).re;
                let beta = dot(&w[k], &w[k]).re;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                column_rotate(&mut w, j, k, c, s, phase);
                column_rotate(&mut v, j, k, c, s, phase);
            }
        }
    }

    let sigma: Vec<f64> = w.iter().map(|col| norm(col)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sigma[j].total_cmp(&sigma[i]));

    let sigma_max = order.first().map(|&k| sigma[k]).unwrap_or(0.0);
    let cutoff = f64::EPSILON * sigma_max * (m as f64);
    let mut u_cols: Vec<Vec<C64>> = Vec::with_capacity(m);
    let mut singular_values = Vec::with_capacity(n);
    for &k in &order {
        singular_values.push(sigma[k]);
        if sigma[k] > cutoff && sigma[k] > 0.0 {
            u_cols.push(w[k].iter().map(|z| z / sigma[k]).collect());
        } else {
            u_cols.push(Vec::new());
        }
    }
    complete_orthonormal(&mut u_cols, m);

    let u = ComplexMatrix::from_fn(m, m, |i, j| u_cols[j][i]);
    let v = ComplexMatrix::from_fn(n, n, |i, j| v[order[j]][i]);
    Ok(Svd {
        singular_values,
        u,
        v,
    })
}

/// Fills empty slots and extends to `m` columns with orthonormal vectors (Gram–Schmidt on the
/// standard basis), re-orthogonalizing the numerically-null directions.
fn complete_orthonormal(cols: &mut Vec<Vec<C64>>, m: usize) {
    cols.resize(m, Vec::new());
    let mut candidate = 0;
    for slot in 0..m {
        if !cols[slot].is_empty() {
            continue;
        }
        loop {
            assert!(candidate < m, "basis completion ran out of candidates");
            let mut e = vec![C64::new(0.0, 0.0); m];
            e[candidate] = C64::new(1.0, 0.0);
            candidate += 1;
            // two passes of classical Gram–Schmidt
            for _ in 0..2 {
                for q in cols.iter().filter(|q| !q.is_empty()) {
                    let overlap = dot(q, &e);
                    for (x, y) in e.iter_mut().zip(q) {
                        *x -= overlap * y;
                    }
                }
            }
            let nrm = norm(&e);
            if nrm > 0.5 {
                cols[slot] = e.into_iter().map(|z| z / nrm).collect();
                break;
            }
        }
    }
}

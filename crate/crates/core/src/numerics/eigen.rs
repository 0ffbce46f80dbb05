//! Cyclic Jacobi eigendecomposition for small Hermitian matrices.

use super::{ComplexMatrix, C64, HERMITIAN_TOL, JACOBI_MAX_SWEEPS, JACOBI_TOL};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct HermitianEig {
    /// Eigenvalues, descending.
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector for `values[k]`.
    pub vectors: ComplexMatrix,
}

impl HermitianEig {
    /// `V diag(values) V^dagger`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let scaled = ComplexMatrix::from_fn(self.vectors.rows(), self.vectors.cols(), |i, j| {
            self.vectors[(i, j)] * self.values[j]
        });
        &scaled * &self.vectors.adjoint()
    }
}

fn off_diagonal_mass(m: &ComplexMatrix) -> f64 {
    let n = m.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += m[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Eigenvalues (descending) and a unitary eigenvector matrix of a Hermitian matrix.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<HermitianEig> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let deviation = a.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }

    let n = a.rows();
    let mut m = (a + &a.adjoint()).scale_real(0.5);
    let mut v = ComplexMatrix::identity(n);
    let scale = m.hs_norm();

    let mut sweep = 0;
    while off_diagonal_mass(&m) > JACOBI_TOL * scale {
        if sweep == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps: sweep });
        }
        sweep += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].re.total_cmp(&m[(i, i)].re));
    let values = order.iter().map(|&k| m[(k, k)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(HermitianEig { values, vectors })
}

/// One two-sided rotation `m <- J^dagger m J` annihilating `m[p][q]`, accumulated into `v`.
fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let n = m.rows();
    // Phase that makes the pivot real, then the real symmetric Jacobi angle.
    let phase = apq / g;
    let tau = (m[(q, q)].re - m[(p, p)].re) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let sp = phase.conj() * s; // s e^{-i phi}
    let cp = phase.conj() * c; // c e^{-i phi}

    let apply_cols = |x: &mut ComplexMatrix| {
        for k in 0..x.rows() {
            let xp = x[(k, p)];
            let xq = x[(k, q)];
            x[(k, p)] = xp * c - xq * sp;
            x[(k, q)] = xp * s + xq * cp;
        }
    };
    apply_cols(m);
    apply_cols(v);
    for k in 0..n {
        let xp = m[(p, k)];
        let xq = m[(q, k)];
        m[(p, k)] = xp * c - xq * sp.conj();
        m[(q, k)] = xp * s + xq * cp.conj();
    }
    m[(p, q)] = C64::new(0.0, 0.0);
    m[(q, p)] = C64::new(0.0, 0.0);
    m[(p, p)] = C64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = C64::new(m[(q, q)].re, 0.0);
}

#![allow(dead_code)]

use ncqd::{ComplexMatrix, C64};
use rand::Rng;

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

/// Gram–Schmidt on a random square matrix.
pub fn random_unitary(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let m = random_matrix(rng, n, n);
    let mut cols: Vec<Vec<C64>> = Vec::new();
    for j in 0..n {
        let mut v = m.column(j);
        for q in &cols {
            let overlap: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(q) {
                *x -= overlap * y;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// Random density matrix `G G^dagger / Tr`.
pub fn random_density(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let g = random_matrix(rng, n, n);
    let rho = &g * &g.adjoint();
    let tr = rho.trace().re;
    rho.scale_real(1.0 / tr)
}

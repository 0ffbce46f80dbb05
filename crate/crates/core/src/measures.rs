//! Block decomposition and the non-commutativity measures.
//!
//! For side [`Side::A`] the blocks are `B_ij = <i_A|ρ|j_A>`, operators on `H_B`;
//! for [`Side::B`] they are `A_ij = <i_B|ρ|j_B>`, operators on `H_A`. A local
//! unitary `U` on the chosen side selects the basis `|i'> = U|i>`, i.e. the
//! blocks of `U^dagger ρ U`.

use std::f64::consts::SQRT_2;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numerics::{commutator, hs_norm, partial_trace, svd_small, trace_norm, ComplexMatrix, C64};
use crate::states::{DensityMatrix, PureState};

/// Which subsystem's basis slices ρ into blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
        })
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Side::A),
            "B" | "b" => Ok(Side::B),
            _ => Err(Error::Invalid(format!("unknown side {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NormKind {
    Trace,
    HilbertSchmidt,
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NormKind::Trace => "trace",
            NormKind::HilbertSchmidt => "hilbert_schmidt",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasureValue {
    pub value: f64,
    pub norm_kind: NormKind,
    pub side: Side,
}

/// The `d x d` block operators of one bipartition in one representation.
#[derive(Clone, Debug)]
pub struct BlockSet {
    side: Side,
    dim_local: usize,
    /// Row-major: `blocks[i * dim_local + j]` is block `(i, j)`.
    blocks: Vec<ComplexMatrix>,
}

impl BlockSet {
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn dim_local(&self) -> usize {
        self.dim_local
    }

    pub fn get(&self, i: usize, j: usize) -> &ComplexMatrix {
        &self.blocks[i * self.dim_local + j]
    }

    /// All blocks in flat order `i * d + j`.
    pub fn flat(&self) -> &[ComplexMatrix] {
        &self.blocks
    }

    /// `Σ_ij |i><j| ⊗ B_ij` (side A) or `Σ_ij A_ij ⊗ |i><j|` (side B).
    pub fn reassemble(&self) -> ComplexMatrix {
        let d = self.dim_local;
        let other = self.blocks[0].rows();
        let n = d * other;
        match self.side {
            Side::A => ComplexMatrix::from_fn(n, n, |r, c| self.get(r / other, c / other)[(r % other, c % other)]),
            Side::B => ComplexMatrix::from_fn(n, n, |r, c| self.get(r % d, c % d)[(r / d, c / d)]),
        }
    }

    /// Sum over unordered pairs of distinct blocks of `||[X, Y]||`.
    pub fn noncommutativity(&self, norm: NormKind) -> Result<f64> {
        let mut total = 0.0;
        for (x, bx) in self.blocks.iter().enumerate() {
            for by in &self.blocks[x + 1..] {
                let comm = commutator(bx, by)?;
                total += match norm {
                    NormKind::HilbertSchmidt => hs_norm(&comm),
                    NormKind::Trace => trace_norm(&comm)?,
                };
            }
        }
        Ok(total)
    }
}

/// Tolerance on `U^dagger U - I` for a supplied local basis change.
pub const UNITARY_TOL: f64 = 1e-10;

/// Slices `U^dagger ρ U` (with `U` acting on `side` only) into blocks.
pub fn blocks(rho: &DensityMatrix, side: Side, u_local: Option<&ComplexMatrix>) -> Result<BlockSet> {
    let (d_a, d_b) = rho.dims();
    let (d, other) = match side {
        Side::A => (d_a, d_b),
        Side::B => (d_b, d_a),
    };
    let rotated;
    let mat = match u_local {
        None => rho.mat(),
        Some(u) => {
            if u.dims() != (d, d) {
                return Err(Error::DimensionMismatch {
                    left: u.dims(),
                    right: (d, d),
                });
            }
            let deviation = u.unitary_deviation();
            if deviation > UNITARY_TOL {
                return Err(Error::NotUnitary { deviation });
            }
            let full = match side {
                Side::A => u.kron(&ComplexMatrix::identity(d_b)),
                Side::B => ComplexMatrix::identity(d_a).kron(u),
            };
            rotated = &(&full.adjoint() * rho.mat()) * &full;
            &rotated
        }
    };
    let mut out = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            out.push(match side {
                Side::A => ComplexMatrix::from_fn(other, other, |a, b| mat[(i * d_b + a, j * d_b + b)]),
                Side::B => ComplexMatrix::from_fn(other, other, |a, b| mat[(a * d_b + i, b * d_b + j)]),
            });
        }
    }
    Ok(BlockSet {
        side,
        dim_local: d,
        blocks: out,
    })
}

/// `D_G` (trace norm) or `D'_G` (Hilbert–Schmidt norm) in the basis selected by `u_local`.
pub fn d_g(rho: &DensityMatrix, side: Side, norm_kind: NormKind, u_local: Option<&ComplexMatrix>) -> Result<MeasureValue> {
    let value = blocks(rho, side, u_local)?.noncommutativity(norm_kind)?;
    Ok(MeasureValue {
        value,
        norm_kind,
        side,
    })
}

/// Reduced matrix of the kept `side` expressed in the basis `|i'> = U|i>`: `U^dagger ρ_side U`.
pub fn reduced_in_basis(rho: &DensityMatrix, side: Side, u_local: &ComplexMatrix) -> Result<ComplexMatrix> {
    let reduced = partial_trace(rho.mat(), rho.dims(), side)?;
    Ok(&(&u_local.adjoint() * &reduced) * u_local)
}

fn require_two_qubit(psi: &PureState) -> Result<[C64; 4]> {
    if !psi.is_two_qubit() {
        let (d_a, d_b) = psi.dims();
        return Err(Error::UnsupportedDimension {
            expected: 4,
            actual: d_a * d_b,
        });
    }
    let a = psi.amplitudes();
    Ok([a[0], a[1], a[2], a[3]])
}

/// `C = 2|ad - bc|`.
pub fn concurrence_pure(psi: &PureState) -> Result<f64> {
    let [a, b, c, d] = require_two_qubit(psi)?;
    Ok((2.0 * (a * d - b * c).norm()).min(1.0))
}

/// `|(ρ_A)_01| = |a c* + b d*|` or `|(ρ_B)_01| = |a b* + c d*|`.
pub fn coherence_offdiag(psi: &PureState, side: Side) -> Result<f64> {
    let [a, b, c, d] = require_two_qubit(psi)?;
    Ok(match side {
        Side::A => (a * c.conj() + b * d.conj()).norm(),
        Side::B => (a * b.conj() + c * d.conj()).norm(),
    })
}

/// `C [1 + (sqrt(C^2 + 4h^2) + 2h) / (2√2)]` from concurrence and coherence.
pub fn closed_form_from(concurrence: f64, coherence: f64) -> f64 {
    let h2 = 2.0 * coherence;
    concurrence * (1.0 + (concurrence.hypot(h2) + h2) / (2.0 * SQRT_2))
}

/// Computational-basis `D'_G` of a two-qubit pure state without forming blocks.
pub fn pure_closed_form(psi: &PureState, side: Side) -> Result<f64> {
    Ok(closed_form_from(concurrence_pure(psi)?, coherence_offdiag(psi, side)?))
}

/// Schmidt-basis `D'_G = C (1 + C / (2√2))`.
pub fn pure_schmidt_value(psi: &PureState) -> Result<f64> {
    let c = concurrence_pure(psi)?;
    Ok(c * (1.0 + c / (2.0 * SQRT_2)))
}

/// `2 sqrt(λ0 λ1) + √2 λ0 λ1`.
pub fn schmidt_value_from_lambdas(l0: f64, l1: f64) -> f64 {
    let prod = (l0 * l1).max(0.0);
    2.0 * prod.sqrt() + SQRT_2 * prod
}

#[derive(Clone, Debug)]
pub struct SchmidtDecomposition {
    /// Descending, summing to one; length `min(d_a, d_b)`.
    pub lambdas: Vec<f64>,
    /// Columns `|v_n^A>`; the first `lambdas.len()` pair with the coefficients.
    pub basis_a: ComplexMatrix,
    /// Columns `|u_n^B>`.
    pub basis_b: ComplexMatrix,
}

impl SchmidtDecomposition {
    /// `Σ_n sqrt(λ_n) |v_n> ⊗ |u_n>`.
    pub fn reconstruct(&self) -> Vec<C64> {
        let (d_a, d_b) = (self.basis_a.rows(), self.basis_b.rows());
        let mut out = vec![C64::new(0.0, 0.0); d_a * d_b];
        for (n, &lam) in self.lambdas.iter().enumerate() {
            let w = lam.max(0.0).sqrt();
            for i in 0..d_a {
                for j in 0..d_b {
                    out[i * d_b + j] += self.basis_a[(i, n)] * self.basis_b[(j, n)] * w;
                }
            }
        }
        out
    }
}

/// Schmidt form from the SVD of the amplitude matrix `M = U Σ V^dagger`:
/// `|v_n> = U e_n`, `|u_n> = conj(V) e_n`, `λ_n = σ_n^2`.
pub fn schmidt(psi: &PureState) -> Result<SchmidtDecomposition> {
    let svd = svd_small(&psi.amplitude_matrix())?;
    let mut lambdas: Vec<f64> = svd.singular_values.iter().map(|s| s * s).collect();
    let total: f64 = lambdas.iter().sum();
    for l in &mut lambdas {
        *l /= total;
    }
    Ok(SchmidtDecomposition {
        lambdas,
        basis_a: svd.u,
        basis_b: svd.v.conj(),
    })
}

//! Non-commutativity measures of quantum correlations for bipartite states.
//!
//! A density matrix on `H_A ⊗ H_B` is sliced into the block operators
//! `B_ij = <i_A|ρ|j_A>` (or `A_ij = <i_B|ρ|j_B>` for the opposite bipartition);
//! the measures sum the trace or Hilbert–Schmidt norms of all pairwise block
//! commutators. Because the blocks depend on the local basis, the crate also
//! provides the representation-minimized value `d'` over SU(2) local bases.
//!
//! Modules:
//! - [`numerics`]: small dense complex matrices, norms, Jacobi eigen/SVD.
//! - [`states`]: Bell states, the mixed-state families, Haar sampling, validation.
//! - [`measures`]: block decomposition, `D_G` / `D'_G`, concurrence, Schmidt form.
//! - [`optimizer`]: multi-start Nelder–Mead over SU(2) for `d'`.
//! - [`experiments`]: Monte Carlo and parameter sweeps producing table rows.

pub mod error;
pub mod experiments;
pub mod measures;
pub mod numerics;
pub mod optimizer;
pub mod par;
pub mod states;

pub use error::{Error, Result};
pub use measures::{MeasureValue, NormKind, Side};
pub use numerics::{ComplexMatrix, C64};
pub use optimizer::{OptimizationReport, OptimizerConfig, SU2Params};
pub use states::{DensityMatrix, PureState, RngSeed};

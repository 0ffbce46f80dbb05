//! Representation-minimized measure `d'` over SU(2) local bases.
//!
//! The objective is `D'_G` evaluated on the blocks of `U^dagger ρ U`, with `U`
//! ranging over SU(2) on the chosen side. The landscape is periodic and has
//! kinks wherever a commutator vanishes, so it is searched with multi-start
//! Nelder–Mead; the identity basis is always one of the starts.

pub mod nelder_mead;

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::Rng;

use crate::error::{Error, Result};
use crate::measures::{blocks, pure_schmidt_value, NormKind, Side};
use crate::numerics::{ComplexMatrix, C64};
use crate::par::{self, Execution};
use crate::states::{DensityMatrix, PureState, RngSeed};

/// Angles of `U = [[e^{iα} cos θ, e^{iβ} sin θ], [-e^{-iβ} sin θ, e^{-iα} cos θ]]`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SU2Params {
    pub alpha: f64,
    pub beta: f64,
    pub theta: f64,
}

impl SU2Params {
    pub const IDENTITY: SU2Params = SU2Params {
        alpha: 0.0,
        beta: 0.0,
        theta: 0.0,
    };

    pub fn new(alpha: f64, beta: f64, theta: f64) -> Self {
        Self { alpha, beta, theta }
    }

    fn from_array(x: &[f64; 3]) -> Self {
        Self::new(x[0], x[1], x[2])
    }

    fn to_array(self) -> [f64; 3] {
        [self.alpha, self.beta, self.theta]
    }

    /// Same matrix with `α, β ∈ [0, 2π)` and `θ ∈ [0, π/2]`.
    pub fn canonical(self) -> Self {
        let mut alpha = self.alpha;
        let mut beta = self.beta;
        let mut theta = self.theta.rem_euclid(TAU);
        // θ -> θ - π flips both cos and sin
        if theta >= PI {
            theta -= PI;
            alpha += PI;
            beta += PI;
        }
        // θ -> π - θ flips cos only
        if theta > FRAC_PI_2 {
            theta = PI - theta;
            alpha += PI;
        }
        Self {
            alpha: wrap_angle(alpha),
            beta: wrap_angle(beta),
            theta,
        }
    }
}

fn wrap_angle(x: f64) -> f64 {
    let w = x.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

pub fn su2_from_params(p: SU2Params) -> ComplexMatrix {
    let (s, c) = p.theta.sin_cos();
    let ea = C64::from_polar(1.0, p.alpha);
    let eb = C64::from_polar(1.0, p.beta);
    ComplexMatrix::new(2, 2, vec![ea * c, eb * s, -eb.conj() * s, ea.conj() * c])
        .expect("finite SU(2) parameters")
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptimizerConfig {
    pub n_starts: usize,
    pub max_iters: usize,
    /// Stop a start once the simplex value spread is below this.
    pub tol: f64,
    /// Edge length of the initial simplex, radians.
    pub initial_step: f64,
    pub seed: RngSeed,
    pub execution: Execution,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            n_starts: 24,
            max_iters: 400,
            tol: 1e-10,
            initial_step: 0.3,
            seed: RngSeed(0x5eed),
            execution: Execution::default(),
        }
    }
}

impl OptimizerConfig {
    fn check(&self) -> Result<()> {
        if self.n_starts == 0 || self.max_iters == 0 || !(self.tol > 0.0) || !(self.initial_step > 0.0) {
            return Err(Error::Invalid(format!("optimizer settings must be positive: {self:?}")));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct OptimizationReport {
    pub d_prime: f64,
    pub best_params: SU2Params,
    pub side: Side,
    /// Minimum reached from each start, in start order (start 0 is the identity).
    pub start_values: Vec<f64>,
    pub evaluations: usize,
    /// True when at least one start met the spread criterion.
    pub converged: bool,
    pub identity_value: f64,
}

/// `D'_G` of `rho` in the basis `su2_from_params(p)` on `side`.
pub fn objective(rho: &DensityMatrix, side: Side, p: SU2Params) -> Result<f64> {
    let u = su2_from_params(p);
    blocks(rho, side, Some(&u))?.noncommutativity(NormKind::HilbertSchmidt)
}

fn start_points(cfg: &OptimizerConfig) -> Vec<SU2Params> {
    let mut rng = cfg.seed.rng();
    let mut starts = vec![SU2Params::IDENTITY];
    while starts.len() < cfg.n_starts {
        starts.push(SU2Params::new(
            rng.random_range(0.0..TAU),
            rng.random_range(0.0..TAU),
            rng.random_range(0.0..=FRAC_PI_2),
        ));
    }
    starts
}

/// `d'(ρ) = min_U D'_G(U^dagger ρ U)` over SU(2) on `side`.
pub fn d_prime(rho: &DensityMatrix, side: Side, cfg: &OptimizerConfig) -> Result<OptimizationReport> {
    cfg.check()?;
    let local = match side {
        Side::A => rho.d_a(),
        Side::B => rho.d_b(),
    };
    if local != 2 {
        return Err(Error::UnsupportedDimension {
            expected: 2,
            actual: local,
        });
    }
    let identity_value = objective(rho, side, SU2Params::IDENTITY)?;
    let starts = start_points(cfg);
    let outcomes = par::map_slice(cfg.execution, &starts, |start| {
        // The basis change is already validated as unitary, so evaluation cannot fail.
        let f = |x: &[f64; 3]| objective(rho, side, SU2Params::from_array(x)).unwrap_or(f64::INFINITY);
        nelder_mead::minimize(f, start.to_array(), cfg.initial_step, cfg.max_iters, cfg.tol)
    });

    let mut best = 0;
    for (k, o) in outcomes.iter().enumerate() {
        if o.value < outcomes[best].value {
            best = k;
        }
    }
    Ok(OptimizationReport {
        d_prime: outcomes[best].value,
        best_params: SU2Params::from_array(&outcomes[best].x).canonical(),
        side,
        start_values: outcomes.iter().map(|o| o.value).collect(),
        evaluations: outcomes.iter().map(|o| o.evaluations).sum::<usize>() + 1,
        converged: outcomes.iter().any(|o| o.converged),
        identity_value,
    })
}

/// Analytic `d'` of a two-qubit pure state: the Schmidt-basis value.
pub fn d_prime_pure(psi: &PureState) -> Result<f64> {
    pure_schmidt_value(psi)
}

//! Monte Carlo over Haar-random pure states and parameter sweeps over the
//! mixed-state families. Rows come back in input order whatever the execution mode.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::measures::{concurrence_pure, d_g, schmidt, NormKind, Side};
use crate::optimizer::{d_prime, OptimizerConfig};
use crate::par::{self, Execution};
use crate::states::{
    bell_diag_rho1, bell_diag_rho2, haar_random_pure, pseudo_pure, three_term_state, werner, DensityMatrix,
    RngSeed,
};

/// One Haar sample: concurrence and `D'_G` in the computational and Schmidt bases.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomRow {
    pub concurrence: f64,
    pub dg_comp: f64,
    pub dg_schmidt: f64,
}

impl RandomRow {
    pub fn c2(&self) -> f64 {
        self.concurrence * self.concurrence
    }
}

pub fn random_sample(seed: RngSeed, index: u64, side: Side) -> Result<RandomRow> {
    let psi = haar_random_pure(2, 2, seed.stream(index))?;
    let rho = psi.density();
    let sd = schmidt(&psi)?;
    let local = match side {
        Side::A => &sd.basis_a,
        Side::B => &sd.basis_b,
    };
    Ok(RandomRow {
        concurrence: concurrence_pure(&psi)?,
        dg_comp: d_g(&rho, side, NormKind::HilbertSchmidt, None)?.value,
        dg_schmidt: d_g(&rho, side, NormKind::HilbertSchmidt, Some(local))?.value,
    })
}

/// `n` two-qubit Haar samples; sample `i` is drawn from `seed.stream(i)`.
pub fn random_pure_scan(n: usize, seed: RngSeed, side: Side, exec: Execution) -> Result<Vec<RandomRow>> {
    par::map_range(exec, n, |i| random_sample(seed, i as u64, side))
        .into_iter()
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RandomSummary {
    pub samples: usize,
    pub max_comp: f64,
    pub concurrence_at_max_comp: f64,
    pub max_schmidt: f64,
    pub concurrence_at_max_schmidt: f64,
}

/// Column maxima and where they occur; ties keep the earliest row.
pub fn summarize(rows: &[RandomRow]) -> RandomSummary {
    let mut s = RandomSummary {
        samples: rows.len(),
        max_comp: f64::NEG_INFINITY,
        max_schmidt: f64::NEG_INFINITY,
        ..RandomSummary::default()
    };
    for r in rows {
        if r.dg_comp > s.max_comp {
            s.max_comp = r.dg_comp;
            s.concurrence_at_max_comp = r.concurrence;
        }
        if r.dg_schmidt > s.max_schmidt {
            s.max_schmidt = r.dg_schmidt;
            s.concurrence_at_max_schmidt = r.concurrence;
        }
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `(1-p) I/4 + p |ψ><ψ|` with `ψ = (|00> + |01> + |10>)/√3`.
    PseudoPurePsi,
    Werner,
    Rho1,
    Rho2,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::PseudoPurePsi, Family::Werner, Family::Rho1, Family::Rho2];

    pub fn name(self) -> &'static str {
        match self {
            Family::PseudoPurePsi => "pseudo_pure_psi",
            Family::Werner => "werner",
            Family::Rho1 => "rho1",
            Family::Rho2 => "rho2",
        }
    }

    pub fn state(self, p: f64) -> Result<DensityMatrix> {
        match self {
            Family::PseudoPurePsi => pseudo_pure(p, &three_term_state()),
            Family::Werner => werner(p),
            Family::Rho1 => bell_diag_rho1(p),
            Family::Rho2 => bell_diag_rho2(p),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown family {s:?}")))
    }
}

/// Default sweep resolution.
pub const DEFAULT_GRID: usize = 201;

/// `n` uniform points on `[0, 1]`, endpoints exact.
pub fn p_grid(n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::Invalid(format!("grid needs at least 2 points, got {n}")));
    }
    let last = (n - 1) as f64;
    Ok((0..n).map(|i| i as f64 / last).collect())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanRow {
    pub p: f64,
    pub dg_comp: f64,
    pub d_prime: f64,
    pub converged: bool,
}

pub fn family_point(family: Family, p: f64, side: Side, cfg: &OptimizerConfig) -> Result<ScanRow> {
    let rho = family.state(p)?;
    let report = d_prime(&rho, side, cfg)?;
    Ok(ScanRow {
        p,
        dg_comp: report.identity_value,
        d_prime: report.d_prime,
        converged: report.converged,
    })
}

pub fn family_scan(family: Family, grid: usize, side: Side, cfg: &OptimizerConfig) -> Result<Vec<ScanRow>> {
    let ps = p_grid(grid)?;
    par::map_slice(cfg.execution, &ps, |&p| family_point(family, p, side, cfg))
        .into_iter()
        .collect()
}

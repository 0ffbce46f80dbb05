//! Subcommand bodies. Each writes its report to the given sinks.

use std::io::Write;
use std::str::FromStr;

use ncqd::experiments::{self, Family};
use ncqd::measures::{d_g, schmidt as schmidt_decomposition};
use ncqd::optimizer::{d_prime, su2_from_params};
use ncqd::par::Execution;
use ncqd::{NormKind, OptimizerConfig, RngSeed, SU2Params, Side};

use crate::format::{self, csv, report};
use crate::statefile::StateFile;
use crate::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SideChoice {
    One(Side),
    Both,
}

impl SideChoice {
    pub fn sides(self) -> Vec<Side> {
        match self {
            SideChoice::One(s) => vec![s],
            SideChoice::Both => vec![Side::A, Side::B],
        }
    }
}

impl FromStr for SideChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "both" => Ok(SideChoice::Both),
            _ => s.parse().map(SideChoice::One).map_err(|_| format!("expected A, B or both, got {s:?}")),
        }
    }
}

pub fn parse_norm(s: &str) -> Result<NormKind, String> {
    match s {
        "hs" => Ok(NormKind::HilbertSchmidt),
        "trace" => Ok(NormKind::Trace),
        _ => Err(format!("expected hs or trace, got {s:?}")),
    }
}

fn norm_label(n: NormKind) -> &'static str {
    match n {
        NormKind::HilbertSchmidt => "hs",
        NormKind::Trace => "trace",
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Basis {
    Computational,
    Schmidt,
    Params(SU2Params),
}

impl FromStr for Basis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "comp" => return Ok(Basis::Computational),
            "schmidt" => return Ok(Basis::Schmidt),
            _ => {}
        }
        let parts: Vec<f64> = s
            .split(',')
            .map(|t| t.trim().parse::<f64>().ok().filter(|v| v.is_finite()))
            .collect::<Option<_>>()
            .ok_or_else(|| format!("expected comp, schmidt or alpha,beta,theta, got {s:?}"))?;
        match parts[..] {
            [a, b, t] => Ok(Basis::Params(SU2Params::new(a, b, t))),
            _ => Err(format!("expected three comma-separated angles, got {s:?}")),
        }
    }
}

impl std::fmt::Display for Basis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Basis::Computational => write!(f, "comp"),
            Basis::Schmidt => write!(f, "schmidt"),
            Basis::Params(p) => write!(f, "{},{},{}", p.alpha, p.beta, p.theta),
        }
    }
}

pub fn eval(state: &StateFile, sides: SideChoice, norm: NormKind, basis: Basis, out: &mut dyn Write) -> CliResult<()> {
    let rho = state.density();
    let decomposition = match basis {
        Basis::Schmidt => {
            let psi = state
                .pure()
                .ok_or_else(|| CliError::Usage("the schmidt basis needs a pure input".into()))?;
            Some(schmidt_decomposition(psi)?)
        }
        _ => None,
    };
    for side in sides.sides() {
        let u = match (&basis, &decomposition) {
            (Basis::Computational, _) => None,
            (Basis::Schmidt, Some(sd)) => Some(match side {
                Side::A => sd.basis_a.clone(),
                Side::B => sd.basis_b.clone(),
            }),
            (Basis::Params(p), _) => {
                let local = if side == Side::A { rho.d_a() } else { rho.d_b() };
                if local != 2 {
                    return Err(ncqd::Error::UnsupportedDimension { expected: 2, actual: local }.into());
                }
                Some(su2_from_params(*p))
            }
            (Basis::Schmidt, None) => unreachable!(),
        };
        let v = d_g(&rho, side, norm, u.as_ref())?;
        writeln!(out, "side={side} norm={} basis={basis} value={}", norm_label(norm), report(v.value))?;
    }
    Ok(())
}

pub fn random(
    n: usize,
    seed: RngSeed,
    side: Side,
    exec: Execution,
    table: &mut dyn Write,
    summary: &mut dyn Write,
) -> CliResult<()> {
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let rows = experiments::random_pure_scan(n, seed, side, exec)?;
    writeln!(table, "c2,dg_comp,dg_schmidt")?;
    for r in &rows {
        writeln!(table, "{},{},{}", csv(r.c2()), csv(r.dg_comp), csv(r.dg_schmidt))?;
    }
    table.flush()?;
    let s = experiments::summarize(&rows);
    writeln!(summary, "samples={}", s.samples)?;
    writeln!(summary, "max_dg_comp={} at C={}", report(s.max_comp), report(s.concurrence_at_max_comp))?;
    writeln!(summary, "max_dg_schmidt={} at C={}", report(s.max_schmidt), report(s.concurrence_at_max_schmidt))?;
    Ok(())
}

pub fn scan(family: Family, grid: usize, side: Side, cfg: &OptimizerConfig, table: &mut dyn Write) -> CliResult<()> {
    if grid < 2 {
        return Err(CliError::Usage("--grid must be at least 2".into()));
    }
    let rows = experiments::family_scan(family, grid, side, cfg)?;
    writeln!(table, "p,dg_comp,d_prime,converged")?;
    for r in &rows {
        writeln!(table, "{},{},{},{}", csv(r.p), csv(r.dg_comp), csv(r.d_prime), u8::from(r.converged))?;
    }
    table.flush()?;
    let failed = rows.iter().filter(|r| !r.converged).count();
    if failed > 0 {
        return Err(CliError::NotConverged(format!("{failed} of {} grid points", rows.len())));
    }
    Ok(())
}

pub fn minimize(state: &StateFile, sides: SideChoice, cfg: &OptimizerConfig, out: &mut dyn Write) -> CliResult<()> {
    let rho = state.density();
    let mut failed = Vec::new();
    for side in sides.sides() {
        let r = d_prime(&rho, side, cfg)?;
        let p = r.best_params;
        writeln!(out, "side={side} d_prime={}", report(r.d_prime))?;
        writeln!(out, "  alpha={} beta={} theta={}", report(p.alpha), report(p.beta), report(p.theta))?;
        let starts: Vec<String> = r.start_values.iter().map(|&v| report(v)).collect();
        writeln!(out, "  start_minima={}", starts.join(","))?;
        writeln!(out, "  evaluations={} converged={}", r.evaluations, r.converged)?;
        if !r.converged {
            failed.push(side.to_string());
        }
    }
    if !failed.is_empty() {
        return Err(CliError::NotConverged(format!("side {}", failed.join(","))));
    }
    Ok(())
}

pub fn schmidt(state: &StateFile, out: &mut dyn Write) -> CliResult<()> {
    let psi = state
        .pure()
        .ok_or_else(|| CliError::Usage("schmidt needs a pure input".into()))?;
    let sd = schmidt_decomposition(psi)?;
    let lambdas: Vec<String> = sd.lambdas.iter().map(|&l| report(l)).collect();
    writeln!(out, "lambdas={}", lambdas.join(","))?;
    writeln!(out, "basis_a (columns):")?;
    write!(out, "{}", format::matrix(&sd.basis_a))?;
    writeln!(out, "basis_b (columns):")?;
    write!(out, "{}", format::matrix(&sd.basis_b))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statefile::parse_state;

    fn run_eval(text: &str, side: &str, norm: &str, basis: &str) -> CliResult<String> {
        let mut out = Vec::new();
        eval(
            &parse_state(text)?,
            side.parse().unwrap(),
            parse_norm(norm).unwrap(),
            basis.parse().unwrap(),
            &mut out,
        )?;
        Ok(String::from_utf8(out).unwrap())
    }

    #[test]
    fn option_parsing() {
        assert_eq!("both".parse::<SideChoice>(), Ok(SideChoice::Both));
        assert_eq!("B".parse::<SideChoice>(), Ok(SideChoice::One(Side::B)));
        assert!("C".parse::<SideChoice>().is_err());
        assert_eq!("comp".parse::<Basis>(), Ok(Basis::Computational));
        assert_eq!("0.1,0.2,0.3".parse::<Basis>(), Ok(Basis::Params(SU2Params::new(0.1, 0.2, 0.3))));
        assert!("0.1,0.2".parse::<Basis>().is_err());
        assert!("x,y,z".parse::<Basis>().is_err());
        assert!(parse_norm("frobenius").is_err());
    }

    #[test]
    fn eval_bell_and_product() {
        let bell = "pure 2 2\n0.7071067811865476 0 0 0.7071067811865476\n";
        assert_eq!(run_eval(bell, "A", "hs", "comp").unwrap(), "side=A norm=hs basis=comp value=1.353553\n");
        assert_eq!(run_eval(bell, "both", "hs", "schmidt").unwrap().lines().count(), 2);
        let product = "pure 2 2\n1 0 0 0\n";
        assert_eq!(run_eval(product, "A", "trace", "comp").unwrap(), "side=A norm=trace basis=comp value=0\n");
    }

    #[test]
    fn eval_params_basis_matches_identity() {
        let t = "pure 2 2\n0.5773502691896258 0.5773502691896258 0.5773502691896258 0\n";
        let at_identity = run_eval(t, "A", "hs", "0,0,0").unwrap();
        assert!(at_identity.ends_with("value=1.046024\n"), "{at_identity}");
    }

    #[test]
    fn schmidt_basis_rejects_mixed() {
        let mixed = "dims 2 2\n0.25 0 0 0\n0 0.25 0 0\n0 0 0.25 0\n0 0 0 0.25\n";
        let err = run_eval(mixed, "A", "hs", "schmidt").unwrap_err();
        assert_eq!(err.exit_code(), 2);
        let mut sink = Vec::new();
        assert_eq!(schmidt(&parse_state(mixed).unwrap(), &mut sink).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn params_basis_needs_qubit_side() {
        let qutrit = "pure 3 2\n1 0 0 0 0 0\n";
        let err = run_eval(qutrit, "A", "hs", "0,0,0").unwrap_err();
        assert!(matches!(err, CliError::Invalid(ncqd::Error::UnsupportedDimension { .. })));
        assert!(run_eval(qutrit, "B", "hs", "0,0,0").is_ok());
    }

    #[test]
    fn scan_and_random_reject_tiny_counts() {
        let mut sink = Vec::new();
        let cfg = OptimizerConfig::default();
        assert_eq!(scan(Family::Werner, 1, Side::A, &cfg, &mut sink).unwrap_err().exit_code(), 2);
        let mut sink2 = Vec::new();
        let err = random(0, RngSeed(1), Side::A, Execution::Sequential, &mut sink, &mut sink2).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn minimize_flags_non_convergence() {
        let state = parse_state(&crate::statefile::render_pure(&ncqd::states::three_term_state())).unwrap();
        let cfg = OptimizerConfig {
            n_starts: 2,
            max_iters: 1,
            ..OptimizerConfig::default()
        };
        let mut out = Vec::new();
        let err = minimize(&state, SideChoice::One(Side::A), &cfg, &mut out).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(String::from_utf8(out).unwrap().contains("converged=false"));
    }
}

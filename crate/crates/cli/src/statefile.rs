//! Text state files.
//!
//! ```text
//! # Werner state, p = 0.5
//! dims 2 2
//! 0.3125 0 0 0.25
//! 0 0.125 0 0
//! 0 0 0.125 0
//! 0.25 0 0 0.3125
//! ```
//!
//! or a pure state, whose amplitudes may span several lines:
//!
//! ```text
//! pure 2 2
//! 0.70710678 0 0 0.70710678
//! ```
//!
//! Entries are complex literals `a`, `a+bi`, `a-bi`, `bi` (exponents allowed).
//! Blank lines and `#` comments are ignored.

use ncqd::{ComplexMatrix, DensityMatrix, PureState, C64};

use crate::CliError;

/// Pure-state amplitudes are renormalized if their norm is within this of one.
pub const PURE_NORM_SLACK: f64 = 1e-6;

#[derive(Clone, Debug)]
pub enum StateFile {
    Mixed(DensityMatrix),
    Pure(PureState),
}

impl StateFile {
    pub fn density(&self) -> DensityMatrix {
        match self {
            StateFile::Mixed(rho) => rho.clone(),
            StateFile::Pure(psi) => psi.density(),
        }
    }

    pub fn pure(&self) -> Option<&PureState> {
        match self {
            StateFile::Pure(psi) => Some(psi),
            StateFile::Mixed(_) => None,
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_real(s: &str) -> Option<f64> {
    let v: f64 = s.parse().ok()?;
    v.is_finite().then_some(v)
}

/// Parses `a`, `a+bi`, `a-bi`, `bi`, `i`, `-i`.
pub fn parse_complex(token: &str) -> Option<C64> {
    let Some(body) = token.strip_suffix('i') else {
        return parse_real(token).map(|re| C64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |s: &str| match s {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        _ => parse_real(s),
    };
    match split {
        Some(k) => Some(C64::new(parse_real(&body[..k])?, imag(&body[k..])?)),
        None => Some(C64::new(0.0, imag(body)?)),
    }
}

fn parse_dims(line_no: usize, fields: &[&str]) -> Result<(usize, usize), CliError> {
    if fields.len() != 3 {
        return Err(parse_err(line_no, "header must be `dims <d_A> <d_B>` or `pure <d_A> <d_B>`"));
    }
    let d = |s: &str| {
        s.parse::<usize>()
            .ok()
            .filter(|d| (1..=ncqd::numerics::MAX_DIM).contains(d))
            .ok_or_else(|| parse_err(line_no, format!("bad dimension {s:?}")))
    };
    let (d_a, d_b) = (d(fields[1])?, d(fields[2])?);
    if d_a * d_b > ncqd::numerics::MAX_DIM {
        return Err(parse_err(line_no, format!("total dimension {} exceeds {}", d_a * d_b, ncqd::numerics::MAX_DIM)));
    }
    Ok((d_a, d_b))
}

pub fn parse_state(text: &str) -> Result<StateFile, CliError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or_else(|| parse_err(1, "empty state file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let kind = fields[0];
    let (d_a, d_b) = parse_dims(header_line, &fields)?;
    let n = d_a * d_b;

    let parse_row = |line_no: usize, line: &str| -> Result<Vec<C64>, CliError> {
        line.split_whitespace()
            .map(|tok| parse_complex(tok).ok_or_else(|| parse_err(line_no, format!("bad complex literal {tok:?}"))))
            .collect()
    };

    match kind {
        "dims" => {
            let mut entries = Vec::with_capacity(n * n);
            let mut rows = 0;
            let mut last_line = header_line;
            for (line_no, line) in lines {
                last_line = line_no;
                let row = parse_row(line_no, line)?;
                if row.len() != n {
                    return Err(parse_err(line_no, format!("expected {n} entries, found {}", row.len())));
                }
                rows += 1;
                if rows > n {
                    return Err(parse_err(line_no, format!("more than {n} rows")));
                }
                entries.extend(row);
            }
            if rows != n {
                return Err(parse_err(last_line, format!("expected {n} rows, found {rows}")));
            }
            let mat = ComplexMatrix::new(n, n, entries).map_err(|e| parse_err(header_line, e.to_string()))?;
            Ok(StateFile::Mixed(DensityMatrix::validate(mat, d_a, d_b)?))
        }
        "pure" => {
            let mut amps = Vec::with_capacity(n);
            let mut last_line = header_line;
            for (line_no, line) in lines {
                last_line = line_no;
                amps.extend(parse_row(line_no, line)?);
            }
            if amps.len() != n {
                return Err(parse_err(last_line, format!("expected {n} amplitudes, found {}", amps.len())));
            }
            let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > PURE_NORM_SLACK {
                return Err(ncqd::Error::NotNormalized {
                    deviation: (norm - 1.0).abs(),
                }
                .into());
            }
            Ok(StateFile::Pure(PureState::normalized(amps, d_a, d_b)?))
        }
        other => Err(parse_err(header_line, format!("unknown header {other:?}"))),
    }
}

/// Writes a state in the same format `parse_state` reads.
pub fn render_density(rho: &DensityMatrix) -> String {
    let (d_a, d_b) = rho.dims();
    let mut out = format!("dims {d_a} {d_b}\n");
    let m = rho.mat();
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| render_complex(m[(i, j)])).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn render_pure(psi: &PureState) -> String {
    let (d_a, d_b) = psi.dims();
    let amps: Vec<String> = psi.amplitudes().iter().map(|&z| render_complex(z)).collect();
    format!("pure {d_a} {d_b}\n{}\n", amps.join(" "))
}

pub fn render_complex(z: C64) -> String {
    if z.im == 0.0 {
        format!("{:e}", z.re)
    } else {
        format!("{:e}{:+e}i", z.re, z.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        let c = |re, im| Some(C64::new(re, im));
        assert_eq!(parse_complex("0.5"), c(0.5, 0.0));
        assert_eq!(parse_complex("-0.5"), c(-0.5, 0.0));
        assert_eq!(parse_complex("1+2i"), c(1.0, 2.0));
        assert_eq!(parse_complex("1-2i"), c(1.0, -2.0));
        assert_eq!(parse_complex("-1.5e-3+2.5E+1i"), c(-1.5e-3, 25.0));
        assert_eq!(parse_complex("1e-3-1e-3i"), c(1e-3, -1e-3));
        assert_eq!(parse_complex("2i"), c(0.0, 2.0));
        assert_eq!(parse_complex("-i"), c(0.0, -1.0));
        assert_eq!(parse_complex("i"), c(0.0, 1.0));
        assert_eq!(parse_complex("0.3+i"), c(0.3, 1.0));
        assert_eq!(parse_complex("1e5i"), c(0.0, 1e5));
        for bad in ["", "x", "1+", "1+2", "1+2j", "nan", "inf", "1+-2i"] {
            assert_eq!(parse_complex(bad), None, "{bad}");
        }
    }

    #[test]
    fn parses_mixed_state() {
        let text = "# maximally mixed\ndims 2 2\n0.25 0 0 0\n0 0.25 0 0\n\n0 0 0.25 0 # row 3\n0 0 0 0.25\n";
        let StateFile::Mixed(rho) = parse_state(text).unwrap() else { panic!("expected mixed") };
        assert_eq!(rho.dims(), (2, 2));
    }

    #[test]
    fn parses_pure_state_across_lines() {
        let text = "pure 2 2\n0.70710678\n0 0\n0.70710678\n";
        let StateFile::Pure(psi) = parse_state(text).unwrap() else { panic!("expected pure") };
        let norm: f64 = psi.amplitudes().iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-14);
    }

    #[test]
    fn reports_line_numbers() {
        match parse_state("dims 2 2\n1 0 0 0\n0 0 zz 0\n") {
            Err(CliError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        match parse_state("\n\ndims 2 2\n1 0 0\n") {
            Err(CliError::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
        match parse_state("dims 2 2\n1 0 0 0\n") {
            Err(CliError::Parse { line, msg }) => {
                assert_eq!(line, 2);
                assert!(msg.contains("rows"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_state("states 2 2\n"), Err(CliError::Parse { line: 1, .. })));
        assert!(matches!(parse_state("dims 2\n"), Err(CliError::Parse { line: 1, .. })));
        assert!(matches!(parse_state("dims 5 5\n"), Err(CliError::Parse { line: 1, .. })));
        assert!(matches!(parse_state("# nothing\n"), Err(CliError::Parse { .. })));
    }

    #[test]
    fn validation_errors_surface() {
        let trace2 = "dims 2 1\n1 0\n0 1\n";
        assert!(matches!(parse_state(trace2), Err(CliError::Invalid(ncqd::Error::Trace { .. }))));
        let negative = "dims 2 2\n1.5 0 0 0\n0 -0.5 0 0\n0 0 0 0\n0 0 0 0\n";
        assert!(matches!(parse_state(negative), Err(CliError::Invalid(ncqd::Error::NotPositive { .. }))));
        let unnormalized = "pure 2 2\n1 1 0 0\n";
        assert!(matches!(parse_state(unnormalized), Err(CliError::Invalid(ncqd::Error::NotNormalized { .. }))));
    }

    #[test]
    fn render_round_trip() {
        let rho = ncqd::states::bell_diag_rho1(0.3).unwrap();
        let StateFile::Mixed(back) = parse_state(&render_density(&rho)).unwrap() else { panic!() };
        assert_eq!(back.mat().max_abs_diff(rho.mat()), 0.0);
        let psi = ncqd::states::haar_random_pure(2, 2, ncqd::RngSeed(4)).unwrap();
        let StateFile::Pure(back) = parse_state(&render_pure(&psi)).unwrap() else { panic!() };
        let err = back.amplitudes().iter().zip(psi.amplitudes()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(err < 1e-15);
    }
}

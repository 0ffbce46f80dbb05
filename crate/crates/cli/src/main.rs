use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ncqd::experiments::{Family, DEFAULT_GRID};
use ncqd::{NormKind, OptimizerConfig, RngSeed, Side};
use ncqd_cli::commands::{self, parse_norm, Basis, SideChoice};
use ncqd_cli::statefile::{parse_state, StateFile};
use ncqd_cli::{CliError, CliResult};

/// Non-commutativity quantum-correlation measures of bipartite states.
#[derive(Parser)]
#[command(name = "ncqd", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate D_G / D'_G of a state file in a chosen local basis.
    Eval {
        state: PathBuf,
        #[arg(long, default_value = "A")]
        side: SideChoice,
        #[arg(long, default_value = "hs", value_parser = parse_norm)]
        norm: NormKind,
        /// `comp`, `schmidt` or `alpha,beta,theta`.
        #[arg(long, default_value = "comp", allow_hyphen_values = true)]
        basis: Basis,
    },
    /// Haar-random two-qubit pure states: C^2, D'_G computational, D'_G Schmidt.
    Random {
        #[arg(long, default_value_t = 100_000)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "A")]
        side: Side,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep a state family over p in [0, 1]: D'_G computational and d'.
    Scan {
        /// pseudo_pure_psi, werner, rho1 or rho2.
        family: Family,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        #[arg(long, default_value = "A")]
        side: SideChoice,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        opt: OptArgs,
    },
    /// Minimize D'_G over SU(2) on one side.
    Minimize {
        state: PathBuf,
        #[arg(long, default_value = "A")]
        side: SideChoice,
        #[command(flatten)]
        opt: OptArgs,
    },
    /// Schmidt decomposition of a pure state file.
    Schmidt { state: PathBuf },
}

#[derive(Args)]
struct OptArgs {
    /// Number of optimizer starts (the first is the identity).
    #[arg(long)]
    starts: Option<usize>,
    /// Simplex value-spread tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Seed for the random starts.
    #[arg(long)]
    seed: Option<u64>,
}

impl OptArgs {
    fn config(&self) -> OptimizerConfig {
        let mut cfg = OptimizerConfig::default();
        if let Some(n) = self.starts {
            cfg.n_starts = n;
        }
        if let Some(t) = self.tol {
            cfg.tol = t;
        }
        if let Some(s) = self.seed {
            cfg.seed = RngSeed(s);
        }
        cfg
    }
}

fn read_state(path: &Path) -> CliResult<StateFile> {
    let text = fs::read_to_string(path)?;
    parse_state(&text).map_err(|e| match e {
        CliError::Parse { line, msg } => CliError::Parse {
            line,
            msg: format!("{}: {msg}", path.display()),
        },
        other => other,
    })
}

fn sink(out: &Option<PathBuf>) -> CliResult<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> CliResult<()> {
    let mut stdout = io::stdout().lock();
    match cli.command {
        Command::Eval { state, side, norm, basis } => commands::eval(&read_state(&state)?, side, norm, basis, &mut stdout),
        Command::Random { n, seed, side, out } => {
            let mut table = sink(&out)?;
            if out.is_some() {
                commands::random(n, RngSeed(seed), side, Default::default(), &mut table, &mut stdout)
            } else {
                drop(stdout);
                commands::random(n, RngSeed(seed), side, Default::default(), &mut table, &mut io::stderr())
            }
        }
        Command::Scan { family, grid, side, out, opt } => {
            let SideChoice::One(side) = side else {
                return Err(CliError::Usage("scan takes --side A or --side B".into()));
            };
            drop(stdout);
            commands::scan(family, grid, side, &opt.config(), &mut sink(&out)?)
        }
        Command::Minimize { state, side, opt } => {
            commands::minimize(&read_state(&state)?, side, &opt.config(), &mut stdout)
        }
        Command::Schmidt { state } => commands::schmidt(&read_state(&state)?, &mut stdout),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

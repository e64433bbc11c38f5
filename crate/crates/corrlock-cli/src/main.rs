//! `corrlock`: build locking states, measure their classical correlation,
//! and verify the inequalities that bound the unlocking effect.
//!
//! Exit codes: 0 success, 1 invariant violation, 2 usage error.

mod sweep;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use corrlock::bounds;
use corrlock::infomeasure::{self, OptimizerConfig};
use corrlock::io;
use corrlock::mub;
use corrlock::states::{self, LockingInstance};

#[derive(Parser)]
#[command(name = "corrlock", version, about = "Correlation locking in quantum states")]
struct Cli {
    /// RNG seed. Passing it explicitly switches artifacts to reproducibility
    /// mode: timing columns are zeroed so reruns are byte-identical.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads (defaults to the rayon heuristic).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Output format for tabular artifacts.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Clone)]
struct OptimizerArgs {
    /// Optimizer restarts (warm starts included).
    #[arg(long, default_value_t = 32)]
    restarts: usize,

    /// Iteration cap per restart.
    #[arg(long, default_value_t = 2000)]
    max_iters: usize,

    /// POVM outcomes per restart (defaults to d²).
    #[arg(long)]
    num_outcomes: Option<usize>,
}

impl OptimizerArgs {
    fn config(&self, seed: u64) -> OptimizerConfig {
        OptimizerConfig {
            num_outcomes: self.num_outcomes,
            restarts: self.restarts,
            max_iters: self.max_iters,
            seed,
            ..OptimizerConfig::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit a locking (or unlocked) state as matrix JSON.
    State {
        #[arg(long)]
        d: usize,
        #[arg(long = "L")]
        l: usize,
        /// Emit the post-message state instead of the locked one.
        #[arg(long)]
        unlocked: bool,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a mutually unbiased basis family as JSON.
    Mub {
        #[arg(long)]
        d: usize,
        #[arg(long = "L")]
        l: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximize accessible information of an ensemble file.
    Iacc {
        /// Ensemble JSON path.
        #[arg(long)]
        ensemble: PathBuf,
        #[command(flatten)]
        optimizer: OptimizerArgs,
    },
    /// One locking instance end to end: bounds, unlocking, merit figures.
    LockDemo {
        #[arg(long)]
        d: usize,
        #[arg(long = "L")]
        l: usize,
        #[command(flatten)]
        optimizer: OptimizerArgs,
    },
    /// Sweep (d, L) over the locking family and emit one row per instance.
    Sweep {
        /// Bob dimensions, comma separated (prime powers).
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        /// Smallest number of bases.
        #[arg(long, default_value_t = 2)]
        l_min: usize,
        /// Largest number of bases (0 = up to d+1 per dimension).
        #[arg(long, default_value_t = 0)]
        l_max: usize,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        optimizer: OptimizerArgs,
    },
    /// Run a verification suite; emits one JSON line per check.
    Verify {
        #[arg(long, value_enum)]
        suite: verify::Suite,
        /// Random draws per property sweep.
        #[arg(long, default_value_t = 100)]
        draws: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        // a failed re-init only means a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let seed = cli.seed.unwrap_or(0);
    let reproducible = cli.seed.is_some();

    let outcome = match cli.command {
        Command::State { d, l, unlocked, out } => cmd_state(d, l, unlocked, out),
        Command::Mub { d, l, out } => cmd_mub(d, l, out),
        Command::Iacc { ensemble, optimizer } => cmd_iacc(&ensemble, &optimizer.config(seed)),
        Command::LockDemo { d, l, optimizer } => cmd_lock_demo(d, l, &optimizer.config(seed)),
        Command::Sweep {
            dims,
            l_min,
            l_max,
            out,
            optimizer,
        } => sweep::run(sweep::SweepArgs {
            dims,
            l_min,
            l_max,
            out,
            optimizer: optimizer.config(seed),
            seed,
            reproducible,
            json: matches!(cli.format, Format::Json),
        }),
        Command::Verify { suite, draws } => verify::run(suite, seed, draws),
    };

    match outcome {
        Ok(violated) if violated => ExitCode::from(1),
        Ok(_) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

pub enum CliError {
    Usage(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err)
    }
}

/// `Ok(true)` signals an invariant violation (exit 1).
type CmdResult = Result<bool, CliError>;

fn emit(text: &str, out: Option<PathBuf>) -> CmdResult {
    match out {
        Some(path) => std::fs::write(path, format!("{text}\n"))?,
        None => println!("{text}"),
    }
    Ok(false)
}

fn instance(d: usize, l: usize) -> Result<LockingInstance, CliError> {
    LockingInstance::new(d, l).map_err(|e| CliError::Usage(format!("invalid (d, L): {e}")))
}

fn cmd_state(d: usize, l: usize, unlocked: bool, out: Option<PathBuf>) -> CmdResult {
    let inst = instance(d, l)?;
    let rho = if unlocked {
        states::unlocked_state(&inst)
    } else {
        states::locking_state(&inst)
    };
    emit(&io::write_matrix_json(rho.matrix()), out)
}

fn cmd_mub(d: usize, l: usize, out: Option<PathBuf>) -> CmdResult {
    let fam = mub::mub_family(d, l).map_err(|e| CliError::Usage(format!("invalid family: {e}")))?;
    emit(&io::write_mub_family_json(&fam), out)
}

fn cmd_iacc(path: &PathBuf, cfg: &OptimizerConfig) -> CmdResult {
    let text = std::fs::read_to_string(path)?;
    let ensemble =
        io::read_ensemble_json(&text).map_err(|e| CliError::Usage(format!("bad ensemble: {e}")))?;
    let res = infomeasure::optimize_accessible_info(&ensemble, cfg)
        .map_err(|e| CliError::Usage(format!("optimizer: {e}")))?;
    println!("{}", io::write_opt_result_json(&res));
    Ok(res.certificate_kind.is_certificate() && res.value > res.upper_bound + 1e-7)
}

fn cmd_lock_demo(d: usize, l: usize, cfg: &OptimizerConfig) -> CmdResult {
    let inst = instance(d, l)?;
    let res = infomeasure::icc_locking(&inst, cfg)
        .map_err(|e| CliError::Usage(format!("optimizer: {e}")))?;
    let ub = infomeasure::icc_locking_upper_bound(&inst);
    let ic_after = infomeasure::unlocked_icc_analytic(&inst);
    let key_bits = inst.key_bits();
    let requirement = bounds::theorem1_requirement(ic_after, key_bits);
    let delta_cap = bounds::theorem1_delta_cap(res.value, key_bits);
    let merit = bounds::merit_figures(res.value, ic_after, key_bits);

    let g = io::fmt_g12;
    println!("locking instance d={d} L={l} (key {} bits)", g(key_bits));
    println!("ic_lower = {} (converged = {})", g(res.value), res.converged);
    println!(
        "ic_upper = {} ({}{})",
        g(ub.bits),
        ub.kind,
        if ub.is_certificate() { "" } else { ", estimate" }
    );
    println!("ic_after = {}", g(ic_after));
    println!(
        "theorem1: requirement = {}, delta_cap = {}",
        g(requirement),
        g(delta_cap)
    );
    match merit {
        Ok(m) => println!("merit: r1 = {}, r2 = {}", g(m.r1), g(m.r2)),
        Err(_) => println!("merit: undefined (no initial correlation)"),
    }

    let mut violated = false;
    if ub.is_certificate() && res.value > ub.bits + 1e-7 {
        println!("VIOLATION: lower bound exceeds certificate");
        violated = true;
    }
    if ub.is_certificate() && requirement > ub.bits + 1e-9 {
        println!("VIOLATION: certified bound below the one-way requirement");
        violated = true;
    }
    if ic_after - res.value > delta_cap + 1e-7 {
        println!("VIOLATION: unlocking gain exceeds the one-way cap");
        violated = true;
    }
    Ok(violated)
}

//! The `gowerslab` command line: argument parsing, dispatch and output.

mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use config::{Budgets, Format, RunConfig};
pub use output::{Outcome, Table};

use crate::gowers::Method;
use crate::seqfun::Precision;

#[derive(Parser, Debug)]
#[command(name = "gowerslab", version, about = "Gowers norms, nilsequences, bracket identities and additive structure")]
pub struct Cli {
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true, env = "GOWERSLAB_THREADS")]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub output: Option<Format>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// float or rational
    #[arg(long, global = true)]
    pub precision: Option<Precision>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Gowers norms and correlated quadruples
    #[command(subcommand)]
    Gowers(GowersCmd),
    /// Bracket polynomial identities
    #[command(subcommand)]
    Bracket(BracketCmd),
    /// Nilsequences on the free 2- and 3-step groups
    #[command(subcommand)]
    Nil(NilCmd),
    /// Weyl sums, equidistribution, relations and rational approximation
    #[command(subcommand)]
    Equidist(EquidistCmd),
    /// Bohr sets, regular radii and smooth cutoffs
    #[command(subcommand)]
    Bohr(BohrCmd),
    /// Progressions in iterated sumsets, additive energy
    #[command(subcommand)]
    Sumset(SumsetCmd),
    /// 5-term prime progressions and the singular series
    #[command(subcommand)]
    Primes(PrimesCmd),
    /// Necessity examples, L1 approximations and the quadruple pipeline
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DomainKind {
    Interval,
    Cyclic,
}

/// Where the function comes from: a phase or a CSV file.
#[derive(Args, Debug)]
pub struct FnSource {
    /// A PhaseSpec as JSON, or a bracket expression in `n` such as `3/7*n*n`.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    pub phase: Option<String>,
    /// CSV with header `index,re,im`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Interval length or cyclic modulus.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum GowersCmd {
    /// U^k norm of a function on [N] or Z_M.
    Norm {
        #[arg(long, value_enum)]
        domain: DomainKind,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=4))]
        k: u32,
        #[command(flatten)]
        src: FnSource,
        #[arg(long, default_value_t = Method::Recursion)]
        method: Method,
        /// Cyclic modulus for the interval norm; defaults to 2^k N.
        #[arg(long)]
        m_tilde: Option<usize>,
    },
    /// Counts correlated quadruples for the derivative family of f on [N].
    Quadruples {
        #[command(flatten)]
        src: FnSource,
        /// `a..b` or a comma list; defaults to `1..N/2`.
        #[arg(long)]
        shifts: Option<String>,
        /// Defaults to the smallest measured correlation.
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long, default_value_t = 0.01)]
        c: f64,
    },
}

#[derive(Subcommand, Debug)]
pub enum BracketCmd {
    /// Checks a bracket identity for n in [1, n_max].
    Verify {
        #[arg(long, value_parser = ["key", "i", "ii", "iii", "iv", "3brack", "trilinear"])]
        case: String,
        /// JSON array of rationals, or a trilinear form; random from the seed if absent.
        #[arg(long)]
        params: Option<String>,
        #[arg(long, default_value_t = 1000)]
        n_max: i64,
    },
}

#[derive(Subcommand, Debug)]
pub enum NilCmd {
    /// Prints `n,phase` for the nilsequence coordinate.
    Eval {
        /// `free2:k` or `free3`
        #[arg(long)]
        group: String,
        #[arg(long)]
        seq: String,
        /// `21` (or `2,1`) for free2, a basis name such as `312` for free3.
        #[arg(long)]
        coord: Option<String>,
        #[arg(long, default_value_t = 100)]
        n_max: i64,
    },
    /// Group power against the closed forms in the free 3-step group.
    PowerCheck {
        #[arg(long)]
        params: String,
    },
}

#[derive(Args, Debug)]
pub struct ParamsArg {
    /// JSON object, or `@path` to read it from a file.
    #[arg(long)]
    pub params: String,
}

#[derive(Subcommand, Debug)]
pub enum EquidistCmd {
    Weyl(ParamsArg),
    Test(ParamsArg),
    Relation(ParamsArg),
    Ratapprox(ParamsArg),
}

#[derive(Subcommand, Debug)]
pub enum BohrCmd {
    Build(ParamsArg),
    Regular(ParamsArg),
    Decompose(ParamsArg),
}

#[derive(Args, Debug)]
pub struct InputParams {
    /// CSV file, `-` for stdin.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub params: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum SumsetCmd {
    /// Progression in kA - kA for A in [N]; CSV column `x`.
    Lev(InputParams),
    /// Product progression in the bilinear iterate; CSV columns `x,y`.
    Bilinear(InputParams),
    /// Additive energy of four grid sets; CSV columns `set,x,r`.
    Energy(InputParams),
}

#[derive(Subcommand, Debug)]
pub enum PrimesCmd {
    Gamma {
        #[arg(long, default_value_t = crate::primes::GAMMA_P)]
        pmax: u64,
    },
    CountAp {
        #[arg(long)]
        n: u64,
    },
    Compare {
        #[arg(long)]
        n: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    Necessity(ParamsArg),
    L1(ParamsArg),
    Pipeline(ParamsArg),
}

impl Cli {
    pub fn config(&self) -> RunConfig {
        RunConfig {
            precision: self.precision,
            threads: self.threads.unwrap_or(0),
            seed: self.seed,
            output: self.output,
            budgets: Budgets::default(),
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code: 0 success or pass, 1 failed verification, 2 usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let cfg = cli.config();
    let start = Instant::now();
    let res = crate::sum::with_threads(cfg.threads, || commands::dispatch(&cli.command, &cfg)).and_then(|r| r);
    let runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    match res {
        Ok(o) => {
            if let Err(e) = output::write(&o, &cfg, runtime_ms, out) {
                let _ = writeln!(err, "error: {e}");
                return 2;
            }
            if o.passed == Some(false) {
                let _ = writeln!(err, "verification failed");
                1
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            output::exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests;

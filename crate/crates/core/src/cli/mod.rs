//! Command-line front end.

mod commands;
mod config;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

pub use commands::{derive, derive_text, gaps, multidim, spectrum, verify};
pub use config::{parse_box, parse_range, OracleConfig, PartialConfig, RunConfig};
pub use report::*;

use crate::diffpoly::ParseError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invalid {0}: {1}")]
    Parse(String, ParseError),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

#[derive(Parser, Debug)]
#[command(name = "specgap", version, about = "Certified spectral gaps for polynomial Schrödinger operators")]
struct Cli {
    /// Worker threads for the energy scan (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the certificate polynomial F_N in v-form and V-form.
    Derive {
        #[arg(long = "N", short = 'N')]
        order: usize,
        /// Also write the JSON form here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Certify eigenvalue-free intervals and compare with the numerical spectrum.
    Gaps(GapsArgs),
    /// Lowest eigenvalues by finite differences or Numerov shooting.
    Spectrum {
        #[arg(long)]
        potential: String,
        #[arg(long = "L")]
        half_width: Option<f64>,
        #[arg(long = "grid", short = 'M', default_value_t = 4000)]
        grid: usize,
        #[arg(long = "count", short = 'k', default_value_t = 8)]
        count: usize,
        #[arg(long)]
        shoot: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run the algebraic and numerical self-checks.
    Verify {
        #[command(subcommand)]
        what: VerifyWhat,
        #[arg(long, global = true)]
        json: Option<PathBuf>,
        /// Print only the verdict line.
        #[arg(long, global = true)]
        check: bool,
    },
    /// Vector-field constraints, critical-point reduction and the d = 2 integrals.
    Multidim {
        #[arg(long, short = 'd')]
        d: usize,
        #[arg(long)]
        potential: String,
        #[arg(long = "max-deg", default_value_t = 3)]
        max_deg: u32,
        /// Starting points `x1,..,xd,E`, separated by `;`.
        #[arg(long)]
        guesses: Option<String>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        check: bool,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyWhat {
    /// `R̂^N D̂ Π̂_n` vanishes on the top component.
    Kernel {
        #[arg(long = "max-N", default_value_t = 4)]
        max_n: usize,
        /// Also check n ∈ {N−1, N} up to this order.
        #[arg(long = "edge-max-N", default_value_t = 8)]
        edge_max_n: usize,
    },
    /// Word expansion against the direct operator product.
    Words {
        #[arg(long = "max-N", default_value_t = 4)]
        max_n: usize,
    },
    /// Finite-difference divergence of the current along numerical solutions.
    Divergence,
    /// Constraint nullspace and closed-form F2 for dimension d.
    Multidim {
        #[arg(long, short = 'd', default_value_t = 3)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct GapsArgs {
    /// JSON configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    potential: Option<String>,
    #[arg(long = "N", short = 'N')]
    order: Option<usize>,
    /// Test-function family in x and parameters l1, l2, ...
    #[arg(long)]
    a0: Option<String>,
    #[arg(long = "e-range", value_parser = parse_range, allow_hyphen_values = true)]
    e_range: Option<[f64; 2]>,
    #[arg(long = "e-step")]
    e_step: Option<f64>,
    /// `lo:hi` per parameter, comma-separated; one range applies to all.
    #[arg(long = "lambda-box", allow_hyphen_values = true)]
    lambda_box: Option<String>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long = "L")]
    half_width: Option<f64>,
    #[arg(long = "grid", short = 'M')]
    grid: Option<usize>,
    #[arg(long = "count", short = 'k')]
    count: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Print only the disjointness verdict.
    #[arg(long)]
    check: bool,
}

impl GapsArgs {
    fn to_config(&self) -> Result<RunConfig, CliError> {
        let base = match &self.config {
            Some(path) => {
                let text =
                    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                serde_json::from_str::<PartialConfig>(&text)
                    .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
            }
            None => PartialConfig::default(),
        };
        let oracle = if self.half_width.is_some() || self.grid.is_some() || self.count.is_some() {
            let o = base.oracle.clone().unwrap_or_default();
            Some(OracleConfig {
                half_width: self.half_width.or(o.half_width),
                grid: self.grid.unwrap_or(o.grid),
                count: self.count.unwrap_or(o.count),
            })
        } else {
            None
        };
        let flags = PartialConfig {
            potential: self.potential.clone(),
            order: self.order,
            a0_family: self.a0.clone(),
            e_range: self.e_range,
            e_step: self.e_step,
            lambda_box: self.lambda_box.as_deref().map(parse_box).transpose().map_err(CliError::Usage)?,
            tol: self.tol,
            oracle,
            seed: self.seed,
        };
        base.merge(flags).resolve()
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn parse_guesses(text: &str) -> Result<Vec<Vec<f64>>, CliError> {
    text.split(';')
        .filter(|g| !g.trim().is_empty())
        .map(|g| {
            g.split(',')
                .map(|v| v.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("bad number {v:?} in guesses"))))
                .collect()
        })
        .collect()
}

/// Outcome: text to print and the exit code.
struct Output {
    stdout: String,
    code: i32,
}

fn ok(stdout: String, pass: bool) -> Output {
    Output { stdout, code: if pass { 0 } else { 1 } }
}

/// JSON to `path` if given, otherwise `default` (the JSON itself unless a
/// text form is supplied) to stdout.
fn emit<T: Serialize>(value: &T, path: Option<&PathBuf>, text: Option<String>) -> Result<String, CliError> {
    let body = to_json(value);
    match path {
        Some(path) => {
            std::fs::write(path, &body).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            Ok(text.unwrap_or_default())
        }
        None => Ok(text.unwrap_or(body)),
    }
}

fn verdict(check: bool, pass: bool, name: &str) -> Option<String> {
    check.then(|| format!("{name}: {pass}\n"))
}

fn execute(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Derive { order, json } => {
            let r = derive(order)?;
            Ok(ok(emit(&r, json.as_ref(), Some(derive_text(&r)))?, true))
        }
        Command::Gaps(args) => {
            let cfg = args.to_config()?;
            if cfg.order % 2 == 1 {
                eprintln!("warning: N = {} is odd; the certificate then excludes the ground state only", cfg.order);
            }
            let start = Instant::now();
            let r = gaps(cfg)?;
            eprintln!("gaps: {} interval(s) in {:.2} s", r.gaps.len(), start.elapsed().as_secs_f64());
            Ok(ok(emit(&r, args.json.as_ref(), verdict(args.check, r.disjoint, "disjoint"))?, r.disjoint))
        }
        Command::Spectrum { potential, half_width, grid, count, shoot, json } => {
            let r = spectrum(&potential, half_width, grid, count, shoot)?;
            Ok(ok(emit(&r, json.as_ref(), None)?, true))
        }
        Command::Verify { what, json, check } => {
            let r = match what {
                VerifyWhat::Kernel { max_n, edge_max_n } => {
                    verify("kernel", commands::verify_kernel(max_n, edge_max_n))
                }
                VerifyWhat::Words { max_n } => verify("words", commands::verify_words(max_n)),
                VerifyWhat::Divergence => verify("divergence", commands::verify_divergence()),
                VerifyWhat::Multidim { d, seed } => {
                    if d == 0 {
                        return Err(CliError::Usage("d must be positive".into()));
                    }
                    verify("multidim", commands::verify_multidim(d, seed))
                }
            };
            Ok(ok(emit(&r, json.as_ref(), verdict(check, r.pass, "pass"))?, r.pass))
        }
        Command::Multidim { d, potential, max_deg, guesses, json, check } => {
            let guesses = guesses.as_deref().map(parse_guesses).transpose()?.unwrap_or_default();
            let r = multidim(d, &potential, max_deg, guesses)?;
            Ok(ok(emit(&r, json.as_ref(), verdict(check, r.pass, "pass"))?, r.pass))
        }
    }
}

/// Run with the process arguments; returns the exit code.
pub fn run() -> i32 {
    run_with(std::env::args_os())
}

pub fn run_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return 2;
        }
        // fails only if a global pool already exists, which is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match execute(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.stdout.as_bytes());
            let _ = stdout.flush();
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

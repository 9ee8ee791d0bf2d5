//! The `potentsq` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 malformed input,
//! 3 search found nothing, 4 budget exceeded, 5 other errors.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::canonical::primary_rcf;
use crate::decompose::decompose;
use crate::doc;
use crate::error::Error;
use crate::oracle::{exhaustive_decomposition_search, sweep, DEFAULT_SEARCH_BUDGET};
use crate::parse::parse_ring;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_NOT_FOUND: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;
pub const EXIT_OTHER: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "potentsq", version, about = "Potent plus square-zero matrix decompositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decompose the matrix in a matrix document.
    Decompose {
        /// Matrix document (`-` for standard input).
        #[arg(long)]
        input: PathBuf,
        /// Where to write the decomposition document (`-` for standard output).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recheck a decomposition document.
    Verify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Primary rational canonical form of a matrix over a field.
    Rcf {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive search for a potent plus nilpotent splitting.
    OracleSearch {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_nil_index: u32,
        /// Ring multiplication budget.
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decompose and verify every n x n matrix over a ring.
    Sweep {
        #[arg(long)]
        ring: String,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=8))]
        n: u32,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::InvalidRing(_)
        | Error::ShapeMismatch(_)
        | Error::RingMismatch(_)
        | Error::NotAField(_)
        | Error::Unsupported(_) => EXIT_MALFORMED,
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_OTHER,
    }
}

enum Failure {
    Input(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("standard input: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }
}

/// Writes the summary and document following the `--out` convention: no
/// `--out` prints the summary only, `--out -` prints the document only, and
/// `--out FILE` writes the document to the file and prints the summary.
fn emit(
    out: &mut dyn Write,
    target: Option<&Path>,
    summary: &str,
    document: &str,
) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::Input(e.to_string());
    match target {
        None => writeln!(out, "{summary}").map_err(io),
        Some(p) if p == Path::new("-") => writeln!(out, "{document}").map_err(io),
        Some(p) => {
            fs::write(p, format!("{document}\n"))
                .map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
            writeln!(out, "{summary}").map_err(io)
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Decompose { input, out: target } => {
            let a = doc::matrix_from_json(&read_input(&input)?)?;
            let d = decompose(&a)?;
            let failures = d.certificate.failures();
            let summary = format!(
                "decomposed {n}x{n} matrix over {ring}: exponent {e}, {g}, certificate {status}",
                n = a.dim(),
                ring = a.ring(),
                e = d.exponent,
                g = d.guarantee,
                status = if failures.is_empty() {
                    "passed".to_string()
                } else {
                    format!("FAILED ({})", failures.join(", "))
                },
            );
            emit(out, target.as_deref(), &summary, &doc::decomposition_to_json(&d))?;
            Ok(if failures.is_empty() { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        Command::Verify { input } => {
            let claim = doc::decomposition_from_json(&read_input(&input)?)?;
            let cert = crate::oracle::verify_decomposition(
                &claim.a,
                &claim.p,
                &claim.n,
                claim.guarantee,
                Some(&claim.exponent),
            )?;
            let io = |e: std::io::Error| Failure::Input(e.to_string());
            for (name, ok) in &cert.checks {
                writeln!(out, "{name}: {}", if *ok { "pass" } else { "FAIL" }).map_err(io)?;
            }
            if let Some(k) = cert.minimal_exponent {
                writeln!(out, "least potent exponent: {k}").map_err(io)?;
            }
            Ok(if cert.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        Command::Rcf { input, out: target } => {
            let a = doc::matrix_from_json(&read_input(&input)?)?;
            let r = primary_rcf(&a)?;
            let divisors: Vec<String> = r.divisors.iter().map(|d| d.to_string()).collect();
            let summary = format!("elementary divisors over {}: {}", a.ring(), divisors.join(", "));
            emit(out, target.as_deref(), &summary, &doc::rcf_to_json(&r))?;
            Ok(EXIT_OK)
        }
        Command::OracleSearch {
            input,
            max_nil_index,
            budget,
            out: target,
        } => {
            let a = doc::matrix_from_json(&read_input(&input)?)?;
            let report = exhaustive_decomposition_search(&a, max_nil_index, budget)?;
            let summary = match &report.found {
                Some(_) => format!(
                    "found after {} nilpotent candidates of index at most {max_nil_index}",
                    report.search_size
                ),
                None => format!(
                    "not found: all {} nilpotent candidates of index at most {max_nil_index} rejected",
                    report.search_size
                ),
            };
            emit(out, target.as_deref(), &summary, &doc::search_to_json(&report))?;
            Ok(if report.found.is_some() { EXIT_OK } else { EXIT_NOT_FOUND })
        }
        Command::Sweep {
            ring,
            n,
            jobs,
            out: target,
        } => {
            let ring = parse_ring(&ring)?;
            let s = sweep(&ring, n as usize, decompose, jobs.max(1))?;
            let summary = format!(
                "{} matrices of size {} over {}: {} decomposed, {} certificate failures",
                s.total, s.n, s.ring, s.decomposed, s.certificate_failures
            );
            emit(out, target.as_deref(), &summary, &doc::sweep_to_json(&s))?;
            Ok(if s.clean() { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
    }
}

/// Runs the command line on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return EXIT_MALFORMED;
            }
            let _ = write!(out, "{text}");
            return EXIT_OK;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_MALFORMED
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

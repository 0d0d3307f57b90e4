//! Command-line front end: `run`, `compute` and `gen`.
//!
//! Exit codes: 0 every check holds (or is inapplicable), 1 some check fails,
//! 2 usage or parse error, 3 a resource cap was exceeded.

pub mod gen;
pub mod instance;
pub mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::homalg::{grade_via_ext, pd_via_resolution};
use crate::ideal_ops::{ideal_quotient, intersect_ideals};
use crate::linkage::{aprime_construct, cd_bounds, CyclicModule, RegularSequenceWitness};
use crate::poly::{parse_poly_at, Cursor, Limits, PolyRing, Polynomial};
use crate::theorems::run_suite;

pub use instance::{parse_instance, parse_instance_with, InstanceFile};
pub use report::{Report, REPORT_SCHEMA};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "linkcheck", version, about = "Check linkage statements on polynomial instances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Op {
    Gb,
    Colon,
    Intersect,
    Grade,
    Cd,
    Pd,
    Aprime,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the checks of an instance file and emit a report.
    Run {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Largest total degree allowed in Gröbner computations.
        #[arg(long)]
        degree_cap: Option<u32>,
    },
    /// Compute one quantity for an ideal.
    Compute {
        #[arg(value_enum)]
        op: Op,
        /// Ring, e.g. "QQ[x,y] grevlex".
        #[arg(long)]
        ring: String,
        /// Comma-separated generators.
        #[arg(long)]
        ideal: String,
        /// Second ideal (colon, intersect) or the regular sequence (aprime).
        #[arg(long)]
        by: Option<String>,
        /// Generators of J for M = R/J; default M = R.
        #[arg(long)]
        module: Option<String>,
    },
    /// Generate a seeded instance file.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        profile: String,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        vars: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn poly_list(ring: &PolyRing, src: &str) -> Result<Vec<Polynomial>> {
    let mut cur = Cursor::new(src);
    let mut out = Vec::new();
    loop {
        let p = parse_poly_at(&mut cur, ring)?;
        if !p.is_zero() {
            out.push(p);
        }
        if !cur.eat(b',') {
            break;
        }
    }
    cur.skip_ws();
    if !cur.at_end() {
        return Err(cur.unexpected("`,` or end of list"));
    }
    Ok(out)
}

fn gens_text(i: &Ideal) -> Result<String> {
    let gb = i.groebner_basis()?;
    if gb.is_empty() {
        return Ok("0".into());
    }
    Ok(gb.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "))
}

fn compute(op: Op, ring: &str, ideal: &str, by: Option<&str>, module: Option<&str>) -> Result<String> {
    let ring = PolyRing::parse_spec(ring)?;
    let a = Ideal::new(&ring, poly_list(&ring, ideal)?)?;
    let m = match module {
        None => CyclicModule::free(&ring),
        Some(j) => CyclicModule::new(Ideal::new(&ring, poly_list(&ring, j)?)?)?,
    };
    let need_by = || -> Result<Vec<Polynomial>> {
        let src = by.ok_or_else(|| Error::InvalidArgument("this operation needs --by".into()))?;
        poly_list(&ring, src)
    };
    Ok(match op {
        Op::Gb => gens_text(&m.extend(&a)?)?,
        Op::Colon => gens_text(&ideal_quotient(&m.extend(&a)?, &Ideal::new(&ring, need_by()?)?)?)?,
        Op::Intersect => gens_text(&m.extend(&intersect_ideals(&a, &Ideal::new(&ring, need_by()?)?)?)?)?,
        Op::Grade => grade_via_ext(&a, &m)?.to_string(),
        Op::Cd => cd_bounds(&a, &m)?.cd.to_string(),
        Op::Pd => {
            if !m.is_free() {
                return Err(Error::InvalidArgument("pd is computed for R/a only".into()));
            }
            pd_via_resolution(&a)?.to_string()
        }
        Op::Aprime => {
            let w = RegularSequenceWitness::new(need_by()?, &m)?;
            gens_text(&aprime_construct(&a, &w, &m)?)?
        }
    })
}

fn write_output(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn error_exit(e: &Error) -> i32 {
    eprintln!("error: {e}");
    if e.is_resource_limit() {
        EXIT_RESOURCE
    } else {
        EXIT_USAGE
    }
}

/// Runs the command line `args` (including the program name) and returns the exit code.
pub fn execute<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    match cli.command {
        Command::Run {
            file,
            format,
            out,
            jobs,
            degree_cap,
        } => {
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", file.display());
                    return EXIT_USAGE;
                }
            };
            let mut limits = Limits::default();
            if let Some(d) = degree_cap {
                limits.max_degree = d;
            }
            let parsed = match parse_instance_with(&text, limits) {
                Ok(f) => f,
                Err(e) => {
                    eprintln!("error: {}: {e}", file.display());
                    return EXIT_USAGE;
                }
            };
            let suite = match parsed.to_suite() {
                Ok(s) => s,
                Err(e) => return error_exit(&e),
            };
            let report = Report::new(&parsed, run_suite(&suite, jobs.max(1)));
            let body = match format {
                Format::Json => report.to_json(),
                Format::Md => report.to_markdown(),
            };
            if let Err(e) = write_output(out.as_ref(), &body) {
                return error_exit(&e);
            }
            report.exit_code()
        }
        Command::Compute {
            op,
            ring,
            ideal,
            by,
            module,
        } => match compute(op, &ring, &ideal, by.as_deref(), module.as_deref()) {
            Ok(s) => match write_output(None, &(s + "\n")) {
                Ok(()) => EXIT_OK,
                Err(e) => error_exit(&e),
            },
            Err(e) => error_exit(&e),
        },
        Command::Gen {
            seed,
            profile,
            count,
            vars,
            out,
        } => {
            let text = profile
                .parse()
                .and_then(|p| gen::render(seed, p, count, vars));
            match text.and_then(|t| write_output(out.as_ref(), &t)) {
                Ok(()) => EXIT_OK,
                Err(e) => error_exit(&e),
            }
        }
    }
}

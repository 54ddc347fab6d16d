//! The `fsig` command line.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::groebner::{BasisStore, Engine, Limits, MemoryStore};
use crate::lab::{
    bertini_experiment, convergence_check, flat_extension_check, oracle_audit, perturbation_experiment,
    random_oracle_audit, signature_table, BertiniParams, ExperimentReport,
};
use crate::rational::Exact;
use crate::signature::{DivisorSpec, Rounding};

use super::disk::DiskStore;
use super::fixture::{bundled_fixture, parse_fixture, Fixture};
use super::report::{render, Format};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "fsig", version, about = "Exact F-signature estimates and theorem experiments over F_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Estimates s_e for e = 1..emax without a divisor.
    Compute(Options),
    /// Estimates s_e(R, Δ) with the fixture's divisor.
    Pair(Options),
    /// Flat-extension identities for R = A[w_1..w_δ].
    Flatcheck(Options),
    /// Compares the two rounding conventions for Δ.
    Perturb(Options),
    /// Fits the decay constant C in |s_e − s_(e+1)| ≤ C/p^e.
    Converge(Options),
    /// Hyperplane-slice experiment.
    Bertini(Options),
    /// Splitting oracle versus colon formula on exhaustive monomial panels.
    OracleAudit(Options),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RoundingArg {
    Ceil,
    Floor,
    Both,
}

#[derive(clap::Args, Debug)]
struct Options {
    /// Fixture file, or the name of a bundled fixture.
    #[arg(long)]
    fixture: Option<String>,
    #[arg(long, default_value_t = 3)]
    emax: u32,
    /// Frobenius exponent for single-level experiments.
    #[arg(long = "e")]
    e: Option<u32>,
    /// Number of adjoined variables for flatcheck.
    #[arg(long, default_value_t = 1)]
    delta: usize,
    /// Threshold λ as an exact rational, e.g. 1/3.
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    #[arg(long, value_enum, default_value_t = RoundingArg::Ceil)]
    rounding: RoundingArg,
    /// Growth factor allowed for scaled differences in converge.
    #[arg(long, default_value = "2")]
    factor: String,
    /// Persistent basis cache; defaults to $FSIG_CACHE_DIR when set.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn load_fixture(spec: &str) -> Result<Fixture> {
    let path = Path::new(spec);
    if path.exists() {
        let text = std::fs::read_to_string(path)?;
        return parse_fixture(&text).map_err(|e| match e {
            Error::Parse { line, column, message } => {
                Error::Parse { line, column, message: format!("{}: {message}", path.display()) }
            }
            other => other,
        });
    }
    bundled_fixture(spec).ok_or_else(|| Error::usage(format!("no fixture file or bundled fixture named {spec:?}")))
}

fn parse_exact(flag: &str, text: &str) -> Result<Exact> {
    text.parse().map_err(|_| Error::usage(format!("--{flag} expects a rational such as 1/3, got {text:?}")))
}

fn engine_for(opts: &Options) -> Result<Engine> {
    let store: Arc<dyn BasisStore> = match DiskStore::from_env_or(opts.cache_dir.as_deref())? {
        Some(disk) => Arc::new(disk),
        None => Arc::new(MemoryStore::default()),
    };
    Ok(Engine::new(Limits::default(), Some(store)))
}

fn execute(command: &Command) -> Result<(ExperimentReport, &Options)> {
    let opts = match command {
        Command::Compute(o)
        | Command::Pair(o)
        | Command::Flatcheck(o)
        | Command::Perturb(o)
        | Command::Converge(o)
        | Command::Bertini(o)
        | Command::OracleAudit(o) => o,
    };
    let engine = engine_for(opts)?;
    if let Command::OracleAudit(_) = command {
        if opts.fixture.is_none() {
            return Ok((random_oracle_audit(opts.seed, opts.samples, &engine)?, opts));
        }
    }
    let name = opts.fixture.as_deref().ok_or_else(|| Error::usage("--fixture is required"))?;
    let fixture = load_fixture(name)?;
    let presentation = fixture.presentation(&engine)?;
    let divisor = fixture.divisor_spec()?;
    let roundings: &[Rounding] = match opts.rounding {
        RoundingArg::Ceil => &[Rounding::CeilQm1],
        RoundingArg::Floor => &[Rounding::FloorQ],
        RoundingArg::Both => &[Rounding::CeilQm1, Rounding::FloorQ],
    };
    let mut report = match command {
        Command::Compute(_) => signature_table(&presentation, &DivisorSpec::empty(), opts.emax, roundings, &engine)?,
        Command::Pair(_) => {
            if divisor.is_empty() {
                return Err(Error::usage("pair needs a fixture with a divisor"));
            }
            signature_table(&presentation, &divisor, opts.emax, roundings, &engine)?
        }
        Command::Flatcheck(_) => {
            flat_extension_check(&presentation, opts.delta, opts.e.unwrap_or(1), &divisor, &engine)?
        }
        Command::Perturb(_) => perturbation_experiment(&presentation, &divisor, opts.emax, &engine)?,
        Command::Converge(_) => {
            let factor = parse_exact("factor", &opts.factor)?;
            convergence_check(&presentation, &divisor, opts.emax, factor, &engine)?
        }
        Command::Bertini(_) => {
            let lambda = parse_exact("lambda", opts.lambda.as_deref().ok_or_else(|| Error::usage("--lambda is required"))?)?;
            let params = BertiniParams::new(lambda, opts.e.unwrap_or(2), opts.seed, opts.samples);
            bertini_experiment(&presentation, &divisor, &params, &engine)?
        }
        Command::OracleAudit(_) => oracle_audit(&presentation, &divisor, &engine)?,
    };
    report.fixture = if fixture.name.is_empty() { name.to_string() } else { fixture.name.clone() };
    if let Some(expected) = fixture.expect.f_pure {
        if let Command::Compute(_) = command {
            let observed = crate::signature::f_purity_test(&presentation, &engine)?;
            report.verdict(
                "expected_f_purity",
                observed == expected,
                format!("fixture expects f_pure = {expected}, test gives {observed}"),
            );
        }
    }
    Ok((report, opts))
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Resource(_) => EXIT_RESOURCE,
        _ => EXIT_USAGE,
    }
}

/// Parses `argv`, runs one subcommand, writes its report and returns the exit status.
pub fn run_command<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let (report, opts) = match execute(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("fsig: {e}");
            return exit_code_for(&e);
        }
    };
    let format = match opts.format {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
    };
    let text = match render(&report, format) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("fsig: {e}");
            return exit_code_for(&e);
        }
    };
    let written = match &opts.out {
        Some(path) => std::fs::write(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("fsig: cannot write report: {e}");
        return EXIT_USAGE;
    }
    for v in report.verdicts.iter().filter(|v| !v.passed) {
        eprintln!("fsig: check {} failed: {}", v.name, v.detail);
    }
    if report.incomplete {
        for note in &report.notes {
            eprintln!("fsig: {note}");
        }
        return EXIT_RESOURCE;
    }
    if report.passed() {
        EXIT_PASS
    } else {
        EXIT_CHECK_FAILED
    }
}

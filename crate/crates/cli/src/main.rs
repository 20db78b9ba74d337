//! `qcalc`: batch verification of the symbolic calculi and their operator
//! realizations.

mod config;
mod output;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};
use qcalc_core::{Error, Report};
use rayon::prelude::*;

use config::{parse_alpha_r, parse_calculus, parse_epsilon, Settings};
use suites::Suite;

const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_WINDOW: u8 = 3;
const EXIT_ENGINE: u8 = 4;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Symbolic,
    Operator,
    Probe,
    Gram,
    Sphere,
    Disk,
    All,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Exact checks of the calculi: d(relations), right ideals, bimodule and star tables.
    VerifySymbolic,
    /// Commutator representation of the 3D calculus and the sign-twisted builds.
    VerifyOperator,
    /// Growth of Omega(b) as the window extends towards k -> -infinity.
    ProbeGrowth,
    /// Haar vector and Gram matrix of the invariant forms.
    Gram,
    /// Sphere coproducts, relations, dependency solver and closed forms.
    VerifySphere,
    /// Disk algebra and its calculus relations.
    VerifyDisk,
    /// Every suite in order.
    All,
}

#[derive(Parser, Debug)]
#[command(name = "qcalc", version, about = "Verify covariant differential calculi on SU_q(2)")]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    /// Suite selector, an alternative to the subcommand.
    #[arg(long, value_enum, global = true)]
    mode: Option<Mode>,

    /// Calculus for the symbolic suite: 3D, 4D+, 4D-, Q3+, Q3- or all.
    #[arg(long, global = true)]
    calculus: Option<String>,

    /// Deformation parameter as a rational, e.g. 1/2.
    #[arg(long, global = true)]
    q: Option<String>,

    #[arg(long, global = true)]
    n_max: Option<usize>,

    #[arg(long, global = true, allow_hyphen_values = true)]
    k_min: Option<i64>,

    #[arg(long, global = true, allow_hyphen_values = true)]
    k_max: Option<i64>,

    #[arg(long, global = true)]
    alpha: Option<f64>,

    #[arg(long, global = true)]
    beta: Option<f64>,

    /// R'' convolution weights centred on r = 0, e.g. 0.3,0,0.3.
    #[arg(long, global = true, allow_hyphen_values = true)]
    alpha_r: Option<String>,

    /// Sign of the twisted build, +1 or -1; both when absent.
    #[arg(long, global = true, allow_hyphen_values = true)]
    epsilon: Option<String>,

    #[arg(long, global = true)]
    tol: Option<f64>,

    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    /// Flat key = value file; flags override its entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

impl Cli {
    fn suites(&self) -> Vec<Suite> {
        let mode = match (self.command, self.mode) {
            (Some(c), _) => match c {
                Command::VerifySymbolic => Mode::Symbolic,
                Command::VerifyOperator => Mode::Operator,
                Command::ProbeGrowth => Mode::Probe,
                Command::Gram => Mode::Gram,
                Command::VerifySphere => Mode::Sphere,
                Command::VerifyDisk => Mode::Disk,
                Command::All => Mode::All,
            },
            (None, Some(m)) => m,
            (None, None) => Mode::All,
        };
        match mode {
            Mode::Symbolic => vec![Suite::Symbolic],
            Mode::Operator => vec![Suite::Operator],
            Mode::Probe => vec![Suite::Probe],
            Mode::Gram => vec![Suite::Gram],
            Mode::Sphere => vec![Suite::Sphere],
            Mode::Disk => vec![Suite::Disk],
            Mode::All => Suite::ALL.to_vec(),
        }
    }

    fn settings(&self) -> Result<Settings> {
        let mut s = Settings::default();
        if let Some(p) = &self.config {
            s.load(p)?;
        }
        if let Some(v) = &self.q {
            s.q = v.clone();
        }
        if let Some(v) = self.n_max {
            s.n_max = Some(v);
        }
        if let Some(v) = self.k_min {
            s.k_min = v;
        }
        if let Some(v) = self.k_max {
            s.k_max = v;
        }
        if let Some(v) = self.alpha {
            s.alpha = v;
        }
        if let Some(v) = self.beta {
            s.beta = v;
        }
        if let Some(v) = &self.alpha_r {
            s.alpha_r = parse_alpha_r(v)?;
        }
        if let Some(v) = &self.epsilon {
            s.epsilon = Some(parse_epsilon(v)?);
        }
        if let Some(v) = self.tol {
            s.tol = v;
        }
        if let Some(v) = &self.calculus {
            s.calculus = parse_calculus(v)?;
        }
        s.validate()?;
        Ok(s)
    }
}

fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("QCALC_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| anyhow::anyhow!("QCALC_THREADS must be a positive integer, got `{v}`"))?;
        b = b.num_threads(n.max(1));
    }
    Ok(b.build()?)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Window(_)) => EXIT_WINDOW,
        Some(Error::Config(_) | Error::Parse { .. } | Error::InvalidQ(_) | Error::UnknownCalculus(_)) => EXIT_CONFIG,
        Some(_) => EXIT_ENGINE,
        None => EXIT_CONFIG,
    }
}

fn run(cli: &Cli) -> std::result::Result<Report, (u8, anyhow::Error)> {
    let settings = cli.settings().map_err(|e| (EXIT_CONFIG, e))?;
    let pool = thread_pool().map_err(|e| (EXIT_CONFIG, e))?;
    let suites = cli.suites();
    let results: Vec<Result<Report>> = pool.install(|| suites.par_iter().map(|s| s.run(&settings)).collect());
    let mut report = Report::new();
    for r in results {
        report.extend(r.map_err(|e| (exit_code(&e), e))?);
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => output::json(&report),
                Format::Text => output::table(&report),
            };
            println!("{text}");
            if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
        Err((code, e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}

//! Command-line front end: verification suites, Proj reconstruction and
//! canonical dumps.

mod config;
mod report;

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use subadd::exactla::Field;
use subadd::geometry::{build_corpus, reconstruct_proj, run_suite, CorpusConfig, SuiteConfig};
use subadd::modrep::{omega, Module};
use subadd::pipoints::PiPoint;
use subadd::Error;

use config::{Overrides, parse_window};
use report::Report;

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "subadd", version, about = "Subadditive functions and pi-points for elementary abelian p-groups")]
struct Cli {
    /// Config file, JSON or `key = value` lines.
    #[arg(long, env = "SUBADD_CONFIG", global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    p: Option<u32>,
    #[arg(long, global = true)]
    r: Option<u32>,
    /// Degree of the base field k over GF(p).
    #[arg(long, global = true)]
    base: Option<u32>,
    /// Degrees of the fields K whose points are enumerated, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    ext: Option<Vec<u32>>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long = "corpus-size", global = true)]
    corpus_size: Option<usize>,
    /// Tate window of the gap sweep, as lo,hi.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_window)]
    window: Option<[i32; 2]>,
    /// Tate window of the census comparison, as lo,hi.
    #[arg(long = "census-window", global = true, allow_hyphen_values = true, value_parser = parse_window)]
    census_window: Option<[i32; 2]>,
    #[arg(long, global = true)]
    rgap: Option<usize>,
    #[arg(long, global = true)]
    sumcap: Option<usize>,
    #[arg(long = "max-dim", global = true)]
    max_dim: Option<usize>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Adloc,
    Sums,
    Bcr,
    Pipoint,
    Pointmodule,
    CbDecomp,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Adloc => "adloc",
            Suite::Sums => "sums",
            Suite::Bcr => "bcr",
            Suite::Pipoint => "pipoint",
            Suite::Pointmodule => "pointmodule",
            Suite::CbDecomp => "cb-decomp",
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one verification suite on the configured corpus.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Recover the closed points of Proj for every extension degree.
    Reconstruct,
    /// Write a canonical JSON artifact.
    Dump {
        #[command(subcommand)]
        object: DumpObject,
    },
}

#[derive(Subcommand, Debug)]
enum DumpObject {
    Corpus,
    /// A named module over the base field: k, kE, free:N, omega:N.
    Module { name: String },
    /// The pi-point with the given coefficients, as field element indices.
    Pipoint {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<u32>,
        /// Degree of K over GF(p).
        #[arg(long, default_value_t = 1)]
        degree: u32,
    },
}

enum Failure {
    Usage(String),
    Computation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Config(_) | Error::NotPrime(_) | Error::BadGroup(_) | Error::FieldTooLarge(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Computation(other.to_string()),
        }
    }
}

fn overrides(cli: &Cli) -> Overrides {
    Overrides {
        p: cli.p,
        r: cli.r,
        base: cli.base,
        ext: cli.ext.clone(),
        seed: cli.seed,
        corpus_size: cli.corpus_size,
        window: cli.window,
        census_window: cli.census_window,
        rgap: cli.rgap,
        sumcap: cli.sumcap,
        max_dim: cli.max_dim,
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(cli: &Cli, report: &Report) -> String {
    match cli.format {
        Format::Json => report.to_json(),
        Format::Tsv => report.to_tsv(),
    }
}

fn verify(cli: &Cli, cfg: &SuiteConfig, suite: Suite) -> Result<bool, Failure> {
    let start = Instant::now();
    let run = run_suite(suite.name(), cfg)?;
    let timing = BTreeMap::from([(suite.name().to_string(), start.elapsed().as_millis() as u64)]);
    let report = Report::new(format!("verify {}", suite.name()), cfg.clone(), vec![run], timing);
    emit(cli, &render(cli, &report))?;
    Ok(report.passed())
}

fn reconstruct(cli: &Cli, cfg: &SuiteConfig) -> Result<bool, Failure> {
    let group = cfg.group()?;
    let mut runs = Vec::new();
    let mut timing = BTreeMap::new();
    for &n in &cfg.extension_degrees {
        let start = Instant::now();
        let field = cfg.field_of_degree(n)?;
        let mut cc = CorpusConfig::new(group, &field, cfg.seed, cfg.corpus_size);
        if let Some(d) = cfg.max_dim {
            cc.max_dim = d;
        }
        runs.push(reconstruct_proj(&cc, &field, cfg.sum_cap)?);
        timing.insert(format!("GF({}^{n})", cfg.p), start.elapsed().as_millis() as u64);
    }
    let report = Report::new("reconstruct".into(), cfg.clone(), runs, timing);
    emit(cli, &render(cli, &report))?;
    Ok(report.passed())
}

fn named_module(cfg: &SuiteConfig, name: &str) -> Result<Module, Failure> {
    let g = cfg.group()?;
    let f = cfg.base_field()?;
    let k = Module::trivial(g, &f);
    let bad = || Failure::Usage(format!("unknown module {name:?}; expected k, kE, free:N or omega:N"));
    match name.split_once(':') {
        None if name == "k" => Ok(k),
        None if name == "kE" => Ok(Module::regular(g, &f)),
        Some(("free", n)) => Ok(Module::free(g, &f, n.parse().map_err(|_| bad())?)),
        Some(("omega", n)) => Ok(omega(&k, n.parse().map_err(|_| bad())?)?),
        _ => Err(bad()),
    }
}

fn dump(cli: &Cli, cfg: &SuiteConfig, object: &DumpObject) -> Result<bool, Failure> {
    let mut text = match object {
        DumpObject::Corpus => build_corpus(&cfg.corpus_config()?)?.canonical_json(),
        DumpObject::Module { name } => {
            cfg.validate()?;
            serde_json::to_string(&named_module(cfg, name)?.to_json()).expect("module serializes")
        }
        DumpObject::Pipoint { lambda, degree } => {
            let g = cfg.group()?;
            let field = Field::new(cfg.p, *degree, None).map_err(|e| Failure::Usage(e.to_string()))?;
            if lambda.len() != g.r as usize || lambda.iter().any(|&c| c >= field.order()) {
                return Err(Failure::Usage(format!("lambda needs {} entries below {}", g.r, field.order())));
            }
            let coeffs = lambda.iter().map(|&c| field.from_index(c)).collect();
            let alpha = PiPoint::new(g, &field, coeffs).map_err(|e| Failure::Usage(e.to_string()))?;
            serde_json::to_string(&serde_json::json!({
                "pipoint": alpha.to_json(),
                "normalized": alpha.proj_point(),
            }))
            .expect("pipoint serializes")
        }
    };
    text.push('\n');
    emit(cli, &text)?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match config::load(cli.config.as_deref()) {
        Ok(c) => config::apply(c, &overrides(&cli)),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    if let Err(e) = cfg.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    let outcome = match &cli.command {
        Command::Verify { suite } => verify(&cli, &cfg, *suite),
        Command::Reconstruct => reconstruct(&cli, &cfg),
        Command::Dump { object } => dump(&cli, &cfg, object),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAILED),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Computation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FAILED)
        }
    }
}

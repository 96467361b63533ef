//! Batch front end. Every command reads one JSON config and writes CSV or
//! JSON reports.
//!
//! Exit codes: 0 success, 1 configuration or hypothesis violation, 2 I/O or
//! malformed input, 3 recovery ambiguity, 4 check failure.

mod config;

pub use config::{GridSpec, MethodChoice, ModelKind, RunConfig, SampleSpec, Spacing, Thresholds};

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::distributions::DistributionSpec;
use crate::error::{Error, Result};
use crate::identification::{
    recover_by_region_quotient, recover_kotlarski, recover_maxind, recover_positive_general, RecoveryResult,
};
use crate::max_independence::{validate_generator, GeneratorSpec};
use crate::max_model::{
    read_pairs_csv, sample_joint, sample_kotlarski, write_pairs_csv, Dependence, JointCdf2D, JointDistribution,
    Regime,
};
use crate::nonuniqueness::explore_alternatives;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_AMBIGUOUS: i32 = 3;
pub const EXIT_CHECK_FAILED: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "maxid", version, about = "Identification from coordinatewise maxima")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Overrides the config seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// CSV of `u,v` pairs used as input instead of the analytic model.
    #[arg(long, global = true)]
    pub samples: Option<PathBuf>,
    /// CSV of `t1,t2` probe points.
    #[arg(long, global = true)]
    pub probes: Option<PathBuf>,
    /// JSON array of shared-law candidates.
    #[arg(long, global = true)]
    pub candidates: Option<PathBuf>,
    /// JSON generator spec.
    #[arg(long, global = true)]
    pub generator: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    Simulate,
    Cdf,
    Recover,
    Diagnose,
    Counterexample,
    ValidateGenerator,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Self::Simulate => "simulate",
            Self::Cdf => "cdf",
            Self::Recover => "recover",
            Self::Diagnose => "diagnose",
            Self::Counterexample => "counterexample",
            Self::ValidateGenerator => "validate-generator",
        }
    }
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) | Error::Json(_) | Error::Csv(_) | Error::MalformedInput(_) => EXIT_IO,
            _ => EXIT_CONFIG,
        };
        Self { code, message: e.to_string() }
    }
}

type CmdResult = std::result::Result<i32, Failure>;

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    command: &'a str,
    version: &'a str,
    config_sha256: &'a str,
    #[serde(flatten)]
    body: T,
}

struct Context {
    cli: Cli,
    config: RunConfig,
    hash: String,
}

impl Context {
    fn seed(&self) -> u64 {
        self.cli.seed.unwrap_or(self.config.seed)
    }

    fn report<T: Serialize>(&self, body: T) -> Result<String> {
        let env = Envelope {
            command: self.cli.command.name(),
            version: env!("CARGO_PKG_VERSION"),
            config_sha256: &self.hash,
            body,
        };
        Ok(serde_json::to_string_pretty(&env)? + "\n")
    }

    /// Writes to `--out` when given, otherwise to standard output.
    fn emit(&self, text: &str) -> Result<()> {
        match &self.cli.out {
            Some(p) => std::fs::write(p, text)?,
            None => std::io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

fn open_out(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Error messages go to standard error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn execute(cli: Cli) -> CmdResult {
    let path = cli.config.clone().ok_or_else(|| Failure { code: EXIT_CONFIG, message: "--config is required".into() })?;
    let raw = std::fs::read(&path).map_err(Error::from)?;
    let text = String::from_utf8(raw.clone())
        .map_err(|_| Failure { code: EXIT_IO, message: "config is not UTF-8".into() })?;
    let config = RunConfig::parse(&text)?;
    let hash = hex::encode(Sha256::digest(&raw));
    let ctx = Context { cli, config, hash };
    match ctx.cli.command {
        Command::Simulate => simulate(&ctx),
        Command::Cdf => cdf(&ctx),
        Command::Recover => recover(&ctx),
        Command::Diagnose => diagnose(&ctx),
        Command::Counterexample => counterexample(&ctx),
        Command::ValidateGenerator => validate(&ctx),
    }
}

fn simulate(ctx: &Context) -> CmdResult {
    let cfg = &ctx.config;
    let out = ctx.cli.out.as_ref().ok_or_else(|| Failure { code: EXIT_CONFIG, message: "simulate needs --out".into() })?;
    let n = cfg.samples.n;
    let seed = ctx.seed();
    let pairs = match cfg.model {
        ModelKind::Kotlarski => {
            let s = &cfg.system;
            sample_kotlarski(s.fz1(), s.fx(), s.fy(), n, seed)?
        }
        ModelKind::General => sample_joint(&cfg.system, &cfg.coeffs()?, n, seed)?,
    };
    let mut w = open_out(out)?;
    write_pairs_csv(&mut w, &pairs)?;
    w.flush().map_err(Error::from)?;
    #[derive(Serialize)]
    struct Summary {
        n: usize,
        seed: u64,
        regime: Regime,
        model: &'static str,
    }
    let model = if cfg.model == ModelKind::Kotlarski { "kotlarski" } else { "general" };
    let text = ctx.report(Summary { n, seed, regime: cfg.coeffs()?.regime(), model })?;
    std::io::stdout().write_all(text.as_bytes()).map_err(Error::from)?;
    Ok(EXIT_OK)
}

fn read_probes(path: &Path) -> Result<Vec<(f64, f64)>> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_path(path)?;
    let headers = r.headers()?.clone();
    if headers.len() != 2 || &headers[0] != "t1" || &headers[1] != "t2" {
        return Err(Error::MalformedInput("probe file must have header t1,t2".into()));
    }
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let parse = |s: &str| -> Result<f64> {
            let t = s.trim();
            match t {
                "inf" | "+inf" | "Infinity" => Ok(f64::INFINITY),
                "-inf" | "-Infinity" => Ok(f64::NEG_INFINITY),
                _ => t.parse::<f64>().map_err(|e| Error::MalformedInput(format!("probe '{t}': {e}"))),
            }
        };
        out.push((parse(&rec[0])?, parse(&rec[1])?));
    }
    Ok(out)
}

fn cdf(ctx: &Context) -> CmdResult {
    let cfg = &ctx.config;
    let g = cfg.analytic()?;
    let probes = match &ctx.cli.probes {
        Some(p) => read_probes(p)?,
        None => {
            let grid = cfg.grid()?;
            grid.iter().flat_map(|&a| grid.iter().map(move |&b| (a, b))).collect()
        }
    };
    let vals = g.eval_batch(&probes);
    let mut buf = Vec::new();
    {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(&mut buf);
        w.write_record(["t1", "t2", "g"]).map_err(Error::from)?;
        for (&(t1, t2), v) in probes.iter().zip(vals) {
            w.write_record([t1.to_string(), t2.to_string(), v.to_string()]).map_err(Error::from)?;
        }
        w.flush().map_err(Error::from)?;
    }
    ctx.emit(std::str::from_utf8(&buf).expect("csv output is UTF-8"))?;
    Ok(EXIT_OK)
}

fn recover(ctx: &Context) -> CmdResult {
    let cfg = &ctx.config;
    let coeffs = cfg.coeffs()?;
    if coeffs.regime() == Regime::MixedSign {
        return Err(Failure {
            code: EXIT_CONFIG,
            message: "mixed-sign coefficients are not identified by this route; use the counterexample command".into(),
        });
    }
    let grid = cfg.grid()?;
    let g = match &ctx.cli.samples {
        Some(p) => {
            let pairs = read_pairs_csv(File::open(p).map_err(Error::from)?)?;
            match cfg.bandwidth {
                Some(h) => JointCdf2D::smoothed(pairs, h)?,
                None => JointCdf2D::empirical(pairs)?,
            }
        }
        None => cfg.analytic()?,
    };
    let maxind = matches!(cfg.system.dependence(), Dependence::MaxIndependent { .. });
    let method = match cfg.method {
        MethodChoice::Auto => match (cfg.model, maxind) {
            (ModelKind::Kotlarski, _) => MethodChoice::Kotlarski,
            (_, true) => MethodChoice::Maxind,
            _ => MethodChoice::GridSolver,
        },
        m => m,
    };
    let result: RecoveryResult = match method {
        MethodChoice::Kotlarski => {
            if cfg.model != ModelKind::Kotlarski && !(coeffs.a == 1.0 && coeffs.b == 1.0 && coeffs.c == 1.0 && coeffs.d == 1.0) {
                return Err(Failure {
                    code: EXIT_CONFIG,
                    message: "the closed-form route needs the single-shared-component model".into(),
                });
            }
            recover_kotlarski(&g, &grid)?
        }
        MethodChoice::RegionQuotient => recover_by_region_quotient(&g, &coeffs, &grid)?,
        MethodChoice::GridSolver => recover_positive_general(&g, &coeffs, &grid, &cfg.solver)?,
        MethodChoice::Maxind => {
            let gen = cfg.system.generator().ok_or_else(|| Failure {
                code: EXIT_CONFIG,
                message: "the max-independent route needs a generator in the system".into(),
            })?;
            recover_maxind(&g, &coeffs, &gen, &grid, &cfg.solver)?
        }
        MethodChoice::Auto => unreachable!(),
    };
    #[derive(Serialize)]
    struct Body<'a> {
        input: &'a str,
        smooth_truth: bool,
        result: &'a RecoveryResult,
    }
    let input = if ctx.cli.samples.is_some() { "samples" } else { "analytic" };
    let mut result = result;
    if result.is_ambiguous() && coeffs.a != coeffs.b && !cfg.system.fz1().is_smooth() {
        result.solver_report.note = Some(format!(
            "starts disagree with a ≠ b and a non-differentiable F_Z: the smoothness hypothesis for uniqueness fails (spread {:e})",
            result.solver_report.multistart_spread
        ));
    }
    ctx.emit(&ctx.report(Body { input, smooth_truth: cfg.system.fz1().is_smooth(), result: &result })?)?;
    Ok(if result.is_ambiguous() { EXIT_AMBIGUOUS } else { EXIT_OK })
}

fn diagnose(ctx: &Context) -> CmdResult {
    let cfg = &ctx.config;
    let alt = cfg
        .alternative
        .as_ref()
        .ok_or_else(|| Failure { code: EXIT_CONFIG, message: "diagnose needs an alternative system".into() })?;
    let grid = cfg.grid()?;
    let coeffs = cfg.coeffs()?;
    let d = crate::identification::ratio_diagnostics(&cfg.system, alt, &coeffs, &grid)?;
    if let Some(p) = &ctx.cli.out {
        let mut w = open_out(p)?;
        d.write_csv(&mut w, &grid)?;
        w.flush().map_err(Error::from)?;
    }
    let worst = d.residual_product.iter().copied().max_by(|a, b| a.residual.total_cmp(&b.residual));
    let max_product = d.max_residual_product();
    let equivalent = max_product <= cfg.thresholds.diagnose;
    #[derive(Serialize)]
    struct Summary {
        lambda: f64,
        max_residual_product: f64,
        witness: Option<(f64, f64)>,
        max_residual_antiperiodic: f64,
        threshold: f64,
        equivalent: bool,
        skipped: Vec<f64>,
    }
    let text = ctx.report(Summary {
        lambda: d.lambda,
        max_residual_product: max_product,
        witness: worst.map(|r| (r.t1, r.t2)),
        max_residual_antiperiodic: d.max_residual_antiperiodic(),
        threshold: cfg.thresholds.diagnose,
        equivalent,
        skipped: d.skipped.clone(),
    })?;
    std::io::stdout().write_all(text.as_bytes()).map_err(Error::from)?;
    Ok(if equivalent { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn counterexample(ctx: &Context) -> CmdResult {
    let cfg = &ctx.config;
    let coeffs = cfg.coeffs()?;
    if coeffs.regime() != Regime::MixedSign {
        return Err(Failure { code: EXIT_CONFIG, message: "counterexample needs mixed-sign coefficients".into() });
    }
    let candidates: Vec<DistributionSpec> = match &ctx.cli.candidates {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(Error::from)?;
            serde_json::from_str(&text).map_err(Error::from)?
        }
        None if !cfg.candidates.is_empty() => cfg.candidates.clone(),
        None => vec![cfg.system.fz1().clone()],
    };
    let grid = cfg.grid()?;
    let report = explore_alternatives(&cfg.system, &coeffs, &candidates, &grid)?;
    let equivalent = report
        .entries
        .iter()
        .filter(|e| matches!(e.equivalence, Some(crate::nonuniqueness::Equivalence::Equivalent { .. })))
        .count();
    #[derive(Serialize)]
    struct Body<'a> {
        lattice: usize,
        summary: String,
        report: &'a crate::nonuniqueness::ExplorationReport,
    }
    let summary = format!("{equivalent} of {} candidates equivalent on the lattice", report.entries.len());
    ctx.emit(&ctx.report(Body { lattice: crate::nonuniqueness::DEFAULT_LATTICE, summary, report: &report })?)?;
    Ok(EXIT_OK)
}

fn validate(ctx: &Context) -> CmdResult {
    let cfg = &ctx.config;
    let spec: GeneratorSpec = match &ctx.cli.generator {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(Error::from)?;
            serde_json::from_str(&text).map_err(Error::from)?
        }
        None => match cfg.system.dependence() {
            Dependence::MaxIndependent { generator } => generator.clone(),
            Dependence::Independent => GeneratorSpec::ConstantOne,
        },
    };
    let report = validate_generator(&spec, cfg.system.marginals(), cfg.points_per_axis)?;
    #[derive(Serialize)]
    struct Body<'a> {
        generator: &'a GeneratorSpec,
        report: &'a crate::max_independence::ValidationReport,
    }
    ctx.emit(&ctx.report(Body { generator: &spec, report: &report })?)?;
    Ok(if report.passed { EXIT_OK } else { EXIT_CHECK_FAILED })
}

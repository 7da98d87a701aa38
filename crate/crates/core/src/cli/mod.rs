//! The `dilate` command line: `gen`, `verify`, `partition` and `search`.
//!
//! Exit codes: 0 when every asserted check passed, 2 on an assertion
//! failure (the failing report id goes to stderr), 1 on usage or IO errors.
//! Every JSON artifact is `{version, config, …}` with the effective seed and
//! constants echoed in `config`.

mod search;
mod verify;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::thread;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

pub use search::{search, Improvement, SearchParams, SearchResult};
pub use verify::{load_corpus, run_verify, Ineq, VerifyFailure, INEQ_NAMES};

use crate::bounds::{corpus_from_spec, generate, Params};
use crate::config::Constants;
use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational};
use crate::report::BoundReport;
use crate::setcore::io::{format_set, read_set};
use crate::setcore::GroupSet;
use crate::structure::{theorem1_partition, write_trace_sets, PartitionTrace};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "dilate", version, about = "Exact dilate-sum experiments over finite subsets of Z^d")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write one family member as a set file.
    Gen(GenArgs),
    /// Check inequalities over a corpus.
    Verify(VerifyArgs),
    /// Partition a set into blocks with certified bounds on |A + 2·B|.
    Partition(PartitionArgs),
    /// Anneal over n-subsets of [0, universe) for a large dilate-sum exponent.
    Search(SearchArgs),
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Seed for every randomized step; overrides the constants file.
    #[arg(long)]
    pub seed: Option<u64>,
    /// JSON file with lemma constants; missing keys keep their defaults.
    #[arg(long)]
    pub constants: Option<PathBuf>,
    /// Treat reported budget checks as assertions.
    #[arg(long)]
    pub strict: bool,
}

impl Common {
    pub fn resolve(&self) -> Result<Constants> {
        let mut c = match &self.constants {
            Some(path) => serde_json::from_str(&fs::read_to_string(path)?)?,
            None => Constants::default(),
        };
        if let Some(seed) = self.seed {
            c.seed = seed;
        }
        c.strict |= self.strict;
        Ok(c)
    }
}

#[derive(Args, Debug)]
pub struct GenArgs {
    /// interval, geometric, hypercube, gap, simplex or random.
    pub family: String,
    /// Parameters as key=value, e.g. n=8 or steps=1;100.
    pub params: Vec<String>,
    /// Embed hypercubes into Z.
    #[arg(long)]
    pub embed: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// default, structured, random[:count=N], file:PATH or FAMILY:k=v,…
    #[arg(long, default_value = "default")]
    pub corpus: Vec<String>,
    /// NAME[:k=v,…]; repeatable.
    #[arg(long, default_value = "thm1")]
    pub ineq: Vec<String>,
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct PartitionArgs {
    /// A set file, or FAMILY:k=v,… for a generated set.
    pub input: String,
    /// `auto` for M = K^{1/20}, otherwise a rational in [1, K].
    #[arg(long = "M", default_value = "auto")]
    pub m: String,
    /// Directory receiving every block and residual as set files.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 2)]
    pub lambda: u32,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub universe: usize,
    #[arg(long, default_value_t = 10_000)]
    pub budget: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Geometric cooling ratio.
    #[arg(long, default_value_t = 0.995)]
    pub cooling: f64,
    /// Independent runs on seeds seed, seed+1, …, run in parallel.
    #[arg(long, default_value_t = 1)]
    pub restarts: u64,
    #[arg(long)]
    pub constants: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Everything needed to reproduce an artifact.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub args: BTreeMap<String, Value>,
    pub seed: u64,
    pub constants: Constants,
    pub out: Option<String>,
    pub trace: Option<String>,
}

impl RunConfig {
    fn new(command: &str, constants: &Constants, out: &Option<PathBuf>) -> Self {
        RunConfig {
            command: command.to_string(),
            args: BTreeMap::new(),
            seed: constants.seed,
            constants: constants.clone(),
            out: out.as_ref().map(|p| p.display().to_string()),
            trace: None,
        }
    }

    fn arg(mut self, key: &str, value: impl Serialize) -> Self {
        self.args.insert(key.to_string(), serde_json::to_value(value).expect("plain data serializes"));
        self
    }
}

#[derive(Serialize)]
struct Envelope<'a, B: Serialize> {
    version: &'static str,
    config: &'a RunConfig,
    #[serde(flatten)]
    body: B,
}

fn to_json<B: Serialize>(config: &RunConfig, body: B) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&Envelope { version: VERSION, config, body })?;
    s.push('\n');
    Ok(s)
}

/// `{version, config, reports}`.
pub fn reports_json(config: &RunConfig, reports: &[BoundReport]) -> Result<String> {
    to_json(config, json!({ "reports": reports }))
}

/// One row per report: `id,family,params,size,K,lhs,rhs,ratio,pass`.
pub fn reports_csv(reports: &[BoundReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::InvalidParameter(format!("csv: {e}"));
    w.write_record(["id", "family", "params", "size", "K", "lhs", "rhs", "ratio", "pass"]).map_err(csv_err)?;
    for r in reports {
        w.write_record([
            r.id.clone(),
            r.family.clone(),
            r.params.clone(),
            r.size.to_string(),
            r.k.as_ref().map(format_rational).unwrap_or_default(),
            format_rational(&r.lhs),
            r.rhs.to_string(),
            r.ratio.to_string(),
            r.pass.to_string(),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidParameter(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Parsed command outcome before it becomes an exit code.
enum Outcome {
    Ok,
    /// Asserted reports that failed.
    Violations(Vec<String>),
}

fn cmd_gen(a: &GenArgs) -> Result<Outcome> {
    let mut pairs: Vec<&str> = a.params.iter().map(String::as_str).collect();
    if a.embed {
        pairs.push("embed=true");
    }
    let set = generate(&a.family, &Params::from_pairs(pairs)?)?;
    emit(&a.out, &format_set(&set))?;
    Ok(Outcome::Ok)
}

/// Runs `verify` and renders its artifact; the report list is returned so
/// callers can inspect failures.
pub fn cmd_verify(a: &VerifyArgs) -> Result<(String, Vec<BoundReport>), VerifyFailure> {
    let plain = |error: Error| VerifyFailure { ineq: String::new(), family: String::new(), params: String::new(), error };
    let constants = a.common.resolve().map_err(plain)?;
    let ineqs = a.ineq.iter().map(|s| Ineq::parse(s)).collect::<Result<Vec<_>>>().map_err(plain)?;
    let corpus = load_corpus(&a.corpus).map_err(plain)?;
    let reports = run_verify(&corpus, &ineqs, &constants)?;
    let config = RunConfig::new("verify", &constants, &a.out)
        .arg("corpus", &a.corpus)
        .arg("ineq", &a.ineq)
        .arg("format", if a.format == Format::Csv { "csv" } else { "json" });
    let text = match a.format {
        Format::Json => reports_json(&config, &reports),
        Format::Csv => reports_csv(&reports),
    }
    .map_err(plain)?;
    Ok((text, reports))
}

fn load_input(input: &str) -> Result<GroupSet> {
    if Path::new(input).exists() || !input.contains(':') {
        return read_set(input);
    }
    let mut entries = corpus_from_spec(input)?;
    if entries.len() != 1 {
        return Err(Error::InvalidParameter(format!("{input:?} names {} sets, expected one", entries.len())));
    }
    Ok(entries.remove(0).set)
}

/// Runs `partition`, returning the trace and its JSON artifact.
pub fn cmd_partition(a: &PartitionArgs) -> Result<(String, PartitionTrace)> {
    let constants = a.common.resolve()?;
    let set = load_input(&a.input)?;
    let m = match a.m.as_str() {
        "auto" => None,
        s => Some(parse_rational(s)?),
    };
    let trace = theorem1_partition(&set, m.as_ref(), &constants)?;
    let mut config = RunConfig::new("partition", &constants, &a.out).arg("input", &a.input).arg("M", &a.m);
    if let Some(dir) = &a.trace {
        fs::create_dir_all(dir)?;
        let files = write_trace_sets(&trace, dir)?;
        config.trace = Some(dir.display().to_string());
        config = config.arg("trace_files", files);
    }
    Ok((to_json(&config, json!({ "trace": &trace }))?, trace))
}

#[derive(Serialize)]
struct RunSummary {
    seed: u64,
    exponent: f64,
}

/// Runs `search` over every restart seed in parallel and keeps the best
/// result, ties to the smallest seed.
pub fn cmd_search(a: &SearchArgs) -> Result<(String, SearchResult)> {
    let mut constants = match &a.constants {
        Some(path) => serde_json::from_str(&fs::read_to_string(path)?)?,
        None => Constants::default(),
    };
    constants.seed = a.seed;
    if a.restarts == 0 {
        return Err(Error::InvalidParameter("restarts must be >= 1".into()));
    }
    let params: Vec<SearchParams> = (0..a.restarts)
        .map(|i| SearchParams {
            cooling: a.cooling,
            ..SearchParams::new(a.lambda, a.n, a.universe, a.budget, a.seed.wrapping_add(i))
        })
        .collect();
    let results: Vec<Result<SearchResult>> = thread::scope(|scope| {
        let handles: Vec<_> = params.iter().map(|p| scope.spawn(move || search(p))).collect();
        handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect()
    });
    let results = results.into_iter().collect::<Result<Vec<_>>>()?;
    let runs: Vec<RunSummary> =
        params.iter().zip(&results).map(|(p, r)| RunSummary { seed: p.seed, exponent: r.exponent }).collect();
    let best = results
        .into_iter()
        .reduce(|best, r| if r.exponent > best.exponent { r } else { best })
        .expect("at least one restart");
    let config = RunConfig::new("search", &constants, &a.out)
        .arg("lambda", a.lambda)
        .arg("n", a.n)
        .arg("universe", a.universe)
        .arg("budget", a.budget)
        .arg("cooling", a.cooling)
        .arg("restarts", a.restarts);
    Ok((to_json(&config, json!({ "result": &best, "runs": runs }))?, best))
}

fn dispatch(cli: &Cli) -> std::result::Result<Outcome, VerifyFailure> {
    let plain = |error: Error| VerifyFailure { ineq: String::new(), family: String::new(), params: String::new(), error };
    match &cli.command {
        Command::Gen(a) => cmd_gen(a).map_err(plain),
        Command::Verify(a) => {
            let (text, reports) = cmd_verify(a)?;
            emit(&a.out, &text).map_err(plain)?;
            let failed: Vec<String> = reports
                .iter()
                .filter(|r| r.is_violation())
                .map(|r| format!("{} ({}: {})", r.id, r.family, r.params))
                .collect();
            Ok(if failed.is_empty() { Outcome::Ok } else { Outcome::Violations(failed) })
        }
        Command::Partition(a) => {
            let (text, _) = cmd_partition(a).map_err(plain)?;
            emit(&a.out, &text).map_err(plain)?;
            Ok(Outcome::Ok)
        }
        Command::Search(a) => {
            let (text, _) = cmd_search(a).map_err(plain)?;
            emit(&a.out, &text).map_err(plain)?;
            Ok(Outcome::Ok)
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match dispatch(&cli) {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::Violations(ids)) => {
            for id in ids {
                eprintln!("assertion failed: {id}");
            }
            2
        }
        Err(f) => {
            let message = if f.ineq.is_empty() { f.error.to_string() } else { f.to_string() };
            if f.error.is_assertion() {
                eprintln!("{message}");
                2
            } else {
                eprintln!("error: {message}");
                1
            }
        }
    }
}

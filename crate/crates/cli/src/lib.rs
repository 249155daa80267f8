//! Command-line front end: argument parsing, experiment configs, and the
//! commands that drive the `tourlab` library.

pub mod table;

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use log::{info, warn};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use tourlab::bias::expected_margin;
use tourlab::catalog::parse_tournament_list;
use tourlab::density::{DensityReport, Estimate, Margin};
use tourlab::{
    build_blowup, build_tnp, build_transversal, classify_catalog, dominance_report, in_f, load_or_enumerate, min_fas,
    BigTournament, CacheOutcome, Error, Mode, Rational, Seed, Tournament, TournamentCatalog, MAX_H,
};

use table::{Cell, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_BAD_ARGS: i32 = 2;
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

/// Smallest `h` whose catalog work needs `--allow-long`.
pub const LONG_H: usize = 9;

/// Samples drawn in Monte Carlo mode when none are requested.
pub const DEFAULT_SAMPLES: u64 = 100_000;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn bad(message: impl Into<String>) -> Self {
        CliError { code: EXIT_BAD_ARGS, message: message.into() }
    }

    fn guard(message: impl Into<String>) -> Self {
        CliError { code: EXIT_GUARD, message: message.into() }
    }

    fn internal(message: impl Into<String>) -> Self {
        CliError { code: EXIT_INTERNAL, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::TooLarge { .. } | Error::PackingFailed { .. } => EXIT_GUARD,
            Error::OddCoefficientResidue(_) | Error::CorruptCache { .. } | Error::Io(_) => EXIT_INTERNAL,
            _ => EXIT_BAD_ARGS,
        };
        CliError { code, message: e.to_string() }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
#[value(rename_all = "kebab-case")]
pub enum CommandName {
    Enumerate,
    BiasTable,
    Classify,
    FasTable,
    Construct,
    Density,
    DominanceCheck,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Tnp,
    Transversal,
    Blowup,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ModeName {
    Exact,
    Mc,
}

/// Fully resolved parameters of one run. Rationals are kept as `a/b`
/// strings so the file stays exact and human-editable.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub command: CommandName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<Kind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<ModeName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hstar: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
    pub cache_dir: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    #[serde(default)]
    pub allow_long: bool,
}

impl ExperimentConfig {
    pub fn new(command: CommandName, cache_dir: PathBuf) -> Self {
        ExperimentConfig {
            command,
            kind: None,
            h: None,
            n: None,
            p: None,
            x: None,
            beta: None,
            seed: None,
            mode: None,
            samples: None,
            hstar: None,
            family: None,
            graph: None,
            pattern: None,
            out: None,
            format: Format::Csv,
            cache_dir,
            threads: None,
            allow_long: false,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = read_input(path, "config file")?;
        serde_json::from_str(&text).map_err(|e| CliError::bad(format!("bad config file {}: {e}", path.display())))
    }

    pub fn save(&self, path: &Path) -> CliResult<()> {
        let mut text = serde_json::to_string_pretty(self).expect("config serializes");
        text.push('\n');
        write_output(path, &text)
    }

    /// Fill command-specific defaults so the logged config is complete.
    fn resolve(mut self) -> Self {
        match self.command {
            CommandName::Construct => {
                self.seed.get_or_insert(0);
            }
            CommandName::Density | CommandName::DominanceCheck => {
                self.beta.get_or_insert_with(|| "0".into());
                let mode = *self.mode.get_or_insert(ModeName::Exact);
                if mode == ModeName::Mc {
                    self.samples.get_or_insert(DEFAULT_SAMPLES);
                    self.seed.get_or_insert(0);
                }
            }
            _ => {}
        }
        self
    }
}

#[derive(Parser, Debug)]
#[command(name = "tourlab", version, about = "Exact tournament density laboratory")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Catalog cache directory.
    #[arg(long, global = true, env = "TOURLAB_CACHE")]
    cache_dir: Option<PathBuf>,
    /// Output file (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Permit h >= 9 catalog work.
    #[arg(long, global = true)]
    allow_long: bool,
    /// Write the resolved config to this file before running.
    #[arg(long, global = true)]
    save_config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Isomorphism classes on h vertices.
    Enumerate {
        #[arg(long)]
        h: usize,
    },
    /// Bias polynomial and related data for every class.
    BiasTable {
        #[arg(long)]
        h: usize,
    },
    /// Class count, bias-subset count and their ratio.
    Classify {
        #[arg(long)]
        h: usize,
    },
    /// Minimum feedback arc sets with witness orders.
    FasTable {
        #[arg(long)]
        h: usize,
    },
    /// Build a large tournament and write it to --out.
    Construct {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        /// Edge probability as a/b (tnp).
        #[arg(long)]
        p: Option<String>,
        /// Part count divisor (transversal).
        #[arg(long)]
        h: Option<usize>,
        /// Planted pattern: file or name (transversal).
        #[arg(long)]
        hstar: Option<String>,
        /// Family: file or comma-separated names (blowup).
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Pattern densities in a tournament file.
    Density {
        #[arg(long)]
        graph: PathBuf,
        /// T<h>, C3, a bit string (with --h), a file, or "all" (with --h).
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        h: Option<usize>,
        #[arg(long, value_enum)]
        mode: Option<ModeName>,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Margin parameter as a/b.
        #[arg(long)]
        beta: Option<String>,
    },
    /// Densities of F(h,x) (or the given patterns) against (1+beta) d(H).
    DominanceCheck {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long)]
        h: Option<usize>,
        /// Bias as a/b; selects the patterns in F(h,x) when --pattern is absent.
        #[arg(long)]
        x: Option<String>,
        #[arg(long, value_enum)]
        mode: Option<ModeName>,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        beta: Option<String>,
    },
    /// Run a saved experiment config.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}

fn default_cache_dir() -> PathBuf {
    PathBuf::from("tourlab-cache")
}

fn config_from_cli(cli: Cli) -> CliResult<ExperimentConfig> {
    let cache_dir = cli.cache_dir.unwrap_or_else(default_cache_dir);
    let mut cfg = match cli.command {
        Command::Run { config } => {
            let mut cfg = ExperimentConfig::load(&config)?;
            // explicit flags still win over the file
            if let Some(t) = cli.threads {
                cfg.threads = Some(t);
            }
            if let Some(f) = cli.format {
                cfg.format = f;
            }
            if let Some(o) = cli.out {
                cfg.out = Some(o);
            }
            cfg.allow_long |= cli.allow_long;
            return Ok(cfg.resolve());
        }
        Command::Enumerate { h } => with_h(CommandName::Enumerate, h, cache_dir),
        Command::BiasTable { h } => with_h(CommandName::BiasTable, h, cache_dir),
        Command::Classify { h } => with_h(CommandName::Classify, h, cache_dir),
        Command::FasTable { h } => with_h(CommandName::FasTable, h, cache_dir),
        Command::Construct { kind, n, p, h, hstar, family, seed } => {
            let mut c = ExperimentConfig::new(CommandName::Construct, cache_dir);
            c.kind = Some(kind);
            c.n = Some(n);
            c.p = p;
            c.h = h;
            c.hstar = hstar;
            c.family = family;
            c.seed = seed;
            c
        }
        Command::Density { graph, pattern, h, mode, samples, seed, beta } => {
            let mut c = ExperimentConfig::new(CommandName::Density, cache_dir);
            c.graph = Some(graph);
            c.pattern = Some(pattern);
            c.h = h;
            c.mode = mode;
            c.samples = samples;
            c.seed = seed;
            c.beta = beta;
            c
        }
        Command::DominanceCheck { graph, pattern, h, x, mode, samples, seed, beta } => {
            let mut c = ExperimentConfig::new(CommandName::DominanceCheck, cache_dir);
            c.graph = Some(graph);
            c.pattern = pattern;
            c.h = h;
            c.x = x;
            c.mode = mode;
            c.samples = samples;
            c.seed = seed;
            c.beta = beta;
            c
        }
    };
    cfg.threads = cli.threads;
    cfg.format = cli.format.unwrap_or_default();
    cfg.out = cli.out;
    cfg.allow_long = cli.allow_long;
    Ok(cfg.resolve())
}

fn with_h(command: CommandName, h: usize, cache_dir: PathBuf) -> ExperimentConfig {
    let mut c = ExperimentConfig::new(command, cache_dir);
    c.h = Some(h);
    c
}

/// What a command produced: a table, plus for some commands a file body
/// that belongs in `--out`.
pub struct Report {
    pub table: Table,
    pub artifact: Option<String>,
}

impl Report {
    fn table(table: Table) -> Self {
        Report { table, artifact: None }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.table.to_csv(),
            Format::Json => self.table.to_json(),
        }
    }
}

/// Entry point shared by the binary and the tests. Returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .try_init();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_BAD_ARGS } else { EXIT_OK };
        }
    };
    let save = cli.save_config.clone();
    let result = config_from_cli(cli).and_then(|cfg| {
        if let Some(path) = &save {
            cfg.save(path)?;
        }
        run_config(&cfg)
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.code
        }
    }
}

/// Execute a resolved config and write its outputs.
pub fn run_config(cfg: &ExperimentConfig) -> CliResult<()> {
    info!("config {}", cfg.to_json());
    let report = match cfg.threads {
        Some(0) => return Err(CliError::bad("--threads must be positive")),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::internal(e.to_string()))?
            .install(|| execute(cfg))?,
        None => execute(cfg)?,
    };
    let rendered = report.render(cfg.format);
    match (&report.artifact, &cfg.out) {
        (Some(body), Some(out)) => {
            write_output(out, body)?;
            write_stdout(&rendered)
        }
        (Some(_), None) if cfg.command == CommandName::Construct => Err(CliError::bad("construct needs --out")),
        (_, Some(out)) if report.artifact.is_none() => write_output(out, &rendered),
        _ => write_stdout(&rendered),
    }
}

fn write_stdout(text: &str) -> CliResult<()> {
    std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::internal(e.to_string()))
}

fn write_output(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::bad(format!("cannot write {}: {e}", path.display())))
}

fn read_input(path: &Path, what: &str) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::bad(format!("cannot read {what} {}: {e}", path.display())))
}

/// Run the command described by `cfg` and return its report.
pub fn execute(cfg: &ExperimentConfig) -> CliResult<Report> {
    match cfg.command {
        CommandName::Enumerate => cmd_enumerate(cfg),
        CommandName::BiasTable => cmd_bias_table(cfg),
        CommandName::Classify => cmd_classify(cfg),
        CommandName::FasTable => cmd_fas_table(cfg),
        CommandName::Construct => cmd_construct(cfg),
        CommandName::Density => cmd_density(cfg),
        CommandName::DominanceCheck => cmd_dominance_check(cfg),
    }
}

pub fn parse_rational(text: &str, what: &str) -> CliResult<Rational> {
    text.trim()
        .parse::<Rational>()
        .map_err(|e| CliError::bad(format!("{what} must be a rational a/b, got {text:?}: {e}")))
}

/// `a/b` with the denominator always written.
pub fn fraction(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn int(v: impl Into<i128>) -> Cell {
    Cell::Int(v.into())
}

fn big_int(v: &num_bigint::BigInt) -> Cell {
    match v.to_i128() {
        Some(v) => Cell::Int(v),
        None => Cell::text(v.to_string()),
    }
}

fn require<T: Clone>(v: &Option<T>, flag: &str) -> CliResult<T> {
    v.clone().ok_or_else(|| CliError::bad(format!("missing --{flag}")))
}

fn check_h(h: usize, allow_long: bool) -> CliResult<usize> {
    if h == 0 || h > MAX_H {
        return Err(Error::Unsupported(h).into());
    }
    if h >= LONG_H && !allow_long {
        return Err(CliError::guard(format!("h={h} is a long computation; rerun with --allow-long")));
    }
    Ok(h)
}

fn catalog(h: usize, cfg: &ExperimentConfig) -> CliResult<TournamentCatalog> {
    let h = check_h(h, cfg.allow_long)?;
    let (cat, outcome) = load_or_enumerate(h, &cfg.cache_dir)?;
    match outcome {
        CacheOutcome::Hit => info!("catalog h={h} read from {}", cfg.cache_dir.display()),
        CacheOutcome::Generated => info!("catalog h={h} generated into {}", cfg.cache_dir.display()),
        CacheOutcome::Regenerated(e) => warn!("catalog h={h} regenerated: {e}"),
    }
    Ok(cat)
}

fn cmd_enumerate(cfg: &ExperimentConfig) -> CliResult<Report> {
    let h = require(&cfg.h, "h")?;
    let cat = catalog(h, cfg)?;
    let mut t = Table::new(&["h", "classes", "labeled_mass"]);
    t.push(vec![int(h as i128), int(cat.len() as i128), int(cat.labeled_mass() as i128)]);
    Ok(Report { table: t, artifact: Some(cat.to_text()) })
}

fn bias_terms(b: &tourlab::ExactBias) -> String {
    b.poly().terms().map(|(e, c)| format!("{e}:{}", fraction(c))).collect::<Vec<_>>().join(" ")
}

fn cmd_bias_table(cfg: &ExperimentConfig) -> CliResult<Report> {
    let h = require(&cfg.h, "h")?;
    let cat = catalog(h, cfg)?;
    info!("classifying {} classes", cat.len());
    let records = classify_catalog(&cat)?;
    let mut t = Table::new(&["h", "canon", "aut", "d_num", "d_den", "fas", "in_Bh", "bias"]);
    for r in &records {
        t.push(vec![
            int(h as i128),
            Cell::text(r.form.to_bit_string()),
            int(r.aut),
            big_int(r.typical_density.numer()),
            big_int(r.typical_density.denom()),
            int(r.fas.a as i128),
            Cell::Bool(r.in_bh),
            Cell::text(bias_terms(&r.bias)),
        ]);
    }
    Ok(Report::table(t))
}

fn cmd_classify(cfg: &ExperimentConfig) -> CliResult<Report> {
    let h = require(&cfg.h, "h")?;
    let cat = catalog(h, cfg)?;
    info!("classifying {} classes", cat.len());
    let in_bh = tourlab::bias::count_bias_subset(&cat)?;
    let mut t = Table::new(&["h", "classes", "bias_subset", "ratio"]);
    t.push(vec![
        int(h as i128),
        int(cat.len() as i128),
        int(in_bh as i128),
        Cell::Float(in_bh as f64 / cat.len() as f64),
    ]);
    Ok(Report::table(t))
}

fn cmd_fas_table(cfg: &ExperimentConfig) -> CliResult<Report> {
    let h = require(&cfg.h, "h")?;
    let cat = catalog(h, cfg)?;
    let mut t = Table::new(&["h", "canon", "fas", "max_forward", "witness"]);
    for form in cat.items() {
        let r = min_fas(&form.tournament());
        let witness = r.witness_order.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ");
        t.push(vec![
            int(h as i128),
            Cell::text(form.to_bit_string()),
            int(r.a as i128),
            int(r.max_forward as i128),
            Cell::Text(witness),
        ]);
    }
    Ok(Report::table(t))
}

/// `T<h>`, `C3`, or a bit string (needs `h`).
fn named_pattern(name: &str, h: Option<usize>) -> CliResult<Tournament> {
    if name == "C3" {
        return Ok(Tournament::cyclic3());
    }
    if let Some(rest) = name.strip_prefix('T') {
        let k: usize = rest.parse().map_err(|_| CliError::bad(format!("unknown pattern {name:?}")))?;
        return Ok(Tournament::transitive(k)?);
    }
    if !name.is_empty() && name.chars().all(|c| c == '0' || c == '1') {
        let h = h.ok_or_else(|| CliError::bad(format!("bit-string pattern {name:?} needs --h")))?;
        return Ok(Tournament::parse(name, h)?);
    }
    Err(CliError::bad(format!("unknown pattern {name:?} (expected T<h>, C3, a bit string, a file or \"all\")")))
}

/// Patterns from a file, `all` (every class on `h` vertices), or a
/// comma-separated list of names.
fn resolve_patterns(spec: &str, h: Option<usize>, cfg: &ExperimentConfig) -> CliResult<Vec<Tournament>> {
    if spec == "all" {
        let h = h.ok_or_else(|| CliError::bad("pattern \"all\" needs --h"))?;
        return Ok(catalog(h, cfg)?.tournaments().collect());
    }
    let path = Path::new(spec);
    if path.is_file() {
        let text = read_input(path, "pattern file")?;
        let (_, list) = parse_tournament_list(&text, h)?;
        if list.is_empty() {
            return Err(CliError::bad(format!("pattern file {spec} is empty")));
        }
        return Ok(list);
    }
    spec.split(',').map(|name| named_pattern(name.trim(), h)).collect()
}

fn cmd_construct(cfg: &ExperimentConfig) -> CliResult<Report> {
    let kind = require(&cfg.kind, "kind")?;
    let n = require(&cfg.n, "n")?;
    let seed = Seed(cfg.seed.unwrap_or(0));
    let graph = match kind {
        Kind::Tnp => {
            let p = parse_rational(&require(&cfg.p, "p")?, "p")?;
            build_tnp(n, &p, seed)?
        }
        Kind::Transversal => {
            let h = require(&cfg.h, "h")?;
            let stars = resolve_patterns(&require(&cfg.hstar, "hstar")?, None, cfg)?;
            let [star] = stars.as_slice() else {
                return Err(CliError::bad("--hstar must name exactly one tournament"));
            };
            build_transversal(n, h, star, seed)?
        }
        Kind::Blowup => {
            let family = resolve_patterns(&require(&cfg.family, "family")?, None, cfg)?;
            let b = build_blowup(&family, n, seed)?;
            if !b.sufficiency_holds {
                info!("2r^2 < 2^h fails for r={}, h={}; the clique lower bound need not beat d(H)", b.r, family[0].h());
            }
            b.graph
        }
    };
    let prov = serde_json::to_string(graph.provenance()).expect("provenance serializes");
    let mut t = Table::new(&["kind", "n", "seed", "forward_pairs", "provenance"]);
    t.push(vec![
        Cell::text(graph.provenance().kind.clone()),
        int(n as i128),
        int(seed.0 as i128),
        int(graph.forward_pairs() as i128),
        Cell::Text(prov),
    ]);
    Ok(Report { table: t, artifact: Some(graph.to_text()) })
}

fn load_graph(cfg: &ExperimentConfig) -> CliResult<BigTournament> {
    let path = require(&cfg.graph, "graph")?;
    let text = read_input(&path, "graph file")?;
    Ok(BigTournament::parse(&text)?)
}

fn mode(cfg: &ExperimentConfig) -> Mode {
    match cfg.mode.unwrap_or(ModeName::Exact) {
        ModeName::Exact => Mode::Exact,
        ModeName::Mc => {
            Mode::MonteCarlo { samples: cfg.samples.unwrap_or(DEFAULT_SAMPLES), seed: Seed(cfg.seed.unwrap_or(0)) }
        }
    }
}

const DENSITY_COLUMNS: &[&str] = &[
    "pattern_canon",
    "n",
    "mode",
    "samples",
    "seed",
    "estimate_num",
    "estimate_den",
    "estimate",
    "stderr",
    "typical_num",
    "typical_den",
    "ratio",
    "beta",
    "margin",
    "satisfied",
];

fn density_table(reports: &[DensityReport]) -> Table {
    let mut t = Table::new(DENSITY_COLUMNS);
    for r in reports {
        let (mode, samples, seed) = match r.mode {
            Mode::Exact => ("exact", Cell::Empty, Cell::Empty),
            Mode::MonteCarlo { samples, seed } => ("mc", int(samples), int(seed.0)),
        };
        let (num, den, est, se) = match r.estimate {
            Estimate::Exact { count, total } => (int(count), int(total), Cell::Empty, Cell::Empty),
            Estimate::Sampled { .. } => {
                (Cell::Empty, Cell::Empty, Cell::Float(r.estimate.value()), Cell::Float(r.estimate.stderr()))
            }
        };
        let margin = match &r.margin {
            Margin::Exact(m) => Cell::Text(fraction(m)),
            Margin::Approx(v) => Cell::Float(*v),
        };
        t.push(vec![
            Cell::text(r.pattern.to_bit_string()),
            int(r.n as i128),
            Cell::text(mode),
            samples,
            seed,
            num,
            den,
            est,
            se,
            big_int(r.typical.numer()),
            big_int(r.typical.denom()),
            Cell::Float(r.ratio),
            Cell::Text(fraction(&r.beta)),
            margin,
            Cell::Bool(r.margin.satisfied()),
        ]);
    }
    t
}

fn beta(cfg: &ExperimentConfig) -> CliResult<Rational> {
    let b = parse_rational(cfg.beta.as_deref().unwrap_or("0"), "beta")?;
    if b < Rational::zero() {
        return Err(CliError::bad("beta must be nonnegative"));
    }
    Ok(b)
}

fn cmd_density(cfg: &ExperimentConfig) -> CliResult<Report> {
    let patterns = resolve_patterns(&require(&cfg.pattern, "pattern")?, cfg.h, cfg)?;
    let beta = beta(cfg)?;
    let g = load_graph(cfg)?;
    let reports = dominance_report(&patterns, &g, &beta, mode(cfg))?;
    Ok(Report::table(density_table(&reports)))
}

fn cmd_dominance_check(cfg: &ExperimentConfig) -> CliResult<Report> {
    let beta = beta(cfg)?;
    let patterns = match (&cfg.pattern, &cfg.x) {
        (Some(spec), _) => resolve_patterns(spec, cfg.h, cfg)?,
        (None, Some(x)) => {
            let x = parse_rational(x, "x")?;
            let h = require(&cfg.h, "h")?;
            let mut members = Vec::new();
            for t in catalog(h, cfg)?.tournaments() {
                if in_f(&t, &x)? {
                    members.push(t);
                }
            }
            info!("F({h},{}) has {} members", fraction(&x), members.len());
            if let Some(m) = expected_margin(&members, &x)? {
                info!("min B(H,x)/d(H) - 1 over F = {} (~{:.6})", fraction(&m), m.to_f64().unwrap_or(f64::NAN));
            }
            members
        }
        (None, None) => return Err(CliError::bad("dominance-check needs --pattern or --x with --h")),
    };
    let g = load_graph(cfg)?;
    let reports = dominance_report(&patterns, &g, &beta, mode(cfg))?;
    let ok = reports.iter().filter(|r| r.margin.satisfied()).count();
    info!("{ok} of {} patterns satisfy d_H(G) >= (1+{}) d(H)", reports.len(), fraction(&beta));
    Ok(Report::table(density_table(&reports)))
}

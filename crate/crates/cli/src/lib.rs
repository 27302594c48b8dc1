//! Command-line front end for `mdperm`.
//!
//! [`run`] parses an argument vector, executes one subcommand and returns the
//! exit code together with whatever should go to stdout and stderr. The
//! binary is a thin wrapper around it.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mdperm::enumerate::{EnumError, EnumerationScope, DEFAULT_MAX_STATES};
use mdperm::LevelKind;
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{Map, Value};

mod commands;
pub mod report;

pub use report::{Format, Item, Report, Route, Status};

/// Environment variable naming the default b-file directory.
pub const BFILE_DIR_ENV: &str = "MDPERM_BFILE_DIR";

#[derive(Debug, Parser)]
#[command(name = "mdperm", version, about = "Levels, patterns and counting formulas for multi-dimensional permutations")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Largest state space any exhaustive route may visit.
    #[arg(long, global = true, value_parser = parse_big, default_value_t = BigUint::from(DEFAULT_MAX_STATES))]
    pub max_states: BigUint,

    /// Level function; each subcommand documents its default.
    #[arg(long, global = true, value_enum)]
    pub kind: Option<KindArg>,

    #[command(subcommand)]
    pub command: Command,
}

fn parse_big(s: &str) -> Result<BigUint, String> {
    s.replace('_', "").parse().map_err(|_| format!("`{s}` is not a non-negative integer"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KindArg {
    Max,
    Sum,
}

impl From<KindArg> for LevelKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Max => LevelKind::MaxEntry,
            KindArg::Sum => LevelKind::EntrySum,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a counting sequence.
    Seq(SeqArgs),
    /// Print a triangle or level table.
    Table(TableArgs),
    /// Run a verification suite; exits 1 if any check fails.
    Verify(VerifyArgs),
    /// Count (and optionally list) permutations satisfying a predicate.
    Enumerate(EnumerateArgs),
    /// Build a witness permutation and report its levels.
    Construct(ConstructArgs),
    /// Compare a local OEIS b-file with the mapped generator.
    OeisCheck(OeisArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeqName {
    /// Weakly increasing (3,n)-permutations (default kind max).
    Springer,
    /// Unimodal (3,n)-permutations (default kind max).
    Unimodal,
    /// Hoe (d,n)-permutations; --d, default 3 (default kind max).
    Hoe,
    /// Column k of the repeated-level triangle; PARAM is k.
    RColumn,
    /// c-bounded (3,n)-permutations; PARAM is c (kind sum).
    CBounded,
    /// Total (d-1)-plateaux over all (d,n)-permutations; --d, default 3.
    TotalPlateaux,
    /// Total ascents over all (3,n)-permutations.
    TotalAscents,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RouteArg {
    Formula,
    Series,
    Brute,
}

#[derive(Debug, Args, Serialize)]
pub struct SeqArgs {
    pub name: SeqName,
    /// k for r-column, c for c-bounded.
    pub param: Option<usize>,
    /// First index (defaults to the start of the sequence's domain).
    #[arg(long)]
    pub n_min: Option<usize>,
    #[arg(long, default_value_t = 10)]
    pub n_max: usize,
    /// Dimension for hoe and total-plateaux.
    #[arg(long)]
    pub d: Option<usize>,
    /// Count canonical permutations only (c-bounded).
    #[arg(long)]
    pub canonical: bool,
    #[arg(long, value_enum, default_value_t = RouteArg::Formula)]
    pub route: RouteArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableName {
    /// R(n,k): canonical (3,n)-permutations with k repeated levels.
    R,
    /// P(n,l): permutations of [n] with l peaks.
    Peaks,
    /// Distinct elements of S_n^d on each levSum level; needs --d and --n.
    ELevels,
}

#[derive(Debug, Args, Serialize)]
pub struct TableArgs {
    pub name: TableName,
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Defaults: formula for r and e-levels, series for peaks.
    #[arg(long, value_enum)]
    pub route: Option<RouteArg>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    RTriangle,
    WiIdentities,
    PdeResidual,
    RealRooted,
    Interlacing,
    MinimalSets,
    ComplementBijection,
    ElementUniformity,
    PlateauTotals,
    Shiftform,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    pub suite: Suite,
    /// Largest size checked (suite-specific default).
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Largest size also checked by brute force (suite-specific default).
    #[arg(long)]
    pub brute_max: Option<usize>,
    /// Restrict level-set suites to one dimension.
    #[arg(long)]
    pub d: Option<usize>,
    /// Restrict level-set and shift-form suites to one length.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Args, Serialize)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub n: usize,
    /// Only permutations whose first stored row is the identity.
    #[arg(long)]
    pub canonical: bool,
    /// weakly-increasing, unimodal, hoe, complete-plateau, avoids:<p>,
    /// contains:<p>, minimal, maximal or minimax (patterns like 212 or c:21).
    #[arg(long)]
    pub filter: Option<String>,
    /// Also print the matching permutations.
    #[arg(long)]
    pub list: bool,
    /// Cap on listed permutations.
    #[arg(long, default_value_t = 50)]
    pub limit: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Witness {
    /// Minimal (d,n)-permutation under levSum; needs --d and --n.
    Minimal,
    /// Shift-form permutation; needs --n, --shifts and --last.
    Shiftform,
}

#[derive(Debug, Args, Serialize)]
pub struct ConstructArgs {
    pub what: Witness,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Comma-separated shifts s_2..s_d.
    #[arg(long, value_delimiter = ',')]
    pub shifts: Vec<usize>,
    /// Comma-separated last-column entries.
    #[arg(long, value_delimiter = ',')]
    pub last: Vec<usize>,
}

#[derive(Debug, Args, Serialize)]
pub struct OeisArgs {
    /// Sequence id such as A001586.
    #[arg(long, required_unless_present = "all")]
    pub id: Option<String>,
    /// b-file path; defaults to $MDPERM_BFILE_DIR/bNNNNNN.txt.
    #[arg(long, conflicts_with = "all")]
    pub bfile: Option<PathBuf>,
    /// Check every registered sequence with a b-file in the directory.
    #[arg(long)]
    pub all: bool,
    /// b-file directory (overrides the environment variable).
    #[arg(long)]
    pub dir: Option<PathBuf>,
    /// Terms to compare (registry default when omitted).
    #[arg(long)]
    pub limit: Option<usize>,
}

/// Problems that stop a command before it can produce a report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

macro_rules! usage_from {
    ($($t:ty),*) => {$(
        impl From<$t> for UsageError {
            fn from(e: $t) -> Self {
                UsageError(e.to_string())
            }
        }
    )*};
}
usage_from!(
    mdperm::FormulaError,
    mdperm::oeis::OeisError,
    mdperm::PatternError,
    mdperm::PermError,
    mdperm::PolyError,
    mdperm::SeriesError
);

impl From<EnumError> for UsageError {
    fn from(e: EnumError) -> Self {
        match e {
            EnumError::StateSpaceTooLarge { .. } => UsageError(format!("{e}; raise --max-states to allow it")),
            e => UsageError(e.to_string()),
        }
    }
}

pub fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

/// Shared settings passed to every subcommand.
#[derive(Debug, Clone)]
pub struct Context {
    pub max_states: BigUint,
    pub kind: Option<KindArg>,
    pub bfile_dir: Option<PathBuf>,
}

impl Context {
    pub fn scope(&self, d: usize, n: usize) -> Result<EnumerationScope, UsageError> {
        self.guard(EnumerationScope::all(d, n))
    }

    pub fn canonical_scope(&self, d: usize, n: usize) -> Result<EnumerationScope, UsageError> {
        self.guard(EnumerationScope::canonical(d, n))
    }

    fn guard(&self, scope: EnumerationScope) -> Result<EnumerationScope, UsageError> {
        let scope = scope.with_max_states(self.max_states.clone());
        scope.check()?;
        Ok(scope)
    }

    pub fn kind_or(&self, default: LevelKind) -> LevelKind {
        self.kind.map_or(default, Into::into)
    }
}

/// What the process should do once a command has run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (program name first) and runs the command.
///
/// Exit code 0 on success, 1 when a verification or reconciliation fails,
/// 2 on usage errors, which name the offending flag.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let ctx = Context {
        max_states: cli.max_states.clone(),
        kind: cli.kind,
        bfile_dir: std::env::var_os(BFILE_DIR_ENV).map(PathBuf::from),
    };
    execute(&cli, &ctx)
}

fn params_of(args: &impl Serialize, cli: &Cli) -> Map<String, Value> {
    let mut map = match serde_json::to_value(args).expect("arguments serialize") {
        Value::Object(m) => m,
        _ => Map::new(),
    };
    map.retain(|_, v| !v.is_null() && *v != Value::Array(Vec::new()));
    map.insert("max_states".into(), Value::String(cli.max_states.to_string()));
    if let Some(k) = cli.kind {
        map.insert("kind".into(), serde_json::to_value(k).expect("kind serializes"));
    }
    map
}

/// Runs an already parsed command line.
pub fn execute(cli: &Cli, ctx: &Context) -> Outcome {
    let start = Instant::now();
    let (name, params, result) = match &cli.command {
        Command::Seq(a) => ("seq", params_of(a, cli), commands::seq(a, ctx)),
        Command::Table(a) => ("table", params_of(a, cli), commands::table(a, ctx)),
        Command::Verify(a) => ("verify", params_of(a, cli), commands::verify(a, ctx)),
        Command::Enumerate(a) => ("enumerate", params_of(a, cli), commands::enumerate(a, ctx)),
        Command::Construct(a) => ("construct", params_of(a, cli), commands::construct(a, ctx)),
        Command::OeisCheck(a) => ("oeis-check", params_of(a, cli), commands::oeis_check(a, ctx)),
    };
    match result {
        Ok(body) => {
            let mut report = Report::new(name, params);
            report.items = body.items;
            report.summary = body.summary;
            for (k, v) in body.extra_params {
                report.params.insert(k, v);
            }
            report.elapsed_ms = start.elapsed().as_millis() as u64;
            let code = if report.failures() > 0 { 1 } else { 0 };
            Outcome { code, stdout: report.render(cli.format), stderr: String::new() }
        }
        Err(UsageError(msg)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}

/// Items produced by a subcommand before the report envelope is added.
#[derive(Debug, Default)]
pub struct Body {
    pub items: Vec<Item>,
    pub summary: Option<String>,
    pub extra_params: Vec<(String, Value)>,
}

//! The `levy` command line: `walk`, `search`, `sweep`, `verify` and `fit`.
//!
//! Every flag may also come from a `--config` file (JSON, or TOML when the
//! file ends in `.toml`). Top-level keys set global flags and a table named
//! after the subcommand sets its flags; keys are flag names without dashes
//! (`path_mode` or `path-mode`). Flags given on the command line win.
//!
//! Exit codes: 0 on success, 1 on a configuration or runtime error, 2 when a
//! verification suite fails.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::engine::{flight_trajectory, walk_trajectory, write_trajectory_csv, LevyFlight, LevyWalk, PathMode};
use crate::error::{Error, Result};
use crate::experiments::{
    fit_series, fmt_real, read_sweep_csv, summarize, sweep, write_sweep_csv, BudgetRule, CellSummary, ProcessKind,
    SeriesFit, SweepGrid, SweepRow,
};
use crate::lattice::LatticePoint;
use crate::oracles::{run_suite, Suite, SuiteOptions};
use crate::powerlaw::{JumpLaw, ALPHA_FLOOR};
use crate::search::{run_parallel, SearchConfig, SearchRecord, Strategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyKind {
    Fixed,
    Optimal,
    Uniform,
}

#[derive(Debug, Parser)]
#[command(name = "levy", version, about = "Lévy walks and flights on the square lattice")]
pub struct Cli {
    /// Master seed. Output is a deterministic function of the seed and flags [default: 0]
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format (the default depends on the subcommand).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads. Output does not depend on it.
    #[arg(long, global = true, env = "LEVY_THREADS")]
    pub threads: Option<usize>,
    /// JSON or TOML file with flag values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Trace one walk or flight from the origin (CSV `step,x,y,phase_id`).
    Walk(WalkArgs),
    /// Run one parallel search and report the hitting time.
    Search(SearchArgs),
    /// Estimate hit probabilities over a grid of cells.
    Sweep(SweepArgs),
    /// Run the exact oracle checks.
    Verify(VerifyArgs),
    /// Summarize a sweep CSV and fit p_hat against ℓ.
    Fit(FitArgs),
}

#[derive(Debug, Clone, Args)]
pub struct WalkArgs {
    /// Tail exponent of the jump law.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Number of lattice steps (jumps for a flight).
    #[arg(long)]
    pub steps: Option<u64>,
    /// Largest allowed jump length.
    #[arg(long)]
    pub cap: Option<u64>,
    #[arg(long, value_enum)]
    pub process: Option<ProcessKind>,
    #[arg(long, value_enum)]
    pub path_mode: Option<PathMode>,
}

#[derive(Debug, Clone, Args)]
pub struct StrategyArgs {
    /// Exponent rule [default: fixed]
    #[arg(long, value_enum)]
    pub strategy: Option<StrategyKind>,
    /// Exponent of the fixed strategy.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Coefficient of the ln ln ℓ / ln ℓ correction (optimal strategy) [default: 5]
    #[arg(long)]
    pub coeff: Option<f64>,
    /// Lower end of the exponent range: clamp for optimal, interval for uniform.
    #[arg(long)]
    pub lo: Option<f64>,
    /// Upper end of the exponent range.
    #[arg(long)]
    pub hi: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    /// Number of walkers.
    #[arg(long)]
    pub k: Option<usize>,
    /// Target at (ℓ, 0). Takes precedence over --target-x/--target-y.
    #[arg(long)]
    pub ell: Option<u64>,
    #[arg(long, allow_negative_numbers = true)]
    pub target_x: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub target_y: Option<i64>,
    /// Step budget per walker.
    #[arg(long)]
    pub budget: Option<u64>,
    #[command(flatten)]
    pub strategy: StrategyArgs,
    #[arg(long, value_enum)]
    pub path_mode: Option<PathMode>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Exponents (fixed strategy), comma separated.
    #[arg(long, value_delimiter = ',')]
    pub alphas: Option<Vec<f64>>,
    /// Target distances, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub ells: Option<Vec<u64>>,
    /// Walker counts [default: 1]
    #[arg(long, value_delimiter = ',')]
    pub ks: Option<Vec<usize>>,
    /// Explicit budgets; each one is a grid axis value.
    #[arg(long, value_delimiter = ',')]
    pub budgets: Option<Vec<u64>>,
    /// Budget C·ℓ^(α-1) per cell when --budgets is absent [default: 10]
    #[arg(long)]
    pub budget_c: Option<f64>,
    /// Trials per cell [default: 100]
    #[arg(long)]
    pub trials: Option<u64>,
    #[command(flatten)]
    pub strategy: StrategyArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Option<Suite>,
    /// Largest distance for the layer-probability check [default: 12]
    #[arg(long)]
    pub dmax: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct FitArgs {
    /// Sweep CSV to read (stdin when absent).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Ignore the alpha column when grouping (for non-fixed strategies).
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub pool_alpha: Option<bool>,
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match parse(&args) {
        Ok(cli) => cli,
        Err(ParseFailure::Clap(e)) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
        Err(ParseFailure::Other(e)) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    match execute(&cli) {
        Ok(Status::Ok) => 0,
        Ok(Status::VerificationFailed) => 2,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

enum ParseFailure {
    Clap(clap::Error),
    Other(Error),
}

impl From<clap::Error> for ParseFailure {
    fn from(e: clap::Error) -> Self {
        ParseFailure::Clap(e)
    }
}

fn parse(args: &[OsString]) -> Result<Cli, ParseFailure> {
    let matches = Cli::command().try_get_matches_from(args)?;
    let cli = Cli::from_arg_matches(&matches)?;
    let Some(path) = &cli.config else {
        return Ok(cli);
    };
    let sub = matches.subcommand_name().unwrap_or_default();
    let program = args.first().cloned().unwrap_or_else(|| "levy".into());
    let file_args = config_args(path, sub).map_err(ParseFailure::Other)?;
    let file_matches = Cli::command()
        .try_get_matches_from(std::iter::once(program).chain(file_args.into_iter().map(OsString::from)))
        .map_err(|e| ParseFailure::Other(Error::Config(format!("in {}: {}", path.display(), e.render()))))?;
    let mut merged = Cli::from_arg_matches(&file_matches)?;
    merged.update_from_arg_matches(&matches)?;
    Ok(merged)
}

/// Turns a config file into the argument list `<sub> --flag value ...`.
fn config_args(path: &Path, sub: &str) -> Result<Vec<String>> {
    let text = fs::read_to_string(path)?;
    let is_toml = path.extension().is_some_and(|e| e == "toml");
    let value: serde_json::Value = if is_toml {
        let t: toml::Table = toml::from_str(&text).map_err(|e| Error::Config(format!("--config: {e}")))?;
        serde_json::to_value(t)?
    } else {
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("--config: {e}")))?
    };
    let serde_json::Value::Object(top) = value else {
        return Err(Error::Config("--config: expected a table at the top level".into()));
    };
    let mut global = Vec::new();
    let mut local = Vec::new();
    for (key, v) in &top {
        match v {
            serde_json::Value::Object(table) if key == sub => {
                for (k, v) in table {
                    push_flag(&mut local, k, v)?;
                }
            }
            // Sections for other subcommands.
            serde_json::Value::Object(_) => {}
            _ if key == "config" => return Err(Error::Config("--config: nested config files are not supported".into())),
            _ => push_flag(&mut global, key, v)?,
        }
    }
    let mut out = vec![sub.to_string()];
    out.extend(global);
    out.extend(local);
    Ok(out)
}

fn push_flag(out: &mut Vec<String>, key: &str, v: &serde_json::Value) -> Result<()> {
    use serde_json::Value as V;
    let scalar = |v: &V| -> Result<String> {
        match v {
            V::String(s) => Ok(s.clone()),
            V::Number(n) => Ok(n.to_string()),
            V::Bool(b) => Ok(b.to_string()),
            _ => Err(Error::Config(format!("--config: unsupported value for `{key}`"))),
        }
    };
    let text = match v {
        V::Array(items) => items.iter().map(scalar).collect::<Result<Vec<_>>>()?.join(","),
        v => scalar(v)?,
    };
    out.push(format!("--{}", key.replace('_', "-")));
    out.push(text);
    Ok(())
}

/// How a successful run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    VerificationFailed,
}

/// Runs a parsed command, writing its output to `--out` or stdout.
pub fn execute(cli: &Cli) -> Result<Status> {
    let threads = match cli.threads {
        Some(0) => return Err(Error::Config("--threads must be at least 1".into())),
        t => t,
    };
    let run = || -> Result<(Vec<u8>, Status)> {
        let mut buf = Vec::new();
        let status = dispatch(cli, &mut buf)?;
        Ok((buf, status))
    };
    let (buf, status) = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(format!("--threads: {e}")))?
            .install(run)?,
        None => run()?,
    };
    match &cli.out {
        Some(path) => fs::write(path, &buf)?,
        None => io::stdout().lock().write_all(&buf)?,
    }
    Ok(status)
}

fn dispatch(cli: &Cli, out: &mut Vec<u8>) -> Result<Status> {
    let seed = cli.seed.unwrap_or(0);
    match &cli.command {
        Command::Walk(a) => walk(a, seed, cli.format.unwrap_or(Format::Csv), out),
        Command::Search(a) => search(a, seed, cli.format.unwrap_or(Format::Json), out),
        Command::Sweep(a) => run_sweep(a, seed, cli.format.unwrap_or(Format::Csv), out),
        Command::Verify(a) => verify(a, seed, cli.format.unwrap_or(Format::Json), out),
        Command::Fit(a) => fit(a, cli.format.unwrap_or(Format::Json), out),
    }
}

fn required<T: Copy>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| Error::Config(format!("missing required flag {flag}")))
}

fn check_alpha(alpha: f64, flag: &str) -> Result<f64> {
    if alpha.is_finite() && alpha >= ALPHA_FLOOR {
        Ok(alpha)
    } else {
        Err(Error::Config(format!("{flag} must be a finite number >= {ALPHA_FLOOR}, got {alpha}")))
    }
}

fn write_json<T: Serialize>(out: &mut Vec<u8>, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    out.push(b'\n');
    Ok(())
}

fn walk(a: &WalkArgs, seed: u64, format: Format, out: &mut Vec<u8>) -> Result<Status> {
    let alpha = check_alpha(required(a.alpha, "--alpha")?, "--alpha")?;
    let steps = required(a.steps, "--steps")?;
    if a.cap == Some(0) {
        return Err(Error::Config("--cap must be at least 1".into()));
    }
    let law = JumpLaw::new(alpha, a.cap)?;
    let rows = match a.process.unwrap_or_default() {
        ProcessKind::Walk => {
            let mut w = LevyWalk::from_seed(&law, seed).with_path_mode(a.path_mode.unwrap_or_default());
            walk_trajectory(&mut w, steps)
        }
        ProcessKind::Flight => flight_trajectory(&mut LevyFlight::from_seed(&law, seed), steps),
    };
    match format {
        Format::Csv => write_trajectory_csv(out, &rows)?,
        Format::Json => write_json(out, &rows)?,
    }
    Ok(Status::Ok)
}

fn strategy_from(a: &StrategyArgs) -> Result<Strategy> {
    let kind = a.strategy.unwrap_or(StrategyKind::Fixed);
    let s = match kind {
        StrategyKind::Fixed => Strategy::fixed(check_alpha(required(a.alpha, "--alpha")?, "--alpha")?),
        StrategyKind::Optimal => {
            let Strategy::Optimal { coeff, clamp } = Strategy::optimal() else { unreachable!() };
            Strategy::Optimal { coeff: a.coeff.unwrap_or(coeff), clamp: (a.lo.unwrap_or(clamp.0), a.hi.unwrap_or(clamp.1)) }
        }
        StrategyKind::Uniform => {
            let Strategy::UniformRandom { lo, hi } = Strategy::uniform() else { unreachable!() };
            Strategy::UniformRandom { lo: a.lo.unwrap_or(lo), hi: a.hi.unwrap_or(hi) }
        }
    };
    s.validate().map_err(|_| Error::Config(format!("--strategy {}: invalid parameters (check --lo/--hi/--coeff)", s.label())))?;
    Ok(s)
}

fn search(a: &SearchArgs, seed: u64, format: Format, out: &mut Vec<u8>) -> Result<Status> {
    let k = required(a.k, "--k")?;
    if k == 0 {
        return Err(Error::Config("--k must be at least 1".into()));
    }
    let budget = required(a.budget, "--budget")?;
    let target = match (a.ell, a.target_x, a.target_y) {
        (Some(ell), tx, ty) => {
            if tx.is_some() || ty.is_some() {
                eprintln!("warning: --ell given, ignoring --target-x/--target-y");
            }
            LatticePoint::new(ell as i64, 0)
        }
        (None, None, None) => return Err(Error::Config("missing target: give --ell or --target-x/--target-y".into())),
        (None, tx, ty) => LatticePoint::new(tx.unwrap_or(0), ty.unwrap_or(0)),
    };
    let strategy = strategy_from(&a.strategy)?;
    let mut config = SearchConfig::new(k, target, budget, seed, strategy);
    config.path_mode = a.path_mode.unwrap_or_default();
    let outcome = run_parallel(&config)?;
    let record = SearchRecord::new(&config, &outcome);
    match format {
        Format::Json => write_json(out, &record)?,
        Format::Csv => {
            writeln!(out, "hit_step,winner,k,strategy,seed,target_x,target_y,budget")?;
            writeln!(
                out,
                "{},{},{},\"{}\",{},{},{},{}",
                record.hit_step.map(|t| t.to_string()).unwrap_or_default(),
                record.winner.map(|w| w.to_string()).unwrap_or_default(),
                record.k,
                record.strategy.label(),
                record.seed,
                record.target.x,
                record.target.y,
                record.budget
            )?;
        }
    }
    Ok(Status::Ok)
}

#[derive(Serialize)]
struct SweepSummary {
    strategy: Strategy,
    seed: u64,
    trials: u64,
    cells: Vec<CellSummary>,
    fits: Vec<SeriesFit>,
}

fn run_sweep(a: &SweepArgs, seed: u64, format: Format, out: &mut Vec<u8>) -> Result<Status> {
    let strategy = match a.strategy.strategy.unwrap_or(StrategyKind::Fixed) {
        // Each cell substitutes its own exponent from --alphas.
        StrategyKind::Fixed => Strategy::fixed(2.0),
        _ => strategy_from(&a.strategy)?,
    };
    let alphas = match (&a.alphas, a.strategy.alpha) {
        (Some(v), _) => v.clone(),
        (None, Some(x)) => vec![x],
        (None, None) if matches!(strategy, Strategy::Fixed { .. }) => {
            return Err(Error::Config("missing required flag --alphas".into()))
        }
        // Only the budget rule reads it.
        (None, None) => vec![2.5],
    };
    for &x in &alphas {
        check_alpha(x, "--alphas")?;
    }
    let ells = a.ells.clone().ok_or_else(|| Error::Config("missing required flag --ells".into()))?;
    if ells.is_empty() {
        return Err(Error::Config("--ells must not be empty".into()));
    }
    let ks = a.ks.clone().unwrap_or_else(|| vec![1]);
    if ks.is_empty() || ks.contains(&0) {
        return Err(Error::Config("--ks must be non-empty and positive".into()));
    }
    let budgets = match (&a.budgets, a.budget_c) {
        (Some(_), Some(_)) => return Err(Error::Config("--budgets and --budget-c are mutually exclusive".into())),
        (Some(b), None) if b.is_empty() || b.contains(&0) => {
            return Err(Error::Config("--budgets must be non-empty and positive".into()))
        }
        (Some(b), None) => BudgetRule::List(b.clone()),
        (None, Some(c)) if !(c > 0.0) => return Err(Error::Config("--budget-c must be positive".into())),
        (None, Some(c)) => BudgetRule::Scaled(c),
        (None, None) => BudgetRule::default(),
    };
    let trials = a.trials.unwrap_or(100);
    if trials == 0 {
        return Err(Error::Config("--trials must be at least 1".into()));
    }
    let grid = SweepGrid { alphas, ells, ks, budgets };
    let rows = sweep(&grid, &strategy, trials, seed)?;
    match format {
        Format::Csv => write_sweep_csv(out, &rows)?,
        Format::Json => {
            let parsed: Vec<SweepRow> = rows.iter().map(SweepRow::from).collect();
            let cells = summarize(&parsed, !matches!(strategy, Strategy::Fixed { .. }));
            let fits = fit_series(&cells);
            write_json(out, &SweepSummary { strategy, seed, trials, cells, fits })?;
        }
    }
    Ok(Status::Ok)
}

fn verify(a: &VerifyArgs, seed: u64, format: Format, out: &mut Vec<u8>) -> Result<Status> {
    let d_max = a.dmax.unwrap_or(SuiteOptions::default().d_max);
    if !(2..=24).contains(&d_max) {
        return Err(Error::Config(format!("--dmax must be in 2..=24, got {d_max}")));
    }
    let report = run_suite(a.suite.unwrap_or(Suite::All), &SuiteOptions { d_max, seed })?;
    match format {
        Format::Json => write_json(out, &report)?,
        Format::Csv => {
            writeln!(out, "suite,passed")?;
            for s in &report.suites {
                writeln!(out, "{},{}", s.name, s.passed)?;
            }
        }
    }
    Ok(if report.passed { Status::Ok } else { Status::VerificationFailed })
}

#[derive(Serialize)]
struct FitReport {
    cells: Vec<CellSummary>,
    fits: Vec<SeriesFit>,
}

fn fit(a: &FitArgs, format: Format, out: &mut Vec<u8>) -> Result<Status> {
    let rows = match &a.input {
        Some(p) => read_sweep_csv(fs::File::open(p)?)?,
        None => read_sweep_csv(io::stdin().lock())?,
    };
    let cells = summarize(&rows, a.pool_alpha.unwrap_or(false));
    let fits = fit_series(&cells);
    match format {
        Format::Json => write_json(out, &FitReport { cells, fits })?,
        Format::Csv => {
            writeln!(out, "alpha,k,budget,points,slope,intercept,r2,reference_slope")?;
            for f in &fits {
                let opt = |x: Option<f64>| x.map(fmt_real).unwrap_or_default();
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    opt(f.alpha),
                    f.k,
                    f.budget.map(|b| b.to_string()).unwrap_or_default(),
                    f.points.len(),
                    opt(f.fit.map(|x| x.slope)),
                    opt(f.fit.map(|x| x.intercept)),
                    opt(f.fit.map(|x| x.r2)),
                    opt(f.reference_slope)
                )?;
            }
        }
    }
    Ok(Status::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_ok(args: &[&str]) -> Cli {
        let args: Vec<OsString> = args.iter().map(OsString::from).collect();
        match parse(&args) {
            Ok(c) => c,
            Err(_) => panic!("parse failed for {args:?}"),
        }
    }

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn global_flags_after_subcommand() {
        let cli = parse_ok(&["levy", "walk", "--alpha", "2.5", "--steps", "3", "--seed", "7"]);
        assert_eq!(cli.seed, Some(7));
    }

    #[test]
    fn config_file_is_overridden_by_flags() {
        let dir = std::env::temp_dir().join(format!("levy-cli-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("c.toml");
        fs::write(&path, "seed = 3\n[walk]\nalpha = 2.5\nsteps = 10\npath_mode = \"lowest\"\n[search]\nk = 9\n").unwrap();
        let p = path.to_str().unwrap();
        let cli = parse_ok(&["levy", "walk", "--config", p, "--steps", "20"]);
        assert_eq!(cli.seed, Some(3));
        let Command::Walk(w) = &cli.command else { panic!() };
        assert_eq!((w.alpha, w.steps, w.path_mode), (Some(2.5), Some(20), Some(PathMode::Lowest)));
        let cli = parse_ok(&["levy", "--seed", "5", "walk", "--config", p]);
        assert_eq!(cli.seed, Some(5));

        let json = dir.join("c.json");
        fs::write(&json, r#"{"sweep": {"alphas": [2.2, 2.8], "ells": [4, 8]}}"#).unwrap();
        let cli = parse_ok(&["levy", "sweep", "--config", json.to_str().unwrap()]);
        let Command::Sweep(s) = &cli.command else { panic!() };
        assert_eq!(s.alphas, Some(vec![2.2, 2.8]));
        assert_eq!(s.ells, Some(vec![4, 8]));

        fs::write(&json, r#"{"walk": {"bogus": 1}}"#).unwrap();
        let args: Vec<OsString> = ["levy", "walk", "--config", json.to_str().unwrap()].map(OsString::from).to_vec();
        assert!(parse(&args).is_err());
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn exit_codes() {
        assert_eq!(main_with_args(["levy", "walk", "--alpha", "2.5", "--steps", "2", "--bogus"]), 1);
        assert_eq!(main_with_args(["levy", "walk", "--steps", "2"]), 1);
        assert_eq!(main_with_args(["levy", "walk", "--alpha", "0.5", "--steps", "2"]), 1);
        assert_eq!(main_with_args(["levy", "search", "--k", "2", "--budget", "5"]), 1);
        assert_eq!(main_with_args(["levy", "--threads", "0", "verify", "--suite", "normalization"]), 1);
    }

    #[test]
    fn search_origin_target() {
        let cli = parse_ok(&["levy", "search", "--k", "4", "--ell", "0", "--budget", "10", "--alpha", "2.5"]);
        let mut out = Vec::new();
        dispatch(&cli, &mut out).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
        assert_eq!(v["hit_step"], 0);
        assert_eq!(v["winner"], 0);
    }

    #[test]
    fn ell_wins_over_explicit_target() {
        let cli = parse_ok(&[
            "levy", "search", "--k", "1", "--ell", "3", "--target-x", "-5", "--target-y", "1", "--budget", "1", "--alpha", "2.5",
        ]);
        let mut out = Vec::new();
        dispatch(&cli, &mut out).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
        assert_eq!(v["target"]["x"], 3);
        assert_eq!(v["target"]["y"], 0);
    }
}

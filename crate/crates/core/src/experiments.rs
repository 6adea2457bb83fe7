//! Monte Carlo hitting-probability estimates, parameter sweeps and
//! power-law fits.
//!
//! Trial `j` of an estimate seeded with `s` uses master seed
//! `derive_key(s, [j])`, independent of the budget, so estimates at nested
//! budgets share trials and are monotone.

use std::io::{Read, Write};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{JumpProcess, LevyFlight, LevyWalk};
use crate::error::{domain, Error, Result};
use crate::lattice::LatticePoint;
use crate::powerlaw::{JumpLaw, ALPHA_FLOOR};
use crate::rng;
use crate::search::{run_parallel_with, walker_seed, LawCache, SearchConfig, Strategy};

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

/// Default constant `C` in budgets `C · ℓ^{α-1}`.
pub const DEFAULT_BUDGET_C: f64 = 10.0;

/// Where the target sits at L1 distance `ℓ` from the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Placement {
    /// `(ℓ, 0)`.
    #[default]
    East,
    /// Trial `j` uses direction `j mod 8` of E, NE, N, NW, W, SW, S, SE.
    Compass8,
}

impl Placement {
    pub fn target(&self, ell: u64, trial: u64) -> LatticePoint {
        let l = ell as i64;
        let (a, b) = (l - l / 2, l / 2);
        match self {
            Placement::East => LatticePoint::new(l, 0),
            Placement::Compass8 => match trial % 8 {
                0 => LatticePoint::new(l, 0),
                1 => LatticePoint::new(a, b),
                2 => LatticePoint::new(0, l),
                3 => LatticePoint::new(-b, a),
                4 => LatticePoint::new(-l, 0),
                5 => LatticePoint::new(-a, -b),
                6 => LatticePoint::new(0, -l),
                _ => LatticePoint::new(b, -a),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ProcessKind {
    #[default]
    Walk,
    Flight,
}

/// Wilson score interval for `hits` successes out of `n`.
pub fn wilson_interval(hits: u64, n: u64, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let n = n as f64;
    let p = hits as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HitProbConfig {
    pub alpha: f64,
    pub ell: u64,
    pub budget: u64,
    pub trials: u64,
    pub seed: u64,
    #[serde(default)]
    pub placement: Placement,
    #[serde(default)]
    pub process: ProcessKind,
    /// Optional cap on jump lengths.
    #[serde(default)]
    pub cap: Option<u64>,
}

impl HitProbConfig {
    pub fn new(alpha: f64, ell: u64, budget: u64, trials: u64, seed: u64) -> Self {
        HitProbConfig {
            alpha,
            ell,
            budget,
            trials,
            seed,
            placement: Placement::East,
            process: ProcessKind::Walk,
            cap: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HitEstimate {
    pub trials: u64,
    pub hits: u64,
    pub p_hat: f64,
    pub ci95: (f64, f64),
    /// Per-trial hitting step (within the budget).
    pub hit_steps: Vec<Option<u64>>,
}

impl HitEstimate {
    pub fn from_hit_steps(hit_steps: Vec<Option<u64>>) -> Self {
        let trials = hit_steps.len() as u64;
        let hits = hit_steps.iter().filter(|h| h.is_some()).count() as u64;
        HitEstimate {
            trials,
            hits,
            p_hat: if trials == 0 { 0.0 } else { hits as f64 / trials as f64 },
            ci95: wilson_interval(hits, trials, Z95),
            hit_steps,
        }
    }

    /// Estimate at a smaller budget from the same trials.
    pub fn at_budget(&self, budget: u64) -> HitEstimate {
        Self::from_hit_steps(self.hit_steps.iter().map(|h| h.filter(|&t| t <= budget)).collect())
    }
}

/// Fraction of single-walker trials that visit the target within budget.
pub fn estimate_hit_prob(cfg: &HitProbConfig) -> Result<HitEstimate> {
    if cfg.trials == 0 {
        return domain("trials must be at least 1");
    }
    let law = JumpLaw::new(cfg.alpha, cfg.cap)?;
    let hit_steps = (0..cfg.trials)
        .into_par_iter()
        .map(|j| {
            let target = cfg.placement.target(cfg.ell, j);
            let seed = walker_seed(rng::derive_key(cfg.seed, &[j]), 0);
            match cfg.process {
                ProcessKind::Walk => LevyWalk::from_seed(&law, seed).run_until_hit(target, cfg.budget, None),
                ProcessKind::Flight => LevyFlight::from_seed(&law, seed).run_until_hit(target, cfg.budget, None),
            }
            .hit_step()
        })
        .collect();
    Ok(HitEstimate::from_hit_steps(hit_steps))
}

/// One row of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial_id: u64,
    /// Per-walker exponents.
    pub alphas: Vec<f64>,
    /// Exponent reported in the CSV `alpha` column: the cell exponent for a
    /// fixed strategy, otherwise the winner's exponent (absent on a miss).
    pub alpha: Option<f64>,
    pub ell: u64,
    pub k: usize,
    pub budget: u64,
    pub hit_step: Option<u64>,
    #[serde(skip)]
    pub wallclock: Duration,
}

/// How budgets are chosen per cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BudgetRule {
    /// Every listed budget is a grid axis.
    List(Vec<u64>),
    /// `ceil(C · ℓ^{α-1})`.
    Scaled(f64),
}

impl BudgetRule {
    pub fn budgets(&self, alpha: f64, ell: u64) -> Vec<u64> {
        match self {
            BudgetRule::List(b) => b.clone(),
            BudgetRule::Scaled(c) => vec![(c * (ell as f64).powf(alpha - 1.0)).ceil().max(1.0) as u64],
        }
    }
}

impl Default for BudgetRule {
    fn default() -> Self {
        BudgetRule::Scaled(DEFAULT_BUDGET_C)
    }
}

/// Sweep grid. With a non-fixed strategy the `alphas` axis is ignored except
/// through the budget rule, which then uses `alphas[0]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub alphas: Vec<f64>,
    pub ells: Vec<u64>,
    #[serde(default = "default_ks")]
    pub ks: Vec<usize>,
    #[serde(default)]
    pub budgets: BudgetRule,
}

fn default_ks() -> Vec<usize> {
    vec![1]
}

/// One grid cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub alpha: f64,
    pub ell: u64,
    pub k: usize,
    pub budget: u64,
}

impl Cell {
    /// Seed of this cell under a sweep seed.
    pub fn seed(&self, sweep_seed: u64) -> u64 {
        rng::derive_key(sweep_seed, &[self.alpha.to_bits(), self.ell, self.k as u64, self.budget])
    }
}

impl SweepGrid {
    pub fn validate(&self) -> Result<()> {
        if self.alphas.is_empty() || self.ells.is_empty() || self.ks.is_empty() {
            return Err(Error::Config("sweep grid axes must be non-empty".into()));
        }
        if let BudgetRule::List(b) = &self.budgets {
            if b.is_empty() || b.contains(&0) {
                return Err(Error::Config("budgets must be non-empty and positive".into()));
            }
        }
        if self.alphas.iter().any(|a| !(*a >= ALPHA_FLOOR)) || self.ks.contains(&0) {
            return Err(Error::Config("alphas must be >= 1.01 and ks >= 1".into()));
        }
        Ok(())
    }

    pub fn cells(&self, strategy: &Strategy) -> Vec<Cell> {
        let alphas: &[f64] = match strategy {
            Strategy::Fixed { .. } => &self.alphas,
            _ => &self.alphas[..1],
        };
        let mut cells = Vec::new();
        for &alpha in alphas {
            for &ell in &self.ells {
                for &k in &self.ks {
                    for budget in self.budgets.budgets(alpha, ell) {
                        cells.push(Cell { alpha, ell, k, budget });
                    }
                }
            }
        }
        cells
    }
}

/// Runs `trials` trials of one cell.
pub fn run_cell(cell: &Cell, strategy: &Strategy, trials: u64, sweep_seed: u64) -> Result<Vec<TrialRecord>> {
    let strategy = match strategy {
        Strategy::Fixed { .. } => Strategy::fixed(cell.alpha),
        s => *s,
    };
    let cell_seed = cell.seed(sweep_seed);
    let target = LatticePoint::new(cell.ell as i64, 0);
    let mut base = LawCache::default();
    if strategy.is_common() {
        // Probe run builds the shared law once, outside the parallel section.
        let probe = SearchConfig::new(1, target, 1, cell_seed, strategy);
        run_parallel_with(&SearchConfig { k: cell.k, ..probe }, &mut base)?;
    }
    (0..trials)
        .into_par_iter()
        .map(|j| {
            let start = Instant::now();
            let cfg = SearchConfig::new(cell.k, target, cell.budget, rng::derive_key(cell_seed, &[j]), strategy);
            let out = run_parallel_with(&cfg, &mut base.clone())?;
            let alphas: Vec<f64> = out.per_walker.iter().map(|w| w.alpha).collect();
            let alpha = match strategy {
                Strategy::Fixed { alpha } => Some(alpha),
                _ => out.winner.map(|w| alphas[w]),
            };
            Ok(TrialRecord {
                trial_id: j,
                alphas,
                alpha,
                ell: cell.ell,
                k: cell.k,
                budget: cell.budget,
                hit_step: out.hit_step,
                wallclock: start.elapsed(),
            })
        })
        .collect()
}

/// All cells of the grid, rows sorted by (cell, trial).
pub fn sweep(grid: &SweepGrid, strategy: &Strategy, trials: u64, seed: u64) -> Result<Vec<TrialRecord>> {
    grid.validate()?;
    strategy.validate()?;
    let mut rows = Vec::new();
    for cell in grid.cells(strategy) {
        rows.extend(run_cell(&cell, strategy, trials, seed)?);
    }
    Ok(rows)
}

pub const SWEEP_CSV_HEADER: &str = "alpha,ell,k,budget,trial,hit_step,exhausted";

fn csv_error(e: csv::Error) -> Error {
    Error::Csv(e.to_string())
}

/// Writes rows as `alpha,ell,k,budget,trial,hit_step,exhausted`.
pub fn write_sweep_csv<W: Write>(out: W, rows: &[TrialRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_CSV_HEADER.split(',')).map_err(csv_error)?;
    for r in rows {
        w.write_record([
            r.alpha.map(fmt_real).unwrap_or_default(),
            r.ell.to_string(),
            r.k.to_string(),
            r.budget.to_string(),
            r.trial_id.to_string(),
            r.hit_step.map(|t| t.to_string()).unwrap_or_default(),
            r.hit_step.is_none().to_string(),
        ])
        .map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

/// A parsed sweep CSV row.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct SweepRow {
    pub alpha: Option<f64>,
    pub ell: u64,
    pub k: usize,
    pub budget: u64,
    pub trial: u64,
    pub hit_step: Option<u64>,
}

pub fn read_sweep_csv<R: Read>(input: R) -> Result<Vec<SweepRow>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let header = reader.headers().map_err(csv_error)?;
    if header.iter().collect::<Vec<_>>().join(",") != SWEEP_CSV_HEADER {
        return Err(Error::Csv(format!("expected header `{SWEEP_CSV_HEADER}`")));
    }
    reader.deserialize().map(|row| row.map_err(csv_error)).collect()
}

impl From<&TrialRecord> for SweepRow {
    fn from(r: &TrialRecord) -> Self {
        SweepRow { alpha: r.alpha, ell: r.ell, k: r.k, budget: r.budget, trial: r.trial_id, hit_step: r.hit_step }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub alpha: Option<f64>,
    pub ell: u64,
    pub k: usize,
    pub budget: u64,
    pub trials: u64,
    pub hits: u64,
    pub p_hat: f64,
    pub ci95: (f64, f64),
}

/// Groups rows by (alpha, ell, k, budget) in first-seen order. With
/// `pool_alpha` the alpha column is ignored (use it for non-fixed strategies,
/// whose rows carry the winner's exponent) and summaries report no alpha.
pub fn summarize(rows: &[SweepRow], pool_alpha: bool) -> Vec<CellSummary> {
    let mut cells: Vec<CellSummary> = Vec::new();
    let mut index: Vec<(Option<u64>, u64, usize, u64)> = Vec::new();
    for r in rows {
        let alpha = if pool_alpha { None } else { r.alpha };
        let key = (alpha.map(f64::to_bits), r.ell, r.k, r.budget);
        let i = match index.iter().position(|k| *k == key) {
            Some(i) => i,
            None => {
                index.push(key);
                cells.push(CellSummary {
                    alpha,
                    ell: r.ell,
                    k: r.k,
                    budget: r.budget,
                    trials: 0,
                    hits: 0,
                    p_hat: 0.0,
                    ci95: (0.0, 1.0),
                });
                cells.len() - 1
            }
        };
        cells[i].trials += 1;
        cells[i].hits += r.hit_step.is_some() as u64;
    }
    for c in &mut cells {
        c.p_hat = c.hits as f64 / c.trials as f64;
        c.ci95 = wilson_interval(c.hits, c.trials, Z95);
    }
    cells
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

impl PowerLawFit {
    pub fn predict(&self, x: f64) -> f64 {
        (self.intercept + self.slope * x.ln()).exp()
    }
}

/// Least squares of `ln y` on `ln x`.
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<PowerLawFit> {
    if points.len() < 3 {
        return domain(format!("need at least 3 points, got {}", points.len()));
    }
    if let Some(p) = points.iter().find(|(x, y)| !(*x > 0.0 && *y > 0.0 && x.is_finite() && y.is_finite())) {
        return domain(format!("non-positive point {p:?}"));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return domain("all x values are equal");
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = logs.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    let ss_tot: f64 = logs.iter().map(|p| (p.1 - my).powi(2)).sum();
    let r2 = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Ok(PowerLawFit { slope, intercept, r2 })
}

/// Log-log fit of `p_hat` against `ℓ` for one series of cells.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesFit {
    pub alpha: Option<f64>,
    pub k: usize,
    /// Set when the series had several budgets per `ℓ` and was split by budget.
    pub budget: Option<u64>,
    /// `(ℓ, p_hat)` sorted by `ℓ`.
    pub points: Vec<(u64, f64)>,
    /// Absent with fewer than three positive points.
    pub fit: Option<PowerLawFit>,
    /// Predicted slope for a known exponent, up to polylogarithmic factors.
    pub reference_slope: Option<f64>,
}

/// Groups summaries into series by (alpha, k) and fits each one. Points
/// with `p_hat = 0` are left out of the fit.
pub fn fit_series(cells: &[CellSummary]) -> Vec<SeriesFit> {
    let mut groups: Vec<((Option<u64>, usize), Vec<&CellSummary>)> = Vec::new();
    for c in cells {
        let key = (c.alpha.map(f64::to_bits), c.k);
        match groups.iter_mut().find(|g| g.0 == key) {
            Some(g) => g.1.push(c),
            None => groups.push((key, vec![c])),
        }
    }
    let mut out = Vec::new();
    for ((_, k), members) in groups {
        let alpha = members[0].alpha;
        let mut ells: Vec<u64> = members.iter().map(|c| c.ell).collect();
        ells.sort_unstable();
        let series: Vec<(Option<u64>, Vec<&CellSummary>)> = if ells.windows(2).any(|w| w[0] == w[1]) {
            let mut by_budget: Vec<(Option<u64>, Vec<&CellSummary>)> = Vec::new();
            for c in members {
                match by_budget.iter_mut().find(|g| g.0 == Some(c.budget)) {
                    Some(g) => g.1.push(c),
                    None => by_budget.push((Some(c.budget), vec![c])),
                }
            }
            by_budget
        } else {
            vec![(None, members)]
        };
        for (budget, s) in series {
            let mut points: Vec<(u64, f64)> = s.iter().map(|c| (c.ell, c.p_hat)).collect();
            points.sort_by_key(|p| p.0);
            let positive: Vec<(f64, f64)> =
                points.iter().filter(|p| p.1 > 0.0).map(|&(l, p)| (l as f64, p)).collect();
            out.push(SeriesFit {
                alpha,
                k,
                budget,
                fit: fit_power_law(&positive).ok(),
                reference_slope: alpha.and_then(|a| reference_curves(a, 2, k).ok()).map(|r| r.hit_prob_exponent),
                points,
            });
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `α ∈ (1, 2]`.
    Ballistic,
    /// `α ∈ (2, 3)`.
    Superdiffusive,
    /// `α ≥ 3`.
    Diffusive,
}

impl Regime {
    pub fn of(alpha: f64) -> Regime {
        if alpha <= 2.0 {
            Regime::Ballistic
        } else if alpha < 3.0 {
            Regime::Superdiffusive
        } else {
            Regime::Diffusive
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoreticalBounds {
    /// `min(ln ℓ, 1/|α-2|)`.
    pub mu: f64,
    /// `min(ln ℓ, 1/|3-α|)`.
    pub nu: f64,
    /// `(ln ℓ)^{2/(α-1)} / (3-α)²` (infinite at α = 3).
    pub gamma: f64,
    /// `3 - ln k / ln ℓ`.
    pub alpha_star: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReferenceCurves {
    pub alpha: f64,
    pub ell: u64,
    pub k: usize,
    pub bounds: TheoreticalBounds,
    pub regime: Regime,
    /// Predicted exponent of the hit probability in `ℓ` at the regime's
    /// natural budget, up to polylogarithmic factors.
    pub hit_prob_exponent: f64,
    /// Exponent `e` in the natural budget `Θ(ℓ^e)` (times `ln²ℓ` when diffusive).
    pub time_exponent: f64,
}

impl ReferenceCurves {
    /// Natural budget for this regime with leading constant `c`:
    /// `c·ℓ`, `c·ℓ^{α-1}` or `c·ℓ²·ln²ℓ`.
    pub fn budget(&self, c: f64) -> u64 {
        let l = self.ell as f64;
        let b = match self.regime {
            Regime::Ballistic => c * l,
            Regime::Superdiffusive => c * l.powf(self.alpha - 1.0),
            Regime::Diffusive => c * l * l * l.ln().powi(2),
        };
        b.ceil().max(1.0) as u64
    }
}

pub fn reference_curves(alpha: f64, ell: u64, k: usize) -> Result<ReferenceCurves> {
    if !(alpha >= ALPHA_FLOOR) {
        return domain(format!("alpha = {alpha} is below the floor"));
    }
    if ell < 2 || k == 0 {
        return domain("need ell >= 2 and k >= 1");
    }
    let ln_l = (ell as f64).ln();
    let inv = |x: f64| if x == 0.0 { f64::INFINITY } else { 1.0 / x.abs() };
    let bounds = TheoreticalBounds {
        mu: ln_l.min(inv(alpha - 2.0)),
        nu: ln_l.min(inv(3.0 - alpha)),
        gamma: ln_l.powf(2.0 / (alpha - 1.0)) / (3.0 - alpha).powi(2),
        alpha_star: 3.0 - (k as f64).ln() / ln_l,
    };
    let regime = Regime::of(alpha);
    let (hit_prob_exponent, time_exponent) = match regime {
        Regime::Ballistic => (-1.0, 1.0),
        Regime::Superdiffusive => (-(3.0 - alpha), alpha - 1.0),
        Regime::Diffusive => (0.0, 2.0),
    };
    Ok(ReferenceCurves { alpha, ell, k, bounds, regime, hit_prob_exponent, time_exponent })
}

/// Locale-free real formatting with 10 significant digits, trailing zeros
/// trimmed.
pub fn fmt_real(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-5..=15).contains(&mag) {
        return format!("{x:.9e}");
    }
    let decimals = (9 - mag).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

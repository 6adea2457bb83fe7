//! Parallel search by `k` independent Lévy walks.
//!
//! Every walker starts at the origin. Walker `j` draws its randomness from
//! streams keyed by `(master_seed, j)`, and exponents are assigned from a
//! stream keyed by `master_seed` alone, in walker order. The parallel hitting
//! time is a pure min-reduction over walkers, so the outcome does not depend
//! on how walkers are scheduled across threads.

use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{HitOutcome, JumpProcess, LevyWalk, PathMode};
use crate::error::{Error, Result};
use crate::lattice::LatticePoint;
use crate::powerlaw::{JumpLaw, ALPHA_FLOOR};
use crate::rng;

/// Exponent assignment rule for the `k` walkers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Strategy {
    /// Every walker uses `alpha`.
    Fixed { alpha: f64 },
    /// Every walker uses `3 - ln k / ln ℓ + coeff · ln ln ℓ / ln ℓ`, clamped.
    Optimal { coeff: f64, clamp: (f64, f64) },
    /// Independent uniform exponents on the open interval `(lo, hi)`.
    UniformRandom { lo: f64, hi: f64 },
}

impl Strategy {
    pub fn fixed(alpha: f64) -> Self {
        Strategy::Fixed { alpha }
    }

    /// `coeff = 5`, clamp `(2.05, 2.95)`.
    pub fn optimal() -> Self {
        Strategy::Optimal { coeff: 5.0, clamp: (2.05, 2.95) }
    }

    /// Uniform on `(2, 3)`.
    pub fn uniform() -> Self {
        Strategy::UniformRandom { lo: 2.0, hi: 3.0 }
    }

    pub fn label(&self) -> String {
        match *self {
            Strategy::Fixed { alpha } => format!("fixed({alpha})"),
            Strategy::Optimal { coeff, clamp: (lo, hi) } => format!("optimal(coeff={coeff},clamp=[{lo},{hi}])"),
            Strategy::UniformRandom { lo, hi } => format!("uniform({lo},{hi})"),
        }
    }

    /// True when all walkers share one exponent.
    pub fn is_common(&self) -> bool {
        !matches!(self, Strategy::UniformRandom { .. })
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Strategy::Fixed { alpha } => alpha.is_finite() && alpha >= ALPHA_FLOOR,
            Strategy::Optimal { coeff, clamp: (lo, hi) } => {
                coeff.is_finite() && lo >= ALPHA_FLOOR && lo <= hi && hi.is_finite()
            }
            Strategy::UniformRandom { lo, hi } => lo >= ALPHA_FLOOR && lo < hi && hi.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Config(format!("invalid strategy {}", self.label())))
        }
    }
}

/// `3 - ln k / ln ℓ + coeff · ln ln ℓ / ln ℓ` (natural logarithms).
pub fn optimal_alpha(k: f64, ell: f64, coeff: f64) -> f64 {
    let l = ell.ln();
    3.0 - k.ln() / l + coeff * l.ln() / l
}

/// Exponents for `k` walkers. `ell_hint` is required by `Optimal`; values
/// below 3 are raised to 3 so the logarithms stay positive.
pub fn assign_exponents<R: Rng + ?Sized>(
    strategy: &Strategy,
    k: usize,
    ell_hint: Option<u64>,
    rng: &mut R,
) -> Result<Vec<f64>> {
    strategy.validate()?;
    Ok(match *strategy {
        Strategy::Fixed { alpha } => vec![alpha; k],
        Strategy::Optimal { coeff, clamp: (lo, hi) } => {
            let ell = ell_hint.ok_or_else(|| Error::Config("optimal strategy needs the target distance".into()))?;
            let a = optimal_alpha(k as f64, ell.max(3) as f64, coeff).clamp(lo, hi);
            vec![a; k]
        }
        Strategy::UniformRandom { lo, hi } => (0..k)
            .map(|_| loop {
                let a = lo + (hi - lo) * rng.random::<f64>();
                if a > lo && a < hi {
                    break a;
                }
            })
            .collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub k: usize,
    pub target: LatticePoint,
    /// Maximum lattice steps per walker.
    pub budget: u64,
    pub master_seed: u64,
    pub strategy: Strategy,
    #[serde(default)]
    pub path_mode: PathMode,
}

impl SearchConfig {
    pub fn new(k: usize, target: LatticePoint, budget: u64, master_seed: u64, strategy: Strategy) -> Self {
        SearchConfig { k, target, budget, master_seed, strategy, path_mode: PathMode::Random }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::Config("k must be at least 1".into()));
        }
        if self.budget == 0 {
            return Err(Error::Config("budget must be at least 1".into()));
        }
        self.strategy.validate()
    }

    pub fn ell(&self) -> u64 {
        self.target.l1()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WalkerOutcome {
    pub alpha: f64,
    pub outcome: HitOutcome,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParallelOutcome {
    /// Parallel hitting time, if some walker hit within budget.
    pub hit_step: Option<u64>,
    /// Lowest-id walker achieving `hit_step`.
    pub winner: Option<usize>,
    pub per_walker: Vec<WalkerOutcome>,
}

impl ParallelOutcome {
    pub fn from_walkers(per_walker: Vec<WalkerOutcome>) -> Self {
        let best = per_walker
            .iter()
            .enumerate()
            .filter_map(|(j, w)| w.outcome.hit_step().map(|t| (t, j)))
            .min();
        ParallelOutcome {
            hit_step: best.map(|b| b.0),
            winner: best.map(|b| b.1),
            per_walker,
        }
    }

    /// The outcome the first `k` walkers alone would have produced.
    pub fn prefix(&self, k: usize) -> ParallelOutcome {
        Self::from_walkers(self.per_walker[..k.min(self.per_walker.len())].to_vec())
    }

    pub fn is_hit(&self) -> bool {
        self.hit_step.is_some()
    }
}

/// Seed of walker `j` under `master_seed`.
pub fn walker_seed(master_seed: u64, walker: usize) -> u64 {
    rng::derive_key(master_seed, &[walker as u64])
}

/// Runs one walker with its own law, to its hit or the budget.
pub fn run_walker(law: &JumpLaw, config: &SearchConfig, walker: usize) -> HitOutcome {
    let mut walk = LevyWalk::from_seed(law, walker_seed(config.master_seed, walker)).with_path_mode(config.path_mode);
    walk.run_until_hit(config.target, config.budget, None)
}

/// Laws for a set of exponents, built once per distinct value.
#[derive(Debug, Default, Clone)]
pub struct LawCache {
    laws: HashMap<u64, Arc<JumpLaw>>,
}

impl LawCache {
    pub fn get(&mut self, alpha: f64) -> Result<Arc<JumpLaw>> {
        if let Some(l) = self.laws.get(&alpha.to_bits()) {
            return Ok(l.clone());
        }
        let law = Arc::new(JumpLaw::uncapped(alpha)?);
        self.laws.insert(alpha.to_bits(), law.clone());
        Ok(law)
    }
}

/// Parallel hitting time of `config.k` independent walks.
pub fn run_parallel(config: &SearchConfig) -> Result<ParallelOutcome> {
    run_parallel_with(config, &mut LawCache::default())
}

/// As [`run_parallel`], reusing laws for common-exponent strategies.
pub fn run_parallel_with(config: &SearchConfig, cache: &mut LawCache) -> Result<ParallelOutcome> {
    config.validate()?;
    let mut rng = rng::stream(config.master_seed, &[rng::EXPONENTS]);
    let alphas = assign_exponents(&config.strategy, config.k, Some(config.ell()), &mut rng)?;

    let per_walker: Vec<WalkerOutcome> = if config.strategy.is_common() {
        let law = cache.get(alphas[0])?;
        (0..config.k)
            .into_par_iter()
            .map(|j| WalkerOutcome { alpha: alphas[j], outcome: run_walker(&law, config, j) })
            .collect()
    } else {
        alphas
            .par_iter()
            .enumerate()
            .map(|(j, &alpha)| {
                let law = JumpLaw::uncapped(alpha)?;
                Ok(WalkerOutcome { alpha, outcome: run_walker(&law, config, j) })
            })
            .collect::<Result<_>>()?
    };
    Ok(ParallelOutcome::from_walkers(per_walker))
}

/// JSON record emitted by the `search` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub hit_step: Option<u64>,
    pub winner: Option<usize>,
    pub k: usize,
    pub strategy: Strategy,
    pub seed: u64,
    pub target: LatticePoint,
    pub budget: u64,
}

impl SearchRecord {
    pub fn new(config: &SearchConfig, outcome: &ParallelOutcome) -> Self {
        SearchRecord {
            hit_step: outcome.hit_step,
            winner: outcome.winner,
            k: config.k,
            strategy: config.strategy,
            seed: config.master_seed,
            target: config.target,
            budget: config.budget,
        }
    }
}

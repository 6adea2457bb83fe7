//! Parallel search with k walkers under each exponent strategy.

use levy_search::search::{optimal_alpha, run_parallel, SearchConfig, Strategy};
use levy_search::LatticePoint;

fn main() -> levy_search::Result<()> {
    let (k, ell) = (64usize, 64i64);
    let target = LatticePoint::new(ell, 0);
    let budget = 20_000;
    println!("k = {k}, target {target}, budget {budget}");
    println!("optimal exponent formula gives {:.3}\n", optimal_alpha(k as f64, ell as f64, 5.0));

    for strategy in [Strategy::fixed(2.0), Strategy::fixed(3.0), Strategy::optimal(), Strategy::uniform()] {
        let trials = 20;
        let mut hits = Vec::new();
        for seed in 0..trials {
            let out = run_parallel(&SearchConfig::new(k, target, budget, seed, strategy))?;
            hits.extend(out.hit_step);
        }
        hits.sort_unstable();
        let median = hits.get(hits.len() / 2).map_or("-".into(), |t| t.to_string());
        println!("{:<40} found in {:>2}/{trials} runs, median time {median}", strategy.label(), hits.len());
    }

    let out = run_parallel(&SearchConfig::new(k, target, budget, 7, Strategy::uniform()))?;
    if let Some(w) = out.winner {
        println!("\nseed 7: walker {w} (alpha {:.3}) hit first at step {}", out.per_walker[w].alpha, out.hit_step.unwrap());
    }
    Ok(())
}

//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run a subset with `cargo test --test acceptance -- 5 8`.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use levy_search::experiments::{estimate_hit_prob, fit_power_law, HitEstimate, HitProbConfig};
use levy_search::oracles::{
    check_coupling, check_intermediate_bounds, check_monotonicity, flight_dp, phase_visit_prob, projection_report,
};
use levy_search::rng::derive_key;
use levy_search::search::{run_parallel, SearchConfig, Strategy};
use levy_search::{JumpLaw, LatticePoint};

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: String) -> Verdict {
    Verdict { passed, detail }
}

type Criterion = (u32, &'static str, Duration, fn() -> Verdict);

fn main() {
    let selected: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let criteria: [Criterion; 12] = [
        (1, "normalization brackets", secs(5), normalization),
        (2, "direct-path layer bounds", secs(60), layer_bounds),
        (3, "flight monotonicity", secs(60), monotonicity),
        (4, "phase visit scaling", secs(120), phase_visit),
        (5, "superdiffusive scaling", secs(600), superdiffusive),
        (6, "ballistic scaling", secs(600), ballistic),
        (7, "diffusive scaling", secs(900), diffusive),
        (8, "early-budget suppression", secs(600), early_budget),
        (9, "random exponents", secs(1200), random_exponents),
        (10, "projection exponent", secs(60), projection),
        (11, "walk/flight coupling", secs(10), coupling),
        (12, "CLI determinism", secs(600), determinism),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        if !selected.is_empty() && !selected.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let v = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= limit;
        let ok = v.passed && in_time;
        failed += !ok as u32;
        let timing = if in_time { String::new() } else { format!(" [over time limit {limit:?}]") };
        println!(
            "{} criterion {id:>2} {name}: {} ({:.1}s){timing}",
            if ok { "PASS" } else { "FAIL" },
            v.detail,
            elapsed.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn normalization() -> Verdict {
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for alpha in [2.1, 2.5, 3.0, 4.0] {
        let b = JumpLaw::uncapped(alpha).unwrap().mass_bracket();
        ok &= b.lo <= 1.0 && 1.0 <= b.hi && b.width() < 1e-9;
        worst = worst.max(b.width());
    }
    verdict(ok, format!("widest mass bracket {worst:.2e}"))
}

fn layer_bounds() -> Verdict {
    let r = check_intermediate_bounds(12).unwrap();
    verdict(
        r.holds(),
        format!("{} (d, i) pairs, {} nodes, {} violations", r.pairs, r.nodes, r.violations.len()),
    )
}

fn monotonicity() -> Verdict {
    let mut violations = 0;
    for alpha in [2.2, 2.5, 2.9] {
        let law = JumpLaw::new(alpha, Some(6)).unwrap();
        for t in 1..=4 {
            violations += check_monotonicity(&flight_dp(&law, t).unwrap()).violations.len();
        }
    }
    verdict(violations == 0, format!("{violations} violations over 12 distributions"))
}

fn phase_visit() -> Verdict {
    let mut ok = true;
    let mut ratios = Vec::new();
    for alpha in [2.2, 2.5, 3.5] {
        let law = JumpLaw::uncapped(alpha).unwrap();
        let scaled: Vec<f64> = [2.0f64, 4.0, 8.0, 16.0]
            .iter()
            .map(|&d| {
                let v = phase_visit_prob(LatticePoint::new(d as i64, 0), &law, 256, 0.005).unwrap();
                v.value() * d.powf(alpha)
            })
            .collect();
        let max = scaled.iter().cloned().fold(f64::MIN, f64::max);
        let min = scaled.iter().cloned().fold(f64::MAX, f64::min);
        ok &= max / min <= 3.0;
        ratios.push(format!("{alpha}: {:.3}", max / min));
    }
    verdict(ok, format!("max/min of p(d)·d^α = {}", ratios.join(", ")))
}

/// Single-walker estimates over `ells` and the log-log slope of p_hat.
fn slope(alpha: f64, ells: &[u64], budget: impl Fn(f64) -> f64, trials: u64, seed: u64) -> (f64, Vec<HitEstimate>) {
    let estimates: Vec<HitEstimate> = ells
        .iter()
        .map(|&ell| {
            let b = budget(ell as f64).ceil() as u64;
            estimate_hit_prob(&HitProbConfig::new(alpha, ell, b, trials, derive_key(seed, &[ell]))).unwrap()
        })
        .collect();
    let points: Vec<(f64, f64)> = ells.iter().zip(&estimates).map(|(&l, e)| (l as f64, e.p_hat)).collect();
    let slope = fit_power_law(&points).map(|f| f.slope).unwrap_or(f64::NAN);
    (slope, estimates)
}

fn describe(ells: &[u64], est: &[HitEstimate]) -> String {
    ells.iter().zip(est).map(|(l, e)| format!("ℓ={l}: {:.4}", e.p_hat)).collect::<Vec<_>>().join(", ")
}

fn superdiffusive() -> Verdict {
    let ells = [16, 32, 64, 128];
    let (s, est) = slope(2.5, &ells, |l| 10.0 * l.powf(1.5), 20_000, 5);
    verdict((-0.9..=-0.2).contains(&s), format!("slope {s:.3} in [-0.9, -0.2]; {}", describe(&ells, &est)))
}

fn ballistic() -> Verdict {
    let ells = [16, 32, 64, 128];
    let (s, est) = slope(1.5, &ells, |l| 4.0 * l, 20_000, 6);
    verdict((-1.4..=-0.7).contains(&s), format!("slope {s:.3} in [-1.4, -0.7]; {}", describe(&ells, &est)))
}

fn diffusive() -> Verdict {
    let ells = [16, 32, 64];
    let (s, est) = slope(4.0, &ells, |l| 4.0 * l * l * l.ln().powi(2), 5_000, 7);
    verdict((-0.4..=0.1).contains(&s), format!("slope {s:.3} in [-0.4, 0.1]; {}", describe(&ells, &est)))
}

fn early_budget() -> Verdict {
    let t = 64f64.powf(1.5) as u64;
    let full = estimate_hit_prob(&HitProbConfig::new(2.5, 64, t, 400_000, 8)).unwrap();
    let half = full.at_budget(t / 2);
    let ratio = full.p_hat / half.p_hat;
    verdict(
        ratio >= 2.5,
        format!("p(t={t}) = {:.5}, p(t/2) = {:.5}, ratio {ratio:.2} >= 2.5 over {} trials", full.p_hat, half.p_hat, full.trials),
    )
}

fn success_fraction(k: usize, budget: u64, trials: u64, seed: u64) -> f64 {
    let target = LatticePoint::new(128, 0);
    let hits = (0..trials)
        .filter(|&j| {
            let cfg = SearchConfig::new(k, target, budget, derive_key(seed, &[k as u64, j]), Strategy::uniform());
            run_parallel(&cfg).unwrap().is_hit()
        })
        .count();
    hits as f64 / trials as f64
}

fn random_exponents() -> Verdict {
    let ell = 128f64;
    let work = 16.0 * ell * ell * ell.ln().powi(3);
    let fractions: Vec<(usize, u64, f64)> = [64usize, 256, 1024]
        .iter()
        .map(|&k| {
            let budget = (work / k as f64).ceil() as u64;
            (k, budget, success_fraction(k, budget, 50, 9))
        })
        .collect();
    let at_256 = fractions[1].2;
    let monotone = fractions.windows(2).all(|w| w[1].2 >= w[0].2);
    let detail = fractions
        .iter()
        .map(|(k, b, f)| format!("k={k} B={b}: {f:.2}"))
        .collect::<Vec<_>>()
        .join(", ");
    verdict(at_256 >= 0.9 && monotone, format!("{detail}; need >= 0.9 at k=256 and nondecreasing"))
}

fn projection() -> Verdict {
    let r = projection_report(2.5, 8, 128).unwrap();
    let ok = (-2.8..=-2.2).contains(&r.measured_slope) && r.statement_holds;
    verdict(
        ok,
        format!(
            "slope {:.4} (r² {:.6}); closer to {} than to {}",
            r.measured_slope, r.r2, r.statement_exponent, r.proof_exponent
        ),
    )
}

fn coupling() -> Verdict {
    let mut mismatches = 0;
    for alpha in [1.5, 2.5, 3.5] {
        mismatches += check_coupling(alpha, 1000, 100, 11).unwrap().mismatches;
    }
    verdict(mismatches == 0, format!("{mismatches} mismatching runs of 3×1000"))
}

fn levy(args: &[&str], threads: &str, dir: &Path) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_levy"))
        .args(args)
        .args(["--threads", threads])
        .current_dir(dir)
        .env_remove("LEVY_THREADS")
        .output()
        .expect("run levy");
    assert!(out.status.success(), "levy {args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn determinism() -> Verdict {
    let dir = std::env::temp_dir().join(format!("levy-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let sweep_args = [
        "sweep", "--strategy", "uniform", "--ells", "8,16", "--ks", "1,4", "--budgets", "200,800", "--trials", "60", "--seed", "12",
    ];
    let csv = levy(&sweep_args, "1", &dir);
    std::fs::write(dir.join("sweep.csv"), &csv).unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["walk", "--alpha", "2.5", "--steps", "100", "--seed", "7"],
        vec!["walk", "--alpha", "1.7", "--steps", "50", "--process", "flight", "--format", "json"],
        vec!["search", "--k", "16", "--ell", "12", "--budget", "3000", "--strategy", "uniform", "--seed", "3"],
        vec!["search", "--k", "4", "--ell", "0", "--budget", "10", "--alpha", "2.5"],
        sweep_args.to_vec(),
        [&sweep_args[..], &["--format", "json"]].concat(),
        vec!["verify", "--seed", "4"],
        vec!["fit", "--input", "sweep.csv", "--pool-alpha"],
    ];
    let mut bad = Vec::new();
    for cmd in &commands {
        let a = levy(cmd, "1", &dir);
        let b = levy(cmd, "1", &dir);
        let c = levy(cmd, "8", &dir);
        if a != b || a != c || a.is_empty() {
            bad.push(cmd[0]);
        }
    }
    std::fs::remove_dir_all(&dir).ok();
    verdict(
        bad.is_empty(),
        format!("{} invocations over 5 subcommands; mismatches: {bad:?}", commands.len()),
    )
}

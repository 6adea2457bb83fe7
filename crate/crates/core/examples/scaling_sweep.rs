//! Sweep over exponents and distances, write the CSV, then fit each series.
//!
//! `cargo run --release --example scaling_sweep -- sweep.csv`

use std::fs::File;
use std::io::BufWriter;

use levy_search::experiments::{fit_series, summarize, sweep, write_sweep_csv, BudgetRule, SweepGrid, SweepRow};
use levy_search::search::Strategy;

fn main() -> levy_search::Result<()> {
    let grid = SweepGrid {
        alphas: vec![1.5, 2.5, 2.9],
        ells: vec![8, 16, 32, 64],
        ks: vec![1],
        budgets: BudgetRule::Scaled(10.0),
    };
    let rows = sweep(&grid, &Strategy::fixed(2.5), 2000, 1)?;
    if let Some(path) = std::env::args().nth(1) {
        write_sweep_csv(BufWriter::new(File::create(&path)?), &rows)?;
        println!("wrote {} rows to {path}", rows.len());
    }
    let parsed: Vec<SweepRow> = rows.iter().map(SweepRow::from).collect();
    let cells = summarize(&parsed, false);
    for c in &cells {
        println!(
            "alpha {:<4} ell {:>3} budget {:>6}: p_hat {:.4} [{:.4}, {:.4}]",
            c.alpha.unwrap(),
            c.ell,
            c.budget,
            c.p_hat,
            c.ci95.0,
            c.ci95.1
        );
    }
    println!();
    for f in fit_series(&cells) {
        let slope = f.fit.map_or("n/a".into(), |x| format!("{:.3}", x.slope));
        println!("alpha {}: slope {slope}, reference {:?}", f.alpha.unwrap(), f.reference_slope);
    }
    Ok(())
}

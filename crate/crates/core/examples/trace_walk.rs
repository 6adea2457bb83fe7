//! Trace a walk and the flight sharing its jumps, printed as CSV.
//!
//! `cargo run --example trace_walk -- 2.2 60 > walk.csv`

use std::io::stdout;

use levy_search::engine::{flight_trajectory, walk_trajectory, write_trajectory_csv};
use levy_search::{JumpLaw, LevyFlight, LevyWalk};

fn main() -> levy_search::Result<()> {
    let mut args = std::env::args().skip(1);
    let alpha: f64 = args.next().map_or(Ok(2.2), |a| a.parse()).expect("alpha");
    let steps: u64 = args.next().map_or(Ok(60), |a| a.parse()).expect("steps");
    let law = JumpLaw::uncapped(alpha)?;

    let mut walk = LevyWalk::from_seed(&law, 1);
    let rows = walk_trajectory(&mut walk, steps);
    write_trajectory_csv(stdout().lock(), &rows)?;

    // The flight visits exactly the endpoints of the walk's completed phases.
    let jumps = walk.phase_id() - u64::from(!walk.at_phase_boundary());
    let flight = flight_trajectory(&mut LevyFlight::from_seed(&law, 1), jumps);
    eprintln!("walk: {steps} steps, {jumps} completed phases; flight positions:");
    for r in &flight {
        eprintln!("  jump {}: ({}, {})", r.step, r.x, r.y);
    }
    Ok(())
}

//! Exact distribution of a capped flight after a few jumps, and the check
//! that nodes closer in L1 are at least as likely as farther ones in L∞.

use levy_search::oracles::{check_monotonicity, flight_dp, walk_hit_dp};
use levy_search::{JumpLaw, LatticePoint};

fn main() -> levy_search::Result<()> {
    let law = JumpLaw::new(2.5, Some(6))?;
    for t in 1..=4 {
        let dist = flight_dp(&law, t)?;
        let report = check_monotonicity(&dist);
        println!(
            "t = {t}: P(origin) = {:.6}, P(3,0) = {:.6}, P(2,1) = {:.6}, mass {:.15}, {} violations",
            dist.prob(LatticePoint::ORIGIN),
            dist.prob(LatticePoint::new(3, 0)),
            dist.prob(LatticePoint::new(2, 1)),
            dist.total(),
            report.violations.len()
        );
    }

    let law = JumpLaw::new(2.5, Some(4))?;
    for budget in [1, 5, 20, 40] {
        let p = walk_hit_dp(&law, LatticePoint::new(1, 0), budget)?;
        println!("capped walk visits (1,0) within {budget:>2} steps with probability {p:.6}");
    }
    Ok(())
}

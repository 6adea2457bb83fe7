//! Law of the x-displacement of one flight jump and its decay exponent.

use levy_search::oracles::{projection_pmf, projection_report};
use levy_search::JumpLaw;

fn main() -> levy_search::Result<()> {
    let law = JumpLaw::uncapped(2.5)?;
    let pmf = projection_pmf(&law, 128)?;
    for d in [0i64, 1, 2, 4, 8, 16, 32, 64, 128] {
        println!("P(S = {d:>3}) = {:.6e}", pmf.get(d));
    }
    println!("total mass {:.12}", pmf.total().mid());

    for alpha in [2.1, 2.5, 2.9, 3.5] {
        let r = projection_report(alpha, 8, 128)?;
        println!(
            "alpha {alpha}: measured exponent {:.3}; -alpha = {}, -(alpha+1) = {}",
            r.measured_slope, r.statement_exponent, r.proof_exponent
        );
    }
    Ok(())
}

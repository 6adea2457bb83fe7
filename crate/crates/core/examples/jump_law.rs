//! Jump-length law: normalizing constant, certified tail brackets and sampling.

use levy_search::rng::stream;
use levy_search::JumpLaw;

fn main() -> levy_search::Result<()> {
    for alpha in [1.5, 2.0, 2.5, 3.0, 4.0] {
        let law = JumpLaw::uncapped(alpha)?;
        let mass = law.mass_bracket();
        println!(
            "alpha {alpha}: c = {:.12}, total mass in [{:.15}, {:.15}], P(d >= 100) = {:.3e}",
            law.c_alpha(),
            mass.lo,
            mass.hi,
            law.tail(100)
        );
    }

    let law = JumpLaw::uncapped(2.5)?;
    let mut rng = stream(42, &[]);
    let n = 1_000_000;
    let mut counts = [0u64; 6];
    let mut longest = 0;
    for _ in 0..n {
        let d = law.sample(&mut rng);
        longest = longest.max(d);
        if (d as usize) < counts.len() {
            counts[d as usize] += 1;
        }
    }
    println!("\nalpha 2.5, {n} draws (longest {longest}):");
    for (d, c) in counts.iter().enumerate() {
        println!("  d = {d}: observed {:.5}  exact {:.5}", *c as f64 / n as f64, law.pmf(d as u64));
    }

    let capped = JumpLaw::new(2.5, Some(10))?;
    println!("\ncapped at 10: P(d = 10) = {:.6}, P(d = 11) = {}", capped.pmf(10), capped.pmf(11));
    Ok(())
}

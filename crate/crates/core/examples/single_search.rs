//! Hit probability of one walker within the regime's natural budget, for a
//! few distances, next to the predicted slope.

use levy_search::experiments::{estimate_hit_prob, fit_power_law, reference_curves, HitProbConfig};

fn main() -> levy_search::Result<()> {
    let ells = [8u64, 16, 32, 64];
    for alpha in [1.5, 2.5, 4.0] {
        let mut points = Vec::new();
        for &ell in &ells {
            let curves = reference_curves(alpha, ell, 1)?;
            let budget = curves.budget(if alpha > 3.0 { 1.0 } else { 4.0 });
            let est = estimate_hit_prob(&HitProbConfig::new(alpha, ell, budget, 5000, ell))?;
            println!(
                "alpha {alpha} ell {ell:>3} budget {budget:>7}: p_hat {:.4}  95% CI [{:.4}, {:.4}]",
                est.p_hat, est.ci95.0, est.ci95.1
            );
            points.push((ell as f64, est.p_hat));
        }
        let fit = fit_power_law(&points)?;
        let predicted = reference_curves(alpha, 2, 1)?.hit_prob_exponent;
        println!("  fitted slope {:.3}, predicted {predicted} up to log factors\n", fit.slope);
    }
    Ok(())
}

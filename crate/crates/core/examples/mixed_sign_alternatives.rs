//! Tries alternative shared laws for mixed-sign coefficients.

use maxid::nonuniqueness::explore_alternatives;
use maxid::{ComponentSystem, DistributionSpec, ScaleCoefficients};

fn main() -> maxid::Result<()> {
    let e = |r| DistributionSpec::exponential(r);
    let sys = ComponentSystem::independent(e(1.0)?, e(1.0)?, e(1.0)?)?;
    let k = ScaleCoefficients::mixed_sign(1.0, -1.0, 1.0, -1.0)?;
    let grid: Vec<f64> = (1..=100).map(|i| 0.08 * i as f64).collect();
    let rates = [0.2, 0.5, 1.0, 1.25, 2.0, std::f64::consts::E.powi(2)];
    let cands = rates.iter().map(|&r| e(r)).collect::<maxid::Result<Vec<_>>>()?;

    let report = explore_alternatives(&sys, &k, &cands, &grid)?;
    for (entry, rate) in report.entries.iter().zip(rates) {
        println!(
            "s1 = exp({rate:.3}): identity {}, {:?}, verdict {:?}",
            entry.is_identity, entry.validity, entry.equivalence
        );
    }
    println!("{} valid candidates", report.valid_candidates);
    Ok(())
}

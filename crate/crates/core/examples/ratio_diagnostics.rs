//! Compares two systems through the ratio identities and writes the table.

use maxid::identification::ratio_diagnostics;
use maxid::{ComponentSystem, DistributionSpec, ScaleCoefficients};

fn main() -> maxid::Result<()> {
    let k = ScaleCoefficients::all_positive(1.0, 2.0, 1.0, 3.0)?;
    let grid: Vec<f64> = (-8..=8).map(|i| 2f64.powf(i as f64 / 4.0)).collect();
    let base = ComponentSystem::independent(
        DistributionSpec::exponential(1.0)?,
        DistributionSpec::exponential(0.5)?,
        DistributionSpec::exponential(1.5)?,
    )?;
    let bump = DistributionSpec::mixture(
        vec![0.95, 0.05],
        vec![DistributionSpec::exponential(1.5)?, DistributionSpec::weibull(20.0, 1.0)?],
    )?;
    let other = ComponentSystem::independent(base.fx().clone(), base.fy().clone(), bump)?;

    let same = ratio_diagnostics(&base, &base, &k, &grid)?;
    let diff = ratio_diagnostics(&base, &other, &k, &grid)?;
    println!("same system: max residual {:.1e}", same.max_residual_product());
    println!("perturbed:   max residual {:.3e}", diff.max_residual_product());
    diff.write_csv(std::io::stdout().lock(), &grid)?;
    Ok(())
}

//! Closed-form recovery when one component is shared with unit coefficients.

use maxid::identification::recover_kotlarski;
use maxid::max_model::sample_kotlarski;
use maxid::{DistributionSpec, JointCdf2D};

fn main() -> maxid::Result<()> {
    let f0 = DistributionSpec::exponential(1.0)?;
    let f1 = DistributionSpec::weibull(1.5, 1.0)?;
    let f2 = DistributionSpec::exponential(0.7)?;
    let grid: Vec<f64> = (1..=20).map(|i| 0.15 * i as f64).collect();

    let exact = recover_kotlarski(&JointCdf2D::kotlarski(f0.clone(), f1.clone(), f2.clone())?, &grid)?;
    let pairs = sample_kotlarski(&f0, &f1, &f2, 200_000, 3)?;
    let noisy = recover_kotlarski(&JointCdf2D::empirical(pairs)?, &grid)?;

    println!("{:>5} {:>9} {:>9} {:>9}", "t", "F0", "exact", "sample");
    for &t in grid.iter().step_by(3) {
        println!("{t:>5.2} {:>9.5} {:>9.5} {:>9.5}", f0.cdf(t), exact.fz1_hat.cdf(t), noisy.fz1_hat.cdf(t));
    }
    Ok(())
}

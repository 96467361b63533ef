use maxid::identification::region_quotient_fz1;
use maxid::{ComponentSystem, DistributionSpec, JointCdf2D, ScaleCoefficients};

fn main() -> maxid::Result<()> {
    let sys = ComponentSystem::independent(
        DistributionSpec::exponential(1.0)?,
        DistributionSpec::exponential(2.0)?,
        DistributionSpec::weibull(2.0, 1.0)?,
    )?;
    let grid: Vec<f64> = (1..=12).map(|i| 0.25 * i as f64).collect();
    for (a, b, c, d) in [(1.0, 2.0, 1.0, 4.0), (1.0, 2.0, 2.0, 1.0), (1.0, 1.0, 1.0, 1.0)] {
        let k = ScaleCoefficients::all_positive(a, b, c, d)?;
        let q = region_quotient_fz1(&JointCdf2D::analytic(sys.clone(), k)?, &k, &grid)?;
        let err = grid.iter().map(|&z| (q.fz1_hat.cdf(z) - sys.fz1().cdf(z)).abs()).fold(0.0, f64::max);
        println!("({a},{b},{c},{d}) {:?}: max error {err:.1e}, skipped {}", q.region, q.skipped.len());
    }
    Ok(())
}

//! Evaluates the joint CDF of the maxima pair and compares it with a sample.

use maxid::max_model::{joint_cdf, marginal_u, marginal_v, sample_joint};
use maxid::{ComponentSystem, DistributionSpec, JointCdf2D, JointDistribution, ScaleCoefficients};

fn main() -> maxid::Result<()> {
    let sys = ComponentSystem::independent(
        DistributionSpec::exponential(1.0)?,
        DistributionSpec::weibull(1.5, 1.0)?,
        DistributionSpec::exponential(0.5)?,
    )?;
    let k = ScaleCoefficients::all_positive(1.0, 2.0, 1.5, 0.5)?;
    let emp = JointCdf2D::empirical(sample_joint(&sys, &k, 100_000, 7)?)?;

    println!("{:>6} {:>6} {:>10} {:>10}", "t1", "t2", "analytic", "sample");
    for &(t1, t2) in &[(0.5, 0.5), (1.0, 2.0), (2.0, 1.0), (3.0, 3.0)] {
        println!("{t1:>6.2} {t2:>6.2} {:>10.5} {:>10.5}", joint_cdf(&sys, &k, t1, t2)?, emp.eval(t1, t2));
    }
    println!("F_U(2) = {:.5}, F_V(2) = {:.5}", marginal_u(&sys, &k, 2.0)?, marginal_v(&sys, &k, 2.0)?);

    // mixed signs switch the second shock to a survival factor
    let mixed = ScaleCoefficients::mixed_sign(1.0, -1.0, 1.0, -1.0)?;
    println!("mixed G(1, 1) = {:.5}", joint_cdf(&sys, &mixed, 1.0, 1.0)?);
    Ok(())
}

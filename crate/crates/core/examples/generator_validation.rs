use maxid::max_independence::validate_generator;
use maxid::{DistributionSpec, GeneratorSpec};

fn main() -> maxid::Result<()> {
    let e = DistributionSpec::exponential(1.0)?;
    for alpha in [-0.99, -0.5, 0.0, 0.5, -1.5] {
        let r = validate_generator(&GeneratorSpec::fgm(alpha), [&e, &e, &e, &e], 7)?;
        println!(
            "α = {alpha:>5}: passed {:<5} β ∈ [{:.3}, {:.3}] witness {:?}",
            r.passed, r.beta_min, r.beta_max, r.bound_witness
        );
    }
    Ok(())
}

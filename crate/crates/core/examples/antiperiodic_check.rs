use maxid::identification::{antiperiodic_vanishing_check, TabulatedFn};

fn main() -> maxid::Result<()> {
    let lambda: f64 = 2.0;
    let u: Vec<f64> = (-12..=12).map(|k| lambda.powf(k as f64 / 4.0)).collect();
    let cases: [(&str, Box<dyn Fn(f64) -> f64>, bool); 3] = [
        ("zero", Box::new(|_| 0.0), true),
        ("cdf ratio", Box::new(|t: f64| ((1.0 - (-t).exp()) / (1.0 - (-2.0 * t).exp())).ln()), true),
        ("cosine", Box::new(move |t: f64| (std::f64::consts::PI * t.ln() / lambda.ln()).cos()), false),
    ];
    for (name, f, decay) in cases {
        let zeta = TabulatedFn::from_fn(&u, f)?;
        println!("{name:>10}: {:?}", antiperiodic_vanishing_check(&zeta, lambda, decay, 1e-10)?);
    }
    Ok(())
}

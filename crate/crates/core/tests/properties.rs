use maxid::max_independence::beta_eval;
use maxid::max_model::{joint_cdf, sample_joint};
use maxid::{ComponentSystem, Dependence, DistributionSpec, GeneratorSpec, ScaleCoefficients};
use proptest::prelude::*;

fn family() -> impl Strategy<Value = DistributionSpec> {
    prop_oneof![
        (0.2f64..5.0).prop_map(|r| DistributionSpec::exponential(r).unwrap()),
        (0.5f64..4.0, 0.3f64..3.0).prop_map(|(k, s)| DistributionSpec::weibull(k, s).unwrap()),
    ]
}

fn positive_coeffs() -> impl Strategy<Value = ScaleCoefficients> {
    (0.2f64..4.0, 0.2f64..4.0, 0.2f64..4.0, 0.2f64..4.0)
        .prop_map(|(a, b, c, d)| ScaleCoefficients::all_positive(a, b, c, d).unwrap())
}

fn mixed_coeffs() -> impl Strategy<Value = ScaleCoefficients> {
    (0.2f64..4.0, 0.2f64..4.0, 0.2f64..4.0, 0.2f64..4.0)
        .prop_map(|(a, b, c, d)| ScaleCoefficients::mixed_sign(a, -b, c, -d).unwrap())
}

fn coeffs() -> impl Strategy<Value = ScaleCoefficients> {
    prop_oneof![positive_coeffs(), mixed_coeffs()]
}

fn system() -> impl Strategy<Value = ComponentSystem> {
    (family(), family(), family()).prop_map(|(x, y, z)| ComponentSystem::independent(x, y, z).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quantile_inverts_cdf(f in family(), p in 0.001f64..0.999) {
        let q = f.quantile(p).unwrap();
        prop_assert!((f.cdf(q) - p).abs() < 1e-9);
    }

    #[test]
    fn cdf_is_monotone(f in family(), a in 0.0f64..10.0, b in 0.0f64..10.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(f.cdf(lo) <= f.cdf(hi));
        prop_assert!((0.0..=1.0).contains(&f.cdf(lo)));
    }

    #[test]
    fn joint_cdf_is_two_increasing(
        sys in system(),
        k in coeffs(),
        t in (0.0f64..5.0, 0.0f64..5.0, 0.01f64..2.0, 0.01f64..2.0),
    ) {
        let (x1, y1, dx, dy) = t;
        let (x2, y2) = (x1 + dx, y1 + dy);
        let g = |a, b| joint_cdf(&sys, &k, a, b).unwrap();
        let mass = g(x2, y2) - g(x1, y2) - g(x2, y1) + g(x1, y1);
        prop_assert!(mass >= -1e-12, "rectangle mass {}", mass);
        prop_assert!(g(x1, y1) <= g(x2, y1) + 1e-15 && g(x1, y1) <= g(x1, y2) + 1e-15);
    }

    #[test]
    fn joint_cdf_limits(sys in system(), k in coeffs()) {
        prop_assert_eq!(joint_cdf(&sys, &k, f64::INFINITY, f64::INFINITY).unwrap(), 1.0);
        if k.regime() == maxid::Regime::AllPositive {
            prop_assert_eq!(joint_cdf(&sys, &k, 0.0, 1.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn sampling_is_deterministic(sys in system(), k in coeffs(), seed in any::<u64>()) {
        let a = sample_joint(&sys, &k, 32, seed).unwrap();
        let b = sample_joint(&sys, &k, 32, seed).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn fgm_beta_in_range(alpha in -1.0f64..=0.0, x in prop::array::uniform4(0.0f64..6.0)) {
        let e = DistributionSpec::exponential(1.0).unwrap();
        let b = beta_eval(&GeneratorSpec::fgm(alpha), [&e, &e, &e, &e], x);
        prop_assert!(b > 0.0 && b <= 1.0 + 1e-15, "β = {}", b);
    }

    #[test]
    fn maxind_joint_is_two_increasing(
        alpha in -0.99f64..=0.0,
        k in positive_coeffs(),
        t in (0.0f64..4.0, 0.0f64..4.0, 0.01f64..2.0, 0.01f64..2.0),
    ) {
        let e = DistributionSpec::exponential(1.0).unwrap();
        let dep = Dependence::MaxIndependent { generator: GeneratorSpec::fgm(alpha) };
        let sys = ComponentSystem::new(e.clone(), e.clone(), e, dep).unwrap();
        let (x1, y1, dx, dy) = t;
        let g = |a, b| joint_cdf(&sys, &k, a, b).unwrap();
        let mass = g(x1 + dx, y1 + dy) - g(x1, y1 + dy) - g(x1 + dx, y1) + g(x1, y1);
        prop_assert!(mass >= -1e-12, "rectangle mass {}", mass);
    }
}

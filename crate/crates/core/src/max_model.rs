//! Forward model for `(U, V) = (max(X, aZ₁, bZ₂), max(Y, cZ₁, dZ₂))`.
//!
//! With all coefficients positive and independent components,
//!
//! ```text
//! G(t₁, t₂) = F_X(t₁)·F_Y(t₂)·F_Z(min(t₁/a, t₂/c))·F_Z(min(t₁/b, t₂/d)).
//! ```
//!
//! With `a, c > 0 > b, d` the second shock enters through its survival
//! function, `P(Z₂ ≥ max(t₁/b, t₂/d))`. Max-independent components
//! multiply the positive-regime product by `β(t₁, t₂, m₁, m₂)`.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::distributions::DistributionSpec;
use crate::error::{Error, Result};
use crate::max_independence::{self, Generator, GeneratorSpec, DEFAULT_POINTS_PER_AXIS};
use crate::rng::{stream, UniformStream};

/// Floor below which CDF values are not used as denominators.
pub const CDF_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `a, b, c, d > 0`.
    AllPositive,
    /// `a > 0, b < 0, c > 0, d < 0`.
    MixedSign,
}

/// The known constants `a, b, c, d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CoefficientsRepr", into = "CoefficientsRepr")]
pub struct ScaleCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    regime: Regime,
}

#[derive(Serialize, Deserialize)]
struct CoefficientsRepr {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    regime: Option<Regime>,
}

impl TryFrom<CoefficientsRepr> for ScaleCoefficients {
    type Error = Error;

    fn try_from(r: CoefficientsRepr) -> Result<Self> {
        match r.regime {
            Some(regime) => Self::with_regime(r.a, r.b, r.c, r.d, regime),
            None => Self::new(r.a, r.b, r.c, r.d),
        }
    }
}

impl From<ScaleCoefficients> for CoefficientsRepr {
    fn from(s: ScaleCoefficients) -> Self {
        Self { a: s.a, b: s.b, c: s.c, d: s.d, regime: Some(s.regime) }
    }
}

impl ScaleCoefficients {
    /// Infers the regime from the signs.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        if [a, b, c, d].iter().all(|x| x.is_finite() && *x > 0.0) {
            Ok(Self { a, b, c, d, regime: Regime::AllPositive })
        } else if [a, b, c, d].iter().all(|x| x.is_finite()) && a > 0.0 && b < 0.0 && c > 0.0 && d < 0.0 {
            Ok(Self { a, b, c, d, regime: Regime::MixedSign })
        } else {
            Err(Error::Config(format!(
                "coefficients ({a}, {b}, {c}, {d}) fit neither the all-positive regime nor the \
                 mixed-sign regime a > 0, b < 0, c > 0, d < 0"
            )))
        }
    }

    /// Checks the signs against a declared regime.
    pub fn with_regime(a: f64, b: f64, c: f64, d: f64, regime: Regime) -> Result<Self> {
        let s = Self::new(a, b, c, d).map_err(|_| regime_violation(regime, a, b, c, d))?;
        if s.regime != regime {
            return Err(regime_violation(regime, a, b, c, d));
        }
        Ok(s)
    }

    pub fn all_positive(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Self::with_regime(a, b, c, d, Regime::AllPositive)
    }

    pub fn mixed_sign(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Self::with_regime(a, b, c, d, Regime::MixedSign)
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// `λ = a / b`.
    pub fn lambda(&self) -> f64 {
        self.a / self.b
    }

    pub(crate) fn require(&self, regime: Regime) -> Result<()> {
        if self.regime == regime {
            Ok(())
        } else {
            Err(regime_violation(regime, self.a, self.b, self.c, self.d))
        }
    }

    /// The shock arguments `(min(t₁/a, t₂/c), min(t₁/b, t₂/d))`.
    pub fn shock_arguments(&self, t1: f64, t2: f64) -> (f64, f64) {
        ((t1 / self.a).min(t2 / self.c), (t1 / self.b).min(t2 / self.d))
    }
}

fn regime_violation(regime: Regime, a: f64, b: f64, c: f64, d: f64) -> Error {
    match regime {
        Regime::AllPositive => Error::Config(format!(
            "the all-positive regime requires a, b, c, d > 0, got ({a}, {b}, {c}, {d})"
        )),
        Regime::MixedSign => Error::Config(format!(
            "the mixed-sign regime requires a > 0, b < 0, c > 0, d < 0, got ({a}, {b}, {c}, {d})"
        )),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Dependence {
    Independent,
    MaxIndependent { generator: GeneratorSpec },
}

/// The components `X, Y, Z₁` (with `Z₂` distributed as `Z₁`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SystemRepr", into = "SystemRepr")]
pub struct ComponentSystem {
    fx: DistributionSpec,
    fy: DistributionSpec,
    fz1: DistributionSpec,
    dependence: Dependence,
}

#[derive(Serialize, Deserialize)]
struct SystemRepr {
    x: DistributionSpec,
    y: DistributionSpec,
    z: DistributionSpec,
    #[serde(default = "independent")]
    dependence: Dependence,
}

fn independent() -> Dependence {
    Dependence::Independent
}

impl TryFrom<SystemRepr> for ComponentSystem {
    type Error = Error;

    fn try_from(r: SystemRepr) -> Result<Self> {
        Self::new(r.x, r.y, r.z, r.dependence)
    }
}

impl From<ComponentSystem> for SystemRepr {
    fn from(s: ComponentSystem) -> Self {
        Self { x: s.fx, y: s.fy, z: s.fz1, dependence: s.dependence }
    }
}

impl ComponentSystem {
    /// Requires a common support and, for max-independent systems, a
    /// generator that passes validation on the default lattice.
    pub fn new(fx: DistributionSpec, fy: DistributionSpec, fz1: DistributionSpec, dependence: Dependence) -> Result<Self> {
        if !(fx.support().same_as(fy.support()) && fx.support().same_as(fz1.support())) {
            return Err(Error::Config(format!(
                "components must share one support: X on {:?}, Y on {:?}, Z on {:?}",
                fx.support(),
                fy.support(),
                fz1.support()
            )));
        }
        let system = Self { fx, fy, fz1, dependence };
        if let Dependence::MaxIndependent { generator } = &system.dependence {
            let report = max_independence::validate_generator(generator, system.marginals(), DEFAULT_POINTS_PER_AXIS)?;
            if !report.passed {
                return Err(Error::Config(format!(
                    "generator fails validation (β range [{}, {}], boundary deviation {}, minimum cell mass {})",
                    report.beta_min, report.beta_max, report.boundary_max_deviation, report.rectangle_min
                )));
            }
        }
        Ok(system)
    }

    pub fn independent(fx: DistributionSpec, fy: DistributionSpec, fz1: DistributionSpec) -> Result<Self> {
        Self::new(fx, fy, fz1, Dependence::Independent)
    }

    pub fn fx(&self) -> &DistributionSpec {
        &self.fx
    }

    pub fn fy(&self) -> &DistributionSpec {
        &self.fy
    }

    pub fn fz1(&self) -> &DistributionSpec {
        &self.fz1
    }

    pub fn dependence(&self) -> &Dependence {
        &self.dependence
    }

    /// `[F_X, F_Y, F_Z, F_Z]`.
    pub fn marginals(&self) -> [&DistributionSpec; 4] {
        [&self.fx, &self.fy, &self.fz1, &self.fz1]
    }

    /// The generator bound to this system's marginals, if any.
    pub fn generator(&self) -> Option<Generator> {
        match &self.dependence {
            Dependence::Independent => None,
            Dependence::MaxIndependent { generator } => Some(
                Generator::new(
                    generator.clone(),
                    [self.fx.clone(), self.fy.clone(), self.fz1.clone(), self.fz1.clone()],
                )
                .expect("generator validated at construction"),
            ),
        }
    }
}

fn require_independent(system: &ComponentSystem) -> Result<()> {
    match system.dependence {
        Dependence::Independent => Ok(()),
        Dependence::MaxIndependent { .. } => Err(Error::Config(
            "this evaluation assumes independent components; the system is max-independent".into(),
        )),
    }
}

fn positive_product(system: &ComponentSystem, coeffs: &ScaleCoefficients, t1: f64, t2: f64) -> f64 {
    let (m1, m2) = coeffs.shock_arguments(t1, t2);
    system.fx.cdf(t1) * system.fy.cdf(t2) * system.fz1.cdf(m1) * system.fz1.cdf(m2)
}

/// `G` for independent components and positive coefficients.
pub fn joint_cdf_positive(system: &ComponentSystem, coeffs: &ScaleCoefficients, t1: f64, t2: f64) -> Result<f64> {
    coeffs.require(Regime::AllPositive)?;
    require_independent(system)?;
    Ok(positive_product(system, coeffs, t1, t2))
}

/// `G` for independent components and `a, c > 0 > b, d`. The survival
/// factor is `P(Z₂ ≥ s) = 1 − F(s⁻)`.
pub fn joint_cdf_mixed(system: &ComponentSystem, coeffs: &ScaleCoefficients, t1: f64, t2: f64) -> Result<f64> {
    coeffs.require(Regime::MixedSign)?;
    require_independent(system)?;
    Ok(mixed_product(system.fx(), system.fy(), system.fz1(), coeffs, t1, t2))
}

pub(crate) fn mixed_product(
    fx: &DistributionSpec,
    fy: &DistributionSpec,
    fz: &DistributionSpec,
    coeffs: &ScaleCoefficients,
    t1: f64,
    t2: f64,
) -> f64 {
    let lower = (t1 / coeffs.a).min(t2 / coeffs.c);
    let upper = (t1 / coeffs.b).max(t2 / coeffs.d);
    fx.cdf(t1) * fy.cdf(t2) * fz.cdf(lower) * fz.survival_closed(upper)
}

/// `G` for max-independent components and positive coefficients.
pub fn joint_cdf_maxind(system: &ComponentSystem, coeffs: &ScaleCoefficients, t1: f64, t2: f64) -> Result<f64> {
    coeffs.require(Regime::AllPositive)?;
    let Dependence::MaxIndependent { generator } = &system.dependence else {
        return Err(Error::Config("system is not max-independent".into()));
    };
    let (m1, m2) = coeffs.shock_arguments(t1, t2);
    let beta = max_independence::beta_eval(generator, system.marginals(), [t1, t2, m1, m2]);
    Ok(positive_product(system, coeffs, t1, t2) * beta)
}

/// `P(max(X₀, X₁) ≤ t₁, max(X₀, X₂) ≤ t₂) = F₁(t₁)F₂(t₂)F₀(min(t₁, t₂))`.
pub fn joint_cdf_kotlarski(f0: &DistributionSpec, f1: &DistributionSpec, f2: &DistributionSpec, t1: f64, t2: f64) -> f64 {
    f1.cdf(t1) * f2.cdf(t2) * f0.cdf(t1.min(t2))
}

/// Dispatches on regime and dependence.
pub fn joint_cdf(system: &ComponentSystem, coeffs: &ScaleCoefficients, t1: f64, t2: f64) -> Result<f64> {
    match (coeffs.regime(), system.dependence()) {
        (Regime::AllPositive, Dependence::Independent) => joint_cdf_positive(system, coeffs, t1, t2),
        (Regime::MixedSign, Dependence::Independent) => joint_cdf_mixed(system, coeffs, t1, t2),
        (Regime::AllPositive, Dependence::MaxIndependent { .. }) => joint_cdf_maxind(system, coeffs, t1, t2),
        (Regime::MixedSign, Dependence::MaxIndependent { .. }) => Err(Error::Config(
            "max-independent components are only modelled with positive coefficients".into(),
        )),
    }
}

/// `F_U(t) = G(t, +∞)`.
pub fn marginal_u(system: &ComponentSystem, coeffs: &ScaleCoefficients, t: f64) -> Result<f64> {
    joint_cdf(system, coeffs, t, f64::INFINITY)
}

/// `F_V(t) = G(+∞, t)`.
pub fn marginal_v(system: &ComponentSystem, coeffs: &ScaleCoefficients, t: f64) -> Result<f64> {
    joint_cdf(system, coeffs, f64::INFINITY, t)
}

/// Draws `(U, V)` pairs. Each component uses its own seeded stream.
pub fn sample_joint(system: &ComponentSystem, coeffs: &ScaleCoefficients, n: usize, seed: u64) -> Result<Vec<(f64, f64)>> {
    if n == 0 {
        return Err(Error::InvalidArgument("sample size must be at least 1".into()));
    }
    let draws: Vec<[f64; 4]> = match &system.dependence {
        Dependence::Independent => {
            let mut xs = UniformStream::new(seed, stream::X);
            let mut ys = UniformStream::new(seed, stream::Y);
            let mut z1s = UniformStream::new(seed, stream::Z1);
            let mut z2s = UniformStream::new(seed, stream::Z2);
            (0..n)
                .map(|_| {
                    [
                        system.fx.transform_uniform(xs.next_open01()),
                        system.fy.transform_uniform(ys.next_open01()),
                        system.fz1.transform_uniform(z1s.next_open01()),
                        system.fz1.transform_uniform(z2s.next_open01()),
                    ]
                })
                .collect()
        }
        Dependence::MaxIndependent { generator } => {
            coeffs.require(Regime::AllPositive)?;
            max_independence::sample_maxind(generator, system.marginals(), n, seed)
                .map_err(|e| match e {
                    Error::UnsupportedSampler(m) => Error::Config(m),
                    other => other,
                })?
        }
    };
    Ok(draws
        .into_iter()
        .map(|[x, y, z1, z2]| {
            (
                x.max(coeffs.a * z1).max(coeffs.b * z2),
                y.max(coeffs.c * z1).max(coeffs.d * z2),
            )
        })
        .collect())
}

/// Draws `(max(X₀, X₁), max(X₀, X₂))` pairs.
pub fn sample_kotlarski(
    f0: &DistributionSpec,
    f1: &DistributionSpec,
    f2: &DistributionSpec,
    n: usize,
    seed: u64,
) -> Result<Vec<(f64, f64)>> {
    if n == 0 {
        return Err(Error::InvalidArgument("sample size must be at least 1".into()));
    }
    let mut s0 = UniformStream::new(seed, stream::Z1);
    let mut s1 = UniformStream::new(seed, stream::X);
    let mut s2 = UniformStream::new(seed, stream::Y);
    Ok((0..n)
        .map(|_| {
            let x0 = f0.transform_uniform(s0.next_open01());
            let x1 = f1.transform_uniform(s1.next_open01());
            let x2 = f2.transform_uniform(s2.next_open01());
            (x0.max(x1), x0.max(x2))
        })
        .collect())
}

/// Anything that evaluates a bivariate CDF.
pub trait JointDistribution: Sync {
    fn eval(&self, t1: f64, t2: f64) -> f64;

    fn eval_batch(&self, points: &[(f64, f64)]) -> Vec<f64> {
        points.iter().map(|&(t1, t2)| self.eval(t1, t2)).collect()
    }
}

/// An evaluable joint CDF of `(U, V)`.
#[derive(Debug, Clone, PartialEq)]
pub enum JointCdf2D {
    Analytic { system: ComponentSystem, coeffs: ScaleCoefficients },
    /// One common component with unit coefficients.
    Kotlarski { f0: DistributionSpec, f1: DistributionSpec, f2: DistributionSpec },
    Empirical { pairs: Vec<(f64, f64)> },
    /// Empirical law with each indicator replaced by a Gaussian CDF of the
    /// given bandwidth. Still a proper bivariate CDF.
    Smoothed { pairs: Vec<(f64, f64)>, bandwidth: f64 },
    /// Bilinear interpolation of a grid; zero below the first node of either
    /// axis, clamped to the last node above.
    Tabulated(JointTable),
}

impl JointCdf2D {
    pub fn analytic(system: ComponentSystem, coeffs: ScaleCoefficients) -> Result<Self> {
        if coeffs.regime() == Regime::MixedSign && system.dependence() != &Dependence::Independent {
            return Err(Error::Config(
                "max-independent components are only modelled with positive coefficients".into(),
            ));
        }
        Ok(Self::Analytic { system, coeffs })
    }

    pub fn kotlarski(f0: DistributionSpec, f1: DistributionSpec, f2: DistributionSpec) -> Result<Self> {
        if !(f0.support().same_as(f1.support()) && f0.support().same_as(f2.support())) {
            return Err(Error::Config("components must share one support".into()));
        }
        Ok(Self::Kotlarski { f0, f1, f2 })
    }

    pub fn empirical(pairs: Vec<(f64, f64)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidArgument("empirical joint CDF needs at least one pair".into()));
        }
        if pairs.iter().any(|(u, v)| !(u.is_finite() && v.is_finite())) {
            return Err(Error::InvalidArgument("sample pairs must be finite".into()));
        }
        Ok(Self::Empirical { pairs })
    }

    pub fn smoothed(pairs: Vec<(f64, f64)>, bandwidth: f64) -> Result<Self> {
        if !(bandwidth.is_finite() && bandwidth > 0.0) {
            return Err(Error::InvalidArgument(format!("bandwidth must be positive, got {bandwidth}")));
        }
        match Self::empirical(pairs)? {
            Self::Empirical { pairs } => Ok(Self::Smoothed { pairs, bandwidth }),
            _ => unreachable!(),
        }
    }

    /// Tabulates on the product grid `t1 × t2`.
    pub fn tabulate(&self, t1: &[f64], t2: &[f64]) -> JointTable {
        let points: Vec<(f64, f64)> = t1.iter().flat_map(|&a| t2.iter().map(move |&b| (a, b))).collect();
        let flat = self.eval_batch(&points);
        let values = flat.chunks(t2.len().max(1)).map(<[f64]>::to_vec).collect();
        JointTable { t1: t1.to_vec(), t2: t2.to_vec(), values }
    }
}

fn std_normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

impl JointDistribution for JointCdf2D {
    fn eval(&self, t1: f64, t2: f64) -> f64 {
        match self {
            Self::Analytic { system, coeffs } => joint_cdf(system, coeffs, t1, t2).expect("validated at construction"),
            Self::Kotlarski { f0, f1, f2 } => joint_cdf_kotlarski(f0, f1, f2, t1, t2),
            Self::Empirical { pairs } => {
                pairs.iter().filter(|(u, v)| *u <= t1 && *v <= t2).count() as f64 / pairs.len() as f64
            }
            Self::Smoothed { pairs, bandwidth } => {
                pairs
                    .iter()
                    .map(|(u, v)| std_normal_cdf((t1 - u) / bandwidth) * std_normal_cdf((t2 - v) / bandwidth))
                    .sum::<f64>()
                    / pairs.len() as f64
            }
            Self::Tabulated(table) => table.eval(t1, t2),
        }
    }

    fn eval_batch(&self, points: &[(f64, f64)]) -> Vec<f64> {
        match self {
            Self::Empirical { pairs } => empirical_counts(pairs, points),
            _ => points.iter().map(|&(t1, t2)| self.eval(t1, t2)).collect(),
        }
    }
}

/// Offline dominance counting: sweep queries in `t₁` order while inserting
/// points into a Fenwick tree over `v` ranks.
fn empirical_counts(pairs: &[(f64, f64)], queries: &[(f64, f64)]) -> Vec<f64> {
    let n = pairs.len();
    let mut by_v: Vec<usize> = (0..n).collect();
    by_v.sort_by(|&i, &j| pairs[i].1.total_cmp(&pairs[j].1));
    let sorted_v: Vec<f64> = by_v.iter().map(|&i| pairs[i].1).collect();
    let mut rank = vec![0usize; n];
    for (r, &i) in by_v.iter().enumerate() {
        rank[i] = r;
    }
    let mut by_u: Vec<usize> = (0..n).collect();
    by_u.sort_by(|&i, &j| pairs[i].0.total_cmp(&pairs[j].0));
    let mut order: Vec<usize> = (0..queries.len()).collect();
    order.sort_by(|&i, &j| queries[i].0.total_cmp(&queries[j].0));

    let mut tree = vec![0u32; n + 1];
    let mut next = 0;
    let mut out = vec![0.0; queries.len()];
    for q in order {
        let (t1, t2) = queries[q];
        if t1.is_nan() || t2.is_nan() {
            out[q] = f64::NAN;
            continue;
        }
        while next < n && pairs[by_u[next]].0 <= t1 {
            let mut k = rank[by_u[next]] + 1;
            while k <= n {
                tree[k] += 1;
                k += k & k.wrapping_neg();
            }
            next += 1;
        }
        let mut k = sorted_v.partition_point(|&v| v <= t2);
        let mut count = 0u64;
        while k > 0 {
            count += u64::from(tree[k]);
            k -= k & k.wrapping_neg();
        }
        out[q] = count as f64 / n as f64;
    }
    out
}

/// JSON form `{"t1": [...], "t2": [...], "values": [[...]]}`, row-major
/// over `t1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointTable {
    pub t1: Vec<f64>,
    pub t2: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

impl JointTable {
    pub fn validate(&self) -> Result<()> {
        let increasing = |x: &[f64]| !x.is_empty() && x.windows(2).all(|w| w[0] < w[1]);
        if !increasing(&self.t1) || !increasing(&self.t2) {
            return Err(Error::InvalidArgument("joint table axes must be nonempty and increasing".into()));
        }
        if self.values.len() != self.t1.len() || self.values.iter().any(|r| r.len() != self.t2.len()) {
            return Err(Error::InvalidArgument("joint table shape does not match its axes".into()));
        }
        Ok(())
    }

    pub fn eval(&self, t1: f64, t2: f64) -> f64 {
        fn locate(axis: &[f64], t: f64) -> Option<(usize, f64)> {
            if t < axis[0] {
                return None;
            }
            if axis.len() == 1 || t >= axis[axis.len() - 1] {
                return Some((axis.len() - 1, 0.0));
            }
            let j = axis.partition_point(|&x| x <= t);
            Some((j - 1, (t - axis[j - 1]) / (axis[j] - axis[j - 1])))
        }
        let (Some((i, wi)), Some((j, wj))) = (locate(&self.t1, t1), locate(&self.t2, t2)) else {
            return 0.0;
        };
        let at = |i: usize, j: usize| self.values[i.min(self.t1.len() - 1)][j.min(self.t2.len() - 1)];
        (1.0 - wi) * (1.0 - wj) * at(i, j)
            + wi * (1.0 - wj) * at(i + 1, j)
            + (1.0 - wi) * wj * at(i, j + 1)
            + wi * wj * at(i + 1, j + 1)
    }
}

/// Writes pairs as CSV with header `u,v`.
pub fn write_pairs_csv<W: Write>(writer: W, pairs: &[(f64, f64)]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(writer);
    w.write_record(["u", "v"])?;
    for (u, v) in pairs {
        w.write_record([u.to_string(), v.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a `u,v` CSV.
pub fn read_pairs_csv<R: Read>(reader: R) -> Result<Vec<(f64, f64)>> {
    let mut r = csv::Reader::from_reader(reader);
    let headers = r.headers()?.clone();
    if headers.len() != 2 || headers[0].trim() != "u" || headers[1].trim() != "v" {
        return Err(Error::MalformedInput("sample file must have header 'u,v'".into()));
    }
    let parse = |s: &str, row: usize| -> Result<f64> {
        s.trim()
            .parse()
            .map_err(|_| Error::MalformedInput(format!("row {row}: '{s}' is not a number")))
    };
    let mut out = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        if rec.len() != 2 {
            return Err(Error::MalformedInput(format!("row {} has {} columns, expected 2", i + 1, rec.len())));
        }
        out.push((parse(&rec[0], i + 1)?, parse(&rec[1], i + 1)?));
    }
    Ok(out)
}

/// `inf{t : F(t) ≥ p}` for a nondecreasing `F`, by bracketing and
/// bisection starting from `[lo, hi]`.
pub fn invert_monotone(f: impl Fn(f64) -> f64, p: f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut step = (hi - lo).abs().max(1.0);
    while f(hi) < p {
        lo = hi;
        hi += step;
        step *= 2.0;
    }
    step = (hi - lo).abs().max(1.0);
    while f(lo) >= p {
        hi = lo;
        lo -= step;
        step *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) >= p {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

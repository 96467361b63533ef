//! One-dimensional distribution primitives.
//!
//! A [`DistributionSpec`] bundles a family, its support and a smoothness
//! flag. Every CDF in the crate (component laws, alternative systems,
//! recovered tables) is one of these.

mod support;
mod table;

pub use support::Support;
pub use table::{read_samples_csv, write_samples_csv, CdfTable};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::UniformStream;

/// The parametric or nonparametric form of a distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Exponential { rate: f64 },
    Uniform { lo: f64, hi: f64 },
    Weibull { shape: f64, scale: f64 },
    Frechet { shape: f64, scale: f64 },
    /// Monotone piecewise-linear CDF through `(nodes[i], values[i])`.
    /// Zero below the first node and one above the last.
    Tabulated { nodes: Vec<f64>, values: Vec<f64> },
    /// Step CDF of a sample. Samples are kept sorted.
    Empirical { samples: Vec<f64> },
    /// Finite mixture of components that share one support.
    Mixture { weights: Vec<f64>, components: Vec<DistributionSpec> },
}

/// A validated one-dimensional distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Family", into = "Family")]
pub struct DistributionSpec {
    family: Family,
    support: Support,
    smooth: bool,
}

impl TryFrom<Family> for DistributionSpec {
    type Error = Error;

    fn try_from(family: Family) -> Result<Self> {
        Self::from_family(family)
    }
}

impl From<DistributionSpec> for Family {
    fn from(spec: DistributionSpec) -> Self {
        spec.family
    }
}

fn positive_finite(name: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidSpec(format!("{name} must be positive and finite, got {x}")))
    }
}

impl DistributionSpec {
    pub fn from_family(family: Family) -> Result<Self> {
        match family {
            Family::Exponential { rate } => Self::exponential(rate),
            Family::Uniform { lo, hi } => Self::uniform(lo, hi),
            Family::Weibull { shape, scale } => Self::weibull(shape, scale),
            Family::Frechet { shape, scale } => Self::frechet(shape, scale),
            Family::Tabulated { nodes, values } => Self::tabulated(nodes, values),
            Family::Empirical { samples } => Self::empirical(samples),
            Family::Mixture { weights, components } => Self::mixture(weights, components),
        }
    }

    pub fn exponential(rate: f64) -> Result<Self> {
        positive_finite("exponential rate", rate)?;
        Ok(Self { family: Family::Exponential { rate }, support: Support::nonnegative(), smooth: true })
    }

    pub fn uniform(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidSpec(format!("uniform bounds must satisfy lo < hi, got ({lo}, {hi})")));
        }
        Ok(Self { family: Family::Uniform { lo, hi }, support: Support::closed(lo, hi)?, smooth: true })
    }

    pub fn weibull(shape: f64, scale: f64) -> Result<Self> {
        positive_finite("weibull shape", shape)?;
        positive_finite("weibull scale", scale)?;
        Ok(Self { family: Family::Weibull { shape, scale }, support: Support::nonnegative(), smooth: true })
    }

    pub fn frechet(shape: f64, scale: f64) -> Result<Self> {
        positive_finite("frechet shape", shape)?;
        positive_finite("frechet scale", scale)?;
        Ok(Self { family: Family::Frechet { shape, scale }, support: Support::positive(), smooth: true })
    }

    /// Tabulated CDF whose support is the node range.
    pub fn tabulated(nodes: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        validate_table(&nodes, &values)?;
        let support = Support::closed(nodes[0], nodes[nodes.len() - 1])?;
        Ok(Self { family: Family::Tabulated { nodes, values }, support, smooth: false })
    }

    /// Tabulated CDF declared on a wider support (for instance a table of a
    /// recovered law on a finite grid inside `(0, ∞)`).
    pub fn tabulated_on(nodes: Vec<f64>, values: Vec<f64>, support: Support) -> Result<Self> {
        validate_table(&nodes, &values)?;
        if nodes[0] < support.lower() || nodes[nodes.len() - 1] > support.upper() {
            return Err(Error::InvalidSpec("table nodes lie outside the declared support".into()));
        }
        Ok(Self { family: Family::Tabulated { nodes, values }, support, smooth: false })
    }

    pub fn empirical(mut samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidArgument("empirical CDF needs at least one sample".into()));
        }
        if samples.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidSpec("samples must be finite".into()));
        }
        samples.sort_by(f64::total_cmp);
        let support = Support::closed(samples[0], samples[samples.len() - 1])?;
        Ok(Self { family: Family::Empirical { samples }, support, smooth: false })
    }

    /// A point mass at `x`.
    pub fn point_mass(x: f64) -> Result<Self> {
        Self::empirical(vec![x])
    }

    pub fn mixture(weights: Vec<f64>, components: Vec<DistributionSpec>) -> Result<Self> {
        if components.is_empty() || weights.len() != components.len() {
            return Err(Error::InvalidSpec("mixture needs one weight per component".into()));
        }
        if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::InvalidSpec("mixture weights must be nonnegative".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidSpec(format!("mixture weights sum to {total}, expected 1")));
        }
        let support = components[0].support;
        if components.iter().any(|c| !c.support.same_as(&support)) {
            return Err(Error::InvalidSpec("mixture components must share one support".into()));
        }
        let smooth = components.iter().all(|c| c.smooth);
        Ok(Self { family: Family::Mixture { weights, components }, support, smooth })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn support(&self) -> &Support {
        &self.support
    }

    /// True when the CDF has a continuous derivative on its support.
    pub fn is_smooth(&self) -> bool {
        self.smooth
    }

    /// `F(t) = P(T ≤ t)`.
    pub fn cdf(&self, t: f64) -> f64 {
        if t.is_nan() {
            return f64::NAN;
        }
        match &self.family {
            Family::Exponential { rate } => {
                if t <= 0.0 {
                    0.0
                } else {
                    -(-rate * t).exp_m1()
                }
            }
            Family::Uniform { lo, hi } => ((t - lo) / (hi - lo)).clamp(0.0, 1.0),
            Family::Weibull { shape, scale } => {
                if t <= 0.0 {
                    0.0
                } else {
                    -(-(t / scale).powf(*shape)).exp_m1()
                }
            }
            Family::Frechet { shape, scale } => {
                if t <= 0.0 {
                    0.0
                } else {
                    (-(t / scale).powf(-shape)).exp()
                }
            }
            Family::Tabulated { nodes, values } => table_cdf(nodes, values, t),
            Family::Empirical { samples } => {
                samples.partition_point(|&x| x <= t) as f64 / samples.len() as f64
            }
            Family::Mixture { weights, components } => weights
                .iter()
                .zip(components)
                .map(|(w, c)| w * c.cdf(t))
                .sum::<f64>()
                .min(1.0),
        }
    }

    /// Left limit `F(t⁻) = P(T < t)`. Equal to [`cdf`](Self::cdf) for
    /// continuous families.
    pub fn cdf_left(&self, t: f64) -> f64 {
        match &self.family {
            Family::Tabulated { nodes, values } => {
                if t <= nodes[0] {
                    0.0
                } else {
                    table_cdf(nodes, values, t)
                }
            }
            Family::Empirical { samples } => {
                samples.partition_point(|&x| x < t) as f64 / samples.len() as f64
            }
            Family::Mixture { weights, components } => weights
                .iter()
                .zip(components)
                .map(|(w, c)| w * c.cdf_left(t))
                .sum::<f64>()
                .min(1.0),
            _ => self.cdf(t),
        }
    }

    /// `P(T ≥ t) = 1 − F(t⁻)`.
    pub fn survival_closed(&self, t: f64) -> f64 {
        1.0 - self.cdf_left(t)
    }

    /// Generalized inverse `inf{t : F(t) ≥ p}` for `p ∈ (0, 1)`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Domain(format!("quantile level {p} is outside (0, 1)")));
        }
        Ok(self.quantile_unchecked(p))
    }

    fn quantile_unchecked(&self, p: f64) -> f64 {
        match &self.family {
            Family::Exponential { rate } => -(-p).ln_1p() / rate,
            Family::Uniform { lo, hi } => lo + p * (hi - lo),
            Family::Weibull { shape, scale } => scale * (-(-p).ln_1p()).powf(1.0 / shape),
            Family::Frechet { shape, scale } => scale * (-p.ln()).powf(-1.0 / shape),
            Family::Tabulated { nodes, values } => table_quantile(nodes, values, p),
            Family::Empirical { samples } => {
                let n = samples.len();
                let k = (n as f64 * p).ceil() as usize;
                samples[k.clamp(1, n) - 1]
            }
            Family::Mixture { components, .. } => {
                let qs = components.iter().map(|c| c.quantile_unchecked(p));
                let (mut lo, mut hi) = qs.fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), q| {
                    (l.min(q), h.max(q))
                });
                if self.cdf(lo) >= p {
                    return lo;
                }
                // invariant: F(lo) < p <= F(hi)
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if self.cdf(mid) >= p {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                hi
            }
        }
    }

    /// `n` inverse-transform draws from the stream `(seed, 0)`.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Vec<f64>> {
        if n == 0 {
            return Err(Error::InvalidArgument("sample size must be at least 1".into()));
        }
        let mut stream = UniformStream::new(seed, 0);
        Ok(self.sample_from(&mut stream, n))
    }

    pub(crate) fn sample_from(&self, stream: &mut UniformStream, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.quantile_unchecked(stream.next_open01())).collect()
    }

    /// Inverse transform of a single uniform in `(0, 1)`.
    pub(crate) fn transform_uniform(&self, u: f64) -> f64 {
        self.quantile_unchecked(u)
    }

    /// Node/value table for tabulated and empirical laws.
    pub fn to_table(&self) -> Option<CdfTable> {
        match &self.family {
            Family::Tabulated { nodes, values } => {
                Some(CdfTable { nodes: nodes.clone(), values: values.clone() })
            }
            Family::Empirical { samples } => {
                let n = samples.len() as f64;
                let mut nodes: Vec<f64> = Vec::new();
                let mut values = Vec::new();
                for (i, &x) in samples.iter().enumerate() {
                    if nodes.last() == Some(&x) {
                        *values.last_mut().unwrap() = (i + 1) as f64 / n;
                    } else {
                        nodes.push(x);
                        values.push((i + 1) as f64 / n);
                    }
                }
                Some(CdfTable { nodes, values })
            }
            _ => None,
        }
    }
}

fn validate_table(nodes: &[f64], values: &[f64]) -> Result<()> {
    if nodes.is_empty() || nodes.len() != values.len() {
        return Err(Error::InvalidSpec("table needs equally many nodes and values (at least one)".into()));
    }
    if nodes.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidSpec("table nodes must be finite".into()));
    }
    if let Some(i) = nodes.windows(2).position(|w| w[0] >= w[1]) {
        return Err(Error::InvalidSpec(format!("table nodes must increase strictly (index {i})")));
    }
    if let Some(i) = values.iter().position(|v| !(*v >= 0.0 && *v <= 1.0)) {
        return Err(Error::InvalidSpec(format!("table value at index {i} is outside [0, 1]")));
    }
    if let Some(i) = values.windows(2).position(|w| w[0] > w[1]) {
        return Err(Error::InvalidSpec(format!("table values must be nondecreasing (index {i})")));
    }
    Ok(())
}

fn table_cdf(nodes: &[f64], values: &[f64], t: f64) -> f64 {
    let last = nodes.len() - 1;
    if t < nodes[0] {
        return 0.0;
    }
    if t > nodes[last] {
        return 1.0;
    }
    // first node strictly greater than t
    let j = nodes.partition_point(|&x| x <= t);
    if j > last {
        return values[last];
    }
    let (x0, x1, v0, v1) = (nodes[j - 1], nodes[j], values[j - 1], values[j]);
    v0 + (v1 - v0) * (t - x0) / (x1 - x0)
}

fn table_quantile(nodes: &[f64], values: &[f64], p: f64) -> f64 {
    let j = values.partition_point(|&v| v < p);
    if j == 0 {
        return nodes[0];
    }
    if j == values.len() {
        // mass above the last value sits just above the last node
        return nodes[j - 1];
    }
    let (x0, x1, v0, v1) = (nodes[j - 1], nodes[j], values[j - 1], values[j]);
    x0 + (p - v0) / (v1 - v0) * (x1 - x0)
}

/// Empirical CDF of a sample.
pub fn empirical_cdf(samples: &[f64]) -> Result<DistributionSpec> {
    DistributionSpec::empirical(samples.to_vec())
}

/// `max_t |F(t) − G(t)|` over the grid.
pub fn sup_distance(f: &DistributionSpec, g: &DistributionSpec, grid: &[f64]) -> Result<f64> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument("sup distance needs a nonempty grid".into()));
    }
    Ok(grid.iter().map(|&t| (f.cdf(t) - g.cdf(t)).abs()).fold(0.0, f64::max))
}

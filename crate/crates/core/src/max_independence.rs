//! Max-independent joint laws built from a generator.
//!
//! A vector `(X₁, …, X₄)` is max-independent with generator `β` when its
//! joint CDF is `F₁(x₁)⋯F₄(x₄)·β(x₁, …, x₄)` with `β ∈ (0, 1]` and
//! `β → 1` as any coordinate tends to its upper boundary.
//!
//! The non-trivial family shipped here is the Farlie–Gumbel–Morgenstern
//! form restricted to its single fourth-order interaction term,
//! `β = 1 + α·∏(1 − Fᵢ(xᵢ))` with `α ∈ (−1, 0]`. Its copula density is
//! `1 + α·∏(1 − 2uᵢ) ≥ 1 − |α| > 0`, so it is a proper joint law and can be
//! sampled by rejection from the independent product.

use serde::{Deserialize, Serialize};

use crate::distributions::DistributionSpec;
use crate::error::{Error, Result};
use crate::rng::{stream, UniformStream};

/// Default lattice resolution for generator validation.
pub const DEFAULT_POINTS_PER_AXIS: usize = 7;

/// Tolerance for the alternating corner sums of the rectangle check.
pub const RECTANGLE_TOL: f64 = 1e-10;

/// Tolerance for `β = 1` at the upper boundary.
pub const BOUNDARY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GeneratorSpec {
    ConstantOne,
    Fgm { alpha: f64 },
    /// Multilinear interpolation of `values` over the product of `axes`
    /// (row-major, last axis fastest). Coordinates are clamped to the axis
    /// ranges.
    #[serde(rename = "tabulated4d")]
    Tabulated4D { axes: [Vec<f64>; 4], values: Vec<f64> },
}

impl GeneratorSpec {
    pub fn fgm(alpha: f64) -> Self {
        GeneratorSpec::Fgm { alpha }
    }

    pub fn is_constant_one(&self) -> bool {
        matches!(self, GeneratorSpec::ConstantOne)
    }
}

/// `β(x₁, …, x₄)` for the given marginals.
pub fn beta_eval(gen: &GeneratorSpec, marginals: [&DistributionSpec; 4], x: [f64; 4]) -> f64 {
    match gen {
        GeneratorSpec::ConstantOne => 1.0,
        GeneratorSpec::Fgm { alpha } => {
            let tail: f64 = marginals.iter().zip(x).map(|(m, xi)| 1.0 - m.cdf(xi)).product();
            1.0 + alpha * tail
        }
        GeneratorSpec::Tabulated4D { axes, values } => multilinear(axes, values, x),
    }
}

fn multilinear(axes: &[Vec<f64>; 4], values: &[f64], x: [f64; 4]) -> f64 {
    let mut lo = [0usize; 4];
    let mut w = [0.0f64; 4];
    for d in 0..4 {
        let ax = &axes[d];
        let xi = x[d].clamp(ax[0], ax[ax.len() - 1]);
        if ax.len() == 1 {
            continue;
        }
        let j = ax.partition_point(|&v| v <= xi).clamp(1, ax.len() - 1);
        lo[d] = j - 1;
        w[d] = (xi - ax[j - 1]) / (ax[j] - ax[j - 1]);
    }
    let dims: Vec<usize> = axes.iter().map(Vec::len).collect();
    let mut acc = 0.0;
    for corner in 0..16usize {
        let mut weight = 1.0;
        let mut idx = 0usize;
        for d in 0..4 {
            let up = (corner >> d) & 1 == 1;
            if up && dims[d] == 1 {
                weight = 0.0;
                break;
            }
            weight *= if up { w[d] } else { 1.0 - w[d] };
            idx = idx * dims[d] + lo[d] + usize::from(up);
        }
        if weight != 0.0 {
            acc += weight * values[idx];
        }
    }
    acc
}

fn validate_tabulated(axes: &[Vec<f64>; 4], values: &[f64]) -> Result<()> {
    for ax in axes {
        if ax.is_empty() || ax.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Config("tabulated generator axes must be nonempty and increasing".into()));
        }
    }
    let n: usize = axes.iter().map(Vec::len).product();
    if values.len() != n {
        return Err(Error::Config(format!("tabulated generator needs {n} values, got {}", values.len())));
    }
    Ok(())
}

/// A generator bound to the four marginals it acts on.
#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    spec: GeneratorSpec,
    marginals: [DistributionSpec; 4],
}

impl Generator {
    pub fn new(spec: GeneratorSpec, marginals: [DistributionSpec; 4]) -> Result<Self> {
        if let GeneratorSpec::Tabulated4D { axes, values } = &spec {
            validate_tabulated(axes, values)?;
        }
        Ok(Self { spec, marginals })
    }

    pub fn spec(&self) -> &GeneratorSpec {
        &self.spec
    }

    pub fn marginals(&self) -> &[DistributionSpec; 4] {
        &self.marginals
    }

    fn marginal_refs(&self) -> [&DistributionSpec; 4] {
        let [a, b, c, d] = &self.marginals;
        [a, b, c, d]
    }

    pub fn beta(&self, x: [f64; 4]) -> f64 {
        beta_eval(&self.spec, self.marginal_refs(), x)
    }

    /// Joint CDF `F₁(x₁)⋯F₄(x₄)·β(x)`.
    pub fn joint_cdf(&self, x: [f64; 4]) -> f64 {
        let prod: f64 = self.marginals.iter().zip(x).map(|(m, xi)| m.cdf(xi)).product();
        prod * self.beta(x)
    }
}

/// Outcome of [`validate_generator`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub points_per_axis: usize,
    pub beta_min: f64,
    pub beta_max: f64,
    pub bound_ok: bool,
    /// Lattice point where `β ∉ (0, 1]`.
    pub bound_witness: Option<[f64; 4]>,
    pub boundary_ok: bool,
    pub boundary_max_deviation: f64,
    pub boundary_witness: Option<[f64; 4]>,
    pub rectangle_ok: bool,
    pub rectangle_min: f64,
    /// Lower corner of the lattice cell with the most negative mass.
    pub rectangle_witness: Option<[f64; 4]>,
}

/// Probe nodes along one axis: the support lower end (or a far-left
/// quantile), interior quantiles at equal levels, and the upper end (or +∞).
pub fn axis_nodes(marginal: &DistributionSpec, points: usize) -> Vec<f64> {
    assert!(points >= 2);
    let support = marginal.support();
    let mut nodes: Vec<f64> = (0..points)
        .map(|k| {
            if k == 0 {
                if support.lower().is_finite() {
                    support.lower()
                } else {
                    marginal.quantile(1e-6).unwrap()
                }
            } else if k == points - 1 {
                support.upper()
            } else {
                marginal.quantile(k as f64 / (points - 1) as f64).unwrap()
            }
        })
        .collect();
    nodes.dedup();
    nodes
}

/// Checks the generator on a lattice of `points_per_axis⁴` nodes.
///
/// (i) `β ∈ (0, 1]` at every node, (ii) `β = 1` whenever one coordinate is
/// at its upper boundary, (iii) every lattice cell receives nonnegative
/// mass under `F₁F₂F₃F₄β`.
pub fn validate_generator(
    gen: &GeneratorSpec,
    marginals: [&DistributionSpec; 4],
    points_per_axis: usize,
) -> Result<ValidationReport> {
    if points_per_axis < 2 {
        return Err(Error::InvalidArgument("validation lattice needs at least 2 points per axis".into()));
    }
    if let GeneratorSpec::Tabulated4D { axes, values } = gen {
        validate_tabulated(axes, values)?;
    }
    let axes: Vec<Vec<f64>> = marginals.iter().map(|m| axis_nodes(m, points_per_axis)).collect();
    let dims: Vec<usize> = axes.iter().map(Vec::len).collect();
    let total: usize = dims.iter().product();
    let point = |mut flat: usize| -> [f64; 4] {
        let mut x = [0.0; 4];
        for d in (0..4).rev() {
            x[d] = axes[d][flat % dims[d]];
            flat /= dims[d];
        }
        x
    };

    let mut beta_min = f64::INFINITY;
    let mut beta_max = f64::NEG_INFINITY;
    let mut argmin = [0.0; 4];
    let mut argmax = [0.0; 4];
    let mut h = vec![0.0; total];
    for (flat, slot) in h.iter_mut().enumerate() {
        let x = point(flat);
        let b = beta_eval(gen, marginals, x);
        if b < beta_min {
            beta_min = b;
            argmin = x;
        }
        if b > beta_max {
            beta_max = b;
            argmax = x;
        }
        let prod: f64 = marginals.iter().zip(x).map(|(m, xi)| m.cdf(xi)).product();
        *slot = prod * b;
    }
    let bound_ok = beta_min > 0.0 && beta_max <= 1.0 + 1e-15;
    let bound_witness = if beta_min <= 0.0 {
        Some(argmin)
    } else if beta_max > 1.0 + 1e-15 {
        Some(argmax)
    } else {
        None
    };

    let mut boundary_max_deviation: f64 = 0.0;
    let mut boundary_witness = None;
    for d in 0..4 {
        let top = marginals[d].support().upper();
        for flat in 0..total {
            let mut x = point(flat);
            x[d] = top;
            let dev = (beta_eval(gen, marginals, x) - 1.0).abs();
            if dev > boundary_max_deviation {
                boundary_max_deviation = dev;
                if dev > BOUNDARY_TOL {
                    boundary_witness = Some(x);
                }
            }
        }
    }
    let boundary_ok = boundary_max_deviation <= BOUNDARY_TOL;

    let idx = |k: [usize; 4]| ((k[0] * dims[1] + k[1]) * dims[2] + k[2]) * dims[3] + k[3];
    let mut rectangle_min = f64::INFINITY;
    let mut rectangle_witness = None;
    for k0 in 0..dims[0] - 1 {
        for k1 in 0..dims[1] - 1 {
            for k2 in 0..dims[2] - 1 {
                for k3 in 0..dims[3] - 1 {
                    let base = [k0, k1, k2, k3];
                    let mut mass = 0.0;
                    for corner in 0..16usize {
                        let mut k = base;
                        let mut ups = 0;
                        for (d, kd) in k.iter_mut().enumerate() {
                            if (corner >> d) & 1 == 1 {
                                *kd += 1;
                                ups += 1;
                            }
                        }
                        let sign = if (4 - ups) % 2 == 0 { 1.0 } else { -1.0 };
                        mass += sign * h[idx(k)];
                    }
                    if mass < rectangle_min {
                        rectangle_min = mass;
                        if mass < -RECTANGLE_TOL {
                            rectangle_witness = Some([axes[0][k0], axes[1][k1], axes[2][k2], axes[3][k3]]);
                        }
                    }
                }
            }
        }
    }
    let rectangle_ok = rectangle_min >= -RECTANGLE_TOL;

    Ok(ValidationReport {
        passed: bound_ok && boundary_ok && rectangle_ok,
        points_per_axis,
        beta_min,
        beta_max,
        bound_ok,
        bound_witness,
        boundary_ok,
        boundary_max_deviation,
        boundary_witness,
        rectangle_ok,
        rectangle_min,
        rectangle_witness,
    })
}

/// Draws `n` vectors from the max-independent law.
///
/// `ConstantOne` draws the four coordinates independently. `Fgm` uses
/// rejection against the independent product with acceptance probability
/// `(1 + α∏(1 − 2uᵢ)) / (1 + |α|)`.
pub fn sample_maxind(
    gen: &GeneratorSpec,
    marginals: [&DistributionSpec; 4],
    n: usize,
    seed: u64,
) -> Result<Vec<[f64; 4]>> {
    if n == 0 {
        return Err(Error::InvalidArgument("sample size must be at least 1".into()));
    }
    let streams = [stream::X, stream::Y, stream::Z1, stream::Z2];
    let mut coords: Vec<UniformStream> = streams.iter().map(|&s| UniformStream::new(seed, s)).collect();
    let draw = |coords: &mut Vec<UniformStream>| -> [f64; 4] {
        let mut u = [0.0; 4];
        for (ui, s) in u.iter_mut().zip(coords.iter_mut()) {
            *ui = s.next_open01();
        }
        u
    };
    let to_x = |u: [f64; 4]| -> [f64; 4] {
        let mut x = [0.0; 4];
        for d in 0..4 {
            x[d] = marginals[d].transform_uniform(u[d]);
        }
        x
    };
    match gen {
        GeneratorSpec::ConstantOne => Ok((0..n).map(|_| to_x(draw(&mut coords))).collect()),
        GeneratorSpec::Fgm { alpha } => {
            let alpha = *alpha;
            if !(alpha > -1.0 && alpha <= 0.0) {
                return Err(Error::Config(format!("FGM generator needs alpha in (-1, 0], got {alpha}")));
            }
            let mut coin = UniformStream::new(seed, stream::ACCEPT);
            let bound = 1.0 + alpha.abs();
            let mut out = Vec::with_capacity(n);
            while out.len() < n {
                let u = draw(&mut coords);
                let density = 1.0 + alpha * u.iter().map(|ui| 1.0 - 2.0 * ui).product::<f64>();
                if coin.next_open01() * bound <= density {
                    out.push(to_x(u));
                }
            }
            Ok(out)
        }
        GeneratorSpec::Tabulated4D { .. } => Err(Error::UnsupportedSampler(
            "no sampler is available for tabulated generators".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn uniforms() -> [DistributionSpec; 4] {
        std::array::from_fn(|_| DistributionSpec::uniform(0.0, 1.0).unwrap())
    }

    fn refs(m: &[DistributionSpec; 4]) -> [&DistributionSpec; 4] {
        [&m[0], &m[1], &m[2], &m[3]]
    }

    #[test]
    fn beta_examples() {
        let m = uniforms();
        assert_eq!(beta_eval(&GeneratorSpec::fgm(0.0), refs(&m), [0.3, 0.1, 0.9, 0.5]), 1.0);
        assert_abs_diff_eq!(beta_eval(&GeneratorSpec::fgm(-0.5), refs(&m), [0.0; 4]), 0.5, epsilon = 1e-15);
        assert_eq!(beta_eval(&GeneratorSpec::fgm(-0.5), refs(&m), [1.0, 0.2, 0.2, 0.2]), 1.0);
        assert_eq!(beta_eval(&GeneratorSpec::ConstantOne, refs(&m), [0.2; 4]), 1.0);
    }

    #[test]
    fn validation_examples() {
        let m = uniforms();
        let one = validate_generator(&GeneratorSpec::ConstantOne, refs(&m), 7).unwrap();
        assert!(one.passed);
        let good = validate_generator(&GeneratorSpec::fgm(-0.5), refs(&m), 7).unwrap();
        assert!(good.passed, "{good:?}");
        assert_abs_diff_eq!(good.beta_min, 0.5, epsilon = 1e-15);
        let bad = validate_generator(&GeneratorSpec::fgm(-1.5), refs(&m), 7).unwrap();
        assert!(!bad.passed);
        assert!(!bad.bound_ok);
        assert_eq!(bad.bound_witness, Some([0.0; 4]));
        assert_abs_diff_eq!(bad.beta_min, -0.5, epsilon = 1e-15);
    }

    #[test]
    fn tabulated_generator_interpolates() {
        let axes: [Vec<f64>; 4] = std::array::from_fn(|_| vec![0.0, 1.0]);
        // β = 1 everywhere except 0.5 at the all-lower corner
        let mut values = vec![1.0; 16];
        values[0] = 0.5;
        let gen = GeneratorSpec::Tabulated4D { axes, values };
        let m = uniforms();
        assert_abs_diff_eq!(beta_eval(&gen, refs(&m), [0.0; 4]), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(beta_eval(&gen, refs(&m), [0.5, 0.0, 0.0, 0.0]), 0.75, epsilon = 1e-15);
        assert_eq!(beta_eval(&gen, refs(&m), [7.0, 0.0, 0.0, 0.0]), 1.0);
        assert!(matches!(
            sample_maxind(&gen, refs(&m), 3, 1),
            Err(Error::UnsupportedSampler(_))
        ));
    }

    #[test]
    fn fgm_zero_behaves_like_independence() {
        let m = uniforms();
        let a = sample_maxind(&GeneratorSpec::fgm(0.0), refs(&m), 100, 5).unwrap();
        let b = sample_maxind(&GeneratorSpec::ConstantOne, refs(&m), 100, 5).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn generator_serde() {
        let g: GeneratorSpec = serde_json::from_str(r#"{"family":"fgm","alpha":-0.5}"#).unwrap();
        assert_eq!(g, GeneratorSpec::fgm(-0.5));
        assert_eq!(serde_json::to_string(&GeneratorSpec::ConstantOne).unwrap(), r#"{"family":"constant_one"}"#);
    }
}

use serde::Deserialize;

use crate::distributions::DistributionSpec;
use crate::error::{Error, Result};
use crate::identification::GridSolverConfig;
use crate::max_independence::DEFAULT_POINTS_PER_AXIS;
use crate::max_model::{ComponentSystem, JointCdf2D, Regime, ScaleCoefficients};

/// The JSON document every command reads.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub system: ComponentSystem,
    /// Required unless `model` is `kotlarski`.
    #[serde(default)]
    pub coefficients: Option<ScaleCoefficients>,
    #[serde(default)]
    pub expected_regime: Option<Regime>,
    #[serde(default)]
    pub model: ModelKind,
    #[serde(default)]
    pub grid: Option<GridSpec>,
    #[serde(default)]
    pub solver: GridSolverConfig,
    #[serde(default)]
    pub samples: SampleSpec,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub method: MethodChoice,
    /// Kernel bandwidth applied to sample input before recovery.
    #[serde(default)]
    pub bandwidth: Option<f64>,
    /// Second system for `diagnose`.
    #[serde(default)]
    pub alternative: Option<ComponentSystem>,
    /// Shared-law candidates for `counterexample` when no file is given.
    #[serde(default)]
    pub candidates: Vec<DistributionSpec>,
    #[serde(default)]
    pub thresholds: Thresholds,
    #[serde(default = "default_points")]
    pub points_per_axis: usize,
}

fn default_points() -> usize {
    DEFAULT_POINTS_PER_AXIS
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    /// `U = max(X, aZ₁, bZ₂)`, `V = max(Y, cZ₁, dZ₂)`.
    #[default]
    General,
    /// `U = max(X, Z)`, `V = max(Y, Z)` with one shared draw.
    Kotlarski,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodChoice {
    #[default]
    Auto,
    Kotlarski,
    RegionQuotient,
    GridSolver,
    Maxind,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleSpec {
    pub n: usize,
}

impl Default for SampleSpec {
    fn default() -> Self {
        Self { n: 1000 }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Thresholds {
    /// `diagnose` exits 4 when max `residual_product` exceeds this.
    pub diagnose: f64,
    pub antiperiodic: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self { diagnose: 1e-10, antiperiodic: 1e-10 }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    #[default]
    Linear,
    Geometric,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum GridSpec {
    Nodes { nodes: Vec<f64> },
    Range { count: usize, lower: f64, upper: f64, #[serde(default)] spacing: Spacing },
}

impl GridSpec {
    pub fn nodes(&self) -> Result<Vec<f64>> {
        let v = match self {
            Self::Nodes { nodes } => nodes.clone(),
            Self::Range { count, lower, upper, spacing } => {
                let (n, lo, hi) = (*count, *lower, *upper);
                if n < 2 || !(lo.is_finite() && hi.is_finite() && lo < hi) {
                    return Err(Error::Config("grid range needs count ≥ 2 and finite lower < upper".into()));
                }
                match spacing {
                    Spacing::Linear => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
                    Spacing::Geometric => {
                        if lo <= 0.0 {
                            return Err(Error::Config("geometric grid needs a positive lower end".into()));
                        }
                        (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect()
                    }
                }
            }
        };
        if v.is_empty() || v.iter().any(|t| !t.is_finite()) || v.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("grid nodes must be finite and strictly increasing".into()));
        }
        Ok(v)
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let cfg: Self = serde_json::from_value(value).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        if self.model == ModelKind::General && self.coefficients.is_none() {
            return Err(Error::Config("coefficients are required for the general model".into()));
        }
        if let (Some(want), Some(k)) = (self.expected_regime, &self.coefficients) {
            if k.regime() != want {
                return Err(Error::Config(format!(
                    "expected the {want:?} regime but coefficients ({}, {}, {}, {}) are {:?}",
                    k.a,
                    k.b,
                    k.c,
                    k.d,
                    k.regime()
                )));
            }
        }
        if let Some(alt) = &self.alternative {
            if !alt.fx().support().same_as(self.system.fx().support()) {
                return Err(Error::Config("alternative system must share the common support".into()));
            }
        }
        if self.samples.n == 0 {
            return Err(Error::Config("samples.n must be at least 1".into()));
        }
        Ok(())
    }

    pub fn coeffs(&self) -> Result<ScaleCoefficients> {
        match (self.model, self.coefficients) {
            (_, Some(k)) => Ok(k),
            (ModelKind::Kotlarski, None) => ScaleCoefficients::all_positive(1.0, 1.0, 1.0, 1.0),
            (ModelKind::General, None) => Err(Error::Config("coefficients are required".into())),
        }
    }

    pub fn grid(&self) -> Result<Vec<f64>> {
        self.grid.as_ref().ok_or_else(|| Error::Config("this command needs a grid".into()))?.nodes()
    }

    /// The analytic joint CDF of the configured system.
    pub fn analytic(&self) -> Result<JointCdf2D> {
        match self.model {
            ModelKind::Kotlarski => {
                let s = &self.system;
                JointCdf2D::kotlarski(s.fz1().clone(), s.fx().clone(), s.fy().clone())
            }
            ModelKind::General => JointCdf2D::analytic(self.system.clone(), self.coeffs()?),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"{
        "system": {"x": {"family": "exponential", "rate": 1.0},
                   "y": {"family": "exponential", "rate": 1.0},
                   "z": {"family": "exponential", "rate": 1.0}},
        "coefficients": {"a": 1, "b": 2, "c": 1, "d": 3},
        "grid": {"count": 5, "lower": 0.5, "upper": 8, "spacing": "geometric"}
    }"#;

    #[test]
    fn parses_defaults() {
        let c = RunConfig::parse(BASE).unwrap();
        assert_eq!(c.grid().unwrap().len(), 5);
        assert!((c.grid().unwrap()[4] - 8.0).abs() < 1e-12);
        assert_eq!(c.solver.starts, 5);
    }

    #[test]
    fn malformed_json_is_an_io_class_error() {
        assert!(matches!(RunConfig::parse("{"), Err(Error::Json(_))));
        assert!(matches!(RunConfig::parse(r#"{"system": 3}"#), Err(Error::Config(_))));
    }

    #[test]
    fn expected_regime_is_enforced() {
        let text = BASE.replace(r#""grid""#, r#""expected_regime": "mixed_sign", "grid""#);
        assert!(matches!(RunConfig::parse(&text), Err(Error::Config(_))));
    }
}

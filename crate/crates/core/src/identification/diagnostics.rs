use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{check_grid, find_node};
use crate::distributions::DistributionSpec;
use crate::error::Result;
use crate::max_model::{ComponentSystem, Regime, ScaleCoefficients, CDF_FLOOR};

/// A function known on a finite set of increasing nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TabulatedFn {
    pub nodes: Vec<f64>,
    pub values: Vec<f64>,
}

impl TabulatedFn {
    pub fn new(nodes: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if nodes.len() != values.len() {
            return Err(crate::Error::InvalidArgument("nodes and values differ in length".into()));
        }
        check_grid(&nodes, false)?;
        Ok(Self { nodes, values })
    }

    pub fn from_fn(nodes: &[f64], f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(nodes.to_vec(), nodes.iter().map(|&u| f(u)).collect())
    }

    pub fn get(&self, u: f64) -> Option<f64> {
        find_node(&self.nodes, u).map(|j| self.values[j])
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairResidual {
    pub t1: f64,
    pub t2: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NodeResidual {
    pub u: f64,
    pub residual: f64,
}

/// Ratios `η₁ = F_X/F_M`, `η₂ = F_Y/F_N`, `η₃ = F_Z/F_S` between two
/// systems and the identities they satisfy when both give the same `G`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioDiagnostics {
    pub eta1: TabulatedFn,
    pub eta2: TabulatedFn,
    pub eta3: TabulatedFn,
    pub zeta: TabulatedFn,
    pub lambda: f64,
    /// `|η₁(t₁)η₂(t₂)η₃(m₁)η₃(m₂) − 1|` over grid × grid.
    pub residual_product: Vec<PairResidual>,
    /// `|ζ(u) + ζ(λu)|` over the grid.
    pub residual_antiperiodic: Vec<NodeResidual>,
    /// Grid nodes where some ratio was undefined.
    pub skipped: Vec<f64>,
}

impl RatioDiagnostics {
    pub fn max_residual_product(&self) -> f64 {
        self.residual_product.iter().map(|r| r.residual).fold(0.0, f64::max)
    }

    pub fn max_residual_antiperiodic(&self) -> f64 {
        self.residual_antiperiodic.iter().map(|r| r.residual).fold(0.0, f64::max)
    }

    /// One row per grid node. `residual_product` is the largest residual with
    /// `t₁` at the node. Undefined entries are left empty.
    pub fn write_csv<W: Write>(&self, writer: W, grid: &[f64]) -> Result<()> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(writer);
        w.write_record(["node", "eta1", "eta2", "eta3", "zeta", "residual_antiperiodic", "residual_product"])?;
        let cell = |v: Option<f64>| v.map_or(String::new(), |x| x.to_string());
        for &t in grid {
            let anti = self.residual_antiperiodic.iter().find(|r| r.u == t).map(|r| r.residual);
            let product = self
                .residual_product
                .iter()
                .filter(|r| r.t1 == t)
                .map(|r| r.residual)
                .reduce(f64::max);
            w.write_record([
                t.to_string(),
                cell(self.eta1.get(t)),
                cell(self.eta2.get(t)),
                cell(self.eta3.get(t)),
                cell(self.zeta.get(t)),
                cell(anti),
                cell(product),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn ratio(f: &DistributionSpec, g: &DistributionSpec, t: f64) -> Option<f64> {
    let (a, b) = (f.cdf(t), g.cdf(t));
    (a > CDF_FLOOR && b > CDF_FLOOR).then(|| a / b)
}

/// Ratio functions between `system_a` and `system_b`, paired slot by slot.
///
/// `η₃` at the off-grid arguments `m₁, m₂, λu` is evaluated from the CDFs
/// directly rather than interpolated.
pub fn ratio_diagnostics(
    system_a: &ComponentSystem,
    system_b: &ComponentSystem,
    coeffs: &ScaleCoefficients,
    grid: &[f64],
) -> Result<RatioDiagnostics> {
    coeffs.require(Regime::AllPositive)?;
    check_grid(grid, false)?;
    let (xa, ya, za) = (system_a.fx(), system_a.fy(), system_a.fz1());
    let (xb, yb, zb) = (system_b.fx(), system_b.fy(), system_b.fz1());
    let lambda = coeffs.lambda();

    let mut skipped = Vec::new();
    let mut cols: [(Vec<f64>, Vec<f64>); 3] = Default::default();
    for &t in grid {
        let vals = [ratio(xa, xb, t), ratio(ya, yb, t), ratio(za, zb, t)];
        if vals.iter().any(Option::is_none) {
            skipped.push(t);
        }
        for (col, v) in cols.iter_mut().zip(vals) {
            if let Some(v) = v {
                col.0.push(t);
                col.1.push(v);
            }
        }
    }
    let [(n1, v1), (n2, v2), (n3, v3)] = cols;
    let zeta = TabulatedFn { nodes: n3.clone(), values: v3.iter().map(|v| v.ln()).collect() };
    let eta1 = TabulatedFn { nodes: n1, values: v1 };
    let eta2 = TabulatedFn { nodes: n2, values: v2 };
    let eta3 = TabulatedFn { nodes: n3, values: v3 };

    let mut residual_product = Vec::new();
    for (&t1, &e1) in eta1.nodes.iter().zip(&eta1.values) {
        for (&t2, &e2) in eta2.nodes.iter().zip(&eta2.values) {
            let (m1, m2) = coeffs.shock_arguments(t1, t2);
            if let (Some(r1), Some(r2)) = (ratio(za, zb, m1), ratio(za, zb, m2)) {
                residual_product.push(PairResidual { t1, t2, residual: (e1 * e2 * r1 * r2 - 1.0).abs() });
            }
        }
    }
    let residual_antiperiodic = zeta
        .nodes
        .iter()
        .zip(&zeta.values)
        .filter_map(|(&u, &z)| ratio(za, zb, lambda * u).map(|r| NodeResidual { u, residual: (z + r.ln()).abs() }))
        .collect();

    Ok(RatioDiagnostics { eta1, eta2, eta3, zeta, lambda, residual_product, residual_antiperiodic, skipped })
}

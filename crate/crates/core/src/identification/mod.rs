//! Recovering `F_X, F_Y, F_Z` from the joint CDF of `(U, V)`.
//!
//! Three routes are provided:
//!
//! - [`recover_kotlarski`]: closed form for one shared component with unit
//!   coefficients.
//! - [`region_quotient_fz1`]: closed form for `F_Z` from the part of the
//!   plane where the two shock terms are driven by different coordinates.
//! - [`recover_positive_general`] / [`recover_maxind`]: a constrained least
//!   squares fit of `ln F_Z` on a grid, repeated from several starting
//!   tables. Agreement of the starts is the computable stand-in for
//!   uniqueness of the solution.
//!
//! [`ratio_diagnostics`] and [`antiperiodic_vanishing_check`] evaluate the
//! ratio identities that any two systems with equal joint CDFs satisfy.

mod antiperiodic;
mod diagnostics;
mod kotlarski;
mod reconstruct;
mod region;
mod solver;

pub use antiperiodic::{antiperiodic_vanishing_check, AntiperiodicVerdict};
pub use diagnostics::{ratio_diagnostics, NodeResidual, PairResidual, RatioDiagnostics, TabulatedFn};
pub use kotlarski::recover_kotlarski;
pub use region::{recover_by_region_quotient, region_quotient_fz1, RegionKind, RegionQuotient};
pub use solver::{recover_maxind, recover_positive_general, GeneratorQuotient, GridSolverConfig};

use serde::{Serialize, Serializer};

use crate::distributions::DistributionSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RecoveryMethod {
    Kotlarski,
    RegionQuotient,
    GridSolver,
    GridSolverMaxIndependent,
}

/// Per-start summary of a solver run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StartReport {
    pub index: usize,
    pub iterations: usize,
    pub objective: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverReport {
    /// Iterations of the selected start.
    pub iterations: usize,
    /// Objective after every iteration of the selected start.
    pub objective_trace: Vec<f64>,
    pub starts: Vec<StartReport>,
    pub selected_start: Option<usize>,
    /// Largest `|F̂⁽ᵏ⁾(z) − F̂⁽best⁾(z)|` over starts and nodes.
    pub multistart_spread: f64,
    pub agreement_tol: f64,
    pub ambiguous: bool,
    pub probes: usize,
    pub uncovered_nodes: Vec<f64>,
    pub note: Option<String>,
}

impl SolverReport {
    pub(crate) fn closed_form() -> Self {
        Self {
            iterations: 0,
            objective_trace: Vec::new(),
            starts: Vec::new(),
            selected_start: None,
            multistart_spread: 0.0,
            agreement_tol: 0.0,
            ambiguous: false,
            probes: 0,
            uncovered_nodes: Vec::new(),
            note: None,
        }
    }
}

fn table_of<S: Serializer>(spec: &DistributionSpec, s: S) -> Result<S::Ok, S::Error> {
    spec.to_table().serialize(s)
}

/// Recovered component tables with residual diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecoveryResult {
    pub method: RecoveryMethod,
    #[serde(serialize_with = "table_of")]
    pub fx_hat: DistributionSpec,
    #[serde(serialize_with = "table_of")]
    pub fy_hat: DistributionSpec,
    #[serde(serialize_with = "table_of")]
    pub fz1_hat: DistributionSpec,
    /// `max |G_model − G_input|` over the residual probe lattice,
    /// recomputed from the recovered tables.
    pub sup_residual: f64,
    pub residual_probes: usize,
    /// Grid nodes left out because a quotient hit the floor.
    pub skipped_nodes: Vec<f64>,
    pub solver_report: SolverReport,
}

impl RecoveryResult {
    pub fn is_ambiguous(&self) -> bool {
        self.solver_report.ambiguous
    }
}

/// Positions of `x` among sorted `nodes` up to a relative tolerance.
pub(crate) fn find_node(nodes: &[f64], x: f64) -> Option<usize> {
    if !x.is_finite() {
        return None;
    }
    let tol = 1e-9 * x.abs().max(f64::MIN_POSITIVE);
    let j = nodes.partition_point(|&v| v < x - tol);
    (j < nodes.len() && (nodes[j] - x).abs() <= tol).then_some(j)
}

pub(crate) fn check_grid(grid: &[f64], positive: bool) -> crate::Result<()> {
    use crate::Error;
    if grid.is_empty() {
        return Err(Error::InvalidArgument("grid must be nonempty".into()));
    }
    if grid.iter().any(|t| !t.is_finite()) || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("grid must be finite and strictly increasing".into()));
    }
    if positive && grid[0] <= 0.0 {
        return Err(Error::InvalidArgument(
            "grid nodes must be positive; scaled-argument recovery works on (0, ∞)".into(),
        ));
    }
    Ok(())
}

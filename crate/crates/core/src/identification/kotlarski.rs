use super::{check_grid, RecoveryMethod, RecoveryResult, SolverReport};
use crate::distributions::DistributionSpec;
use crate::error::{Error, Result};
use crate::isotonic::isotonic_bounded;
use crate::max_model::{JointDistribution, CDF_FLOOR};

/// Closed-form recovery for `(max(X₀, X₁), max(X₀, X₂))`.
///
/// With `F_{Y₁}(t) = g(t, ∞)` and `F_{Y₂}(t) = g(∞, t)`:
///
/// ```text
/// F₀ = F_{Y₁}·F_{Y₂} / g(t, t),   F₁ = g(t, t) / F_{Y₂},   F₂ = g(t, t) / F_{Y₁}.
/// ```
///
/// In the result `fz1_hat` is `F₀`, `fx_hat` is `F₁` and `fy_hat` is `F₂`.
/// Nodes where any quotient denominator falls below the floor are skipped.
pub fn recover_kotlarski(g: &dyn JointDistribution, grid: &[f64]) -> Result<RecoveryResult> {
    check_grid(grid, false)?;
    let inf = f64::INFINITY;
    let queries: Vec<(f64, f64)> = grid.iter().flat_map(|&t| [(t, inf), (inf, t), (t, t)]).collect();
    let vals = g.eval_batch(&queries);

    let mut nodes = Vec::new();
    let (mut f0, mut f1, mut f2) = (Vec::new(), Vec::new(), Vec::new());
    let mut skipped = Vec::new();
    for (i, &t) in grid.iter().enumerate() {
        let (fy1, fy2, diag) = (vals[3 * i], vals[3 * i + 1], vals[3 * i + 2]);
        if !(diag > CDF_FLOOR && fy1 > CDF_FLOOR && fy2 > CDF_FLOOR) {
            skipped.push(t);
            continue;
        }
        nodes.push(t);
        f0.push(fy1 * fy2 / diag);
        f1.push(diag / fy2);
        f2.push(diag / fy1);
    }
    if nodes.is_empty() {
        return Err(Error::InvalidArgument("every grid node fell below the CDF floor".into()));
    }
    let fz1_hat = DistributionSpec::tabulated(nodes.clone(), isotonic_bounded(&f0, 0.0, 1.0))?;
    let fx_hat = DistributionSpec::tabulated(nodes.clone(), isotonic_bounded(&f1, 0.0, 1.0))?;
    let fy_hat = DistributionSpec::tabulated(nodes.clone(), isotonic_bounded(&f2, 0.0, 1.0))?;

    let pairs: Vec<(f64, f64)> = nodes.iter().flat_map(|&a| nodes.iter().map(move |&b| (a, b))).collect();
    let observed = g.eval_batch(&pairs);
    let sup_residual = pairs
        .iter()
        .zip(&observed)
        .map(|(&(t1, t2), &obs)| (fx_hat.cdf(t1) * fy_hat.cdf(t2) * fz1_hat.cdf(t1.min(t2)) - obs).abs())
        .fold(0.0, f64::max);

    Ok(RecoveryResult {
        method: RecoveryMethod::Kotlarski,
        fx_hat,
        fy_hat,
        fz1_hat,
        sup_residual,
        residual_probes: pairs.len(),
        skipped_nodes: skipped,
        solver_report: SolverReport::closed_form(),
    })
}

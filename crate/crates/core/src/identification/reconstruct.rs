use crate::distributions::DistributionSpec;
use crate::error::{Error, Result};
use crate::interp::LogLogCdf;
use crate::isotonic::isotonic_bounded;
use crate::max_independence::Generator;
use crate::max_model::{JointDistribution, ScaleCoefficients, CDF_FLOOR};

const RESIDUAL_AXIS_POINTS: usize = 40;

pub(crate) struct Reconstruction {
    pub fx_hat: DistributionSpec,
    pub fy_hat: DistributionSpec,
    pub fz1_hat: DistributionSpec,
    pub sup_residual: f64,
    pub residual_probes: usize,
}

/// Candidate nodes `{s·z}` whose two scaled arguments stay inside the `z` range.
fn marginal_nodes(znodes: &[f64], s: f64, r: f64) -> Vec<f64> {
    let (lo, hi) = (znodes[0], znodes[znodes.len() - 1]);
    let mut t: Vec<f64> = znodes
        .iter()
        .flat_map(|&z| [s * z, r * z])
        .filter(|&t| t / s >= lo * (1.0 - 1e-12) && t / s <= hi * (1.0 + 1e-12))
        .filter(|&t| t / r >= lo * (1.0 - 1e-12) && t / r <= hi * (1.0 + 1e-12))
        .collect();
    t.sort_by(f64::total_cmp);
    t.dedup_by(|x, y| (*x - *y).abs() <= 1e-12 * y.abs());
    t
}

fn clamp_eval(f: &LogLogCdf, z: f64, lo: f64, hi: f64) -> Option<f64> {
    // nodes generated as s·z/s can drift by an ulp past the range
    let z = if z < lo && z >= lo * (1.0 - 1e-12) {
        lo
    } else if z > hi && z <= hi * (1.0 + 1e-12) {
        hi
    } else {
        z
    };
    f.cdf(z)
}

/// Builds `F̂_X, F̂_Y` from a table of `F̂_Z` via
/// `F_X(t) = F_U(t) / (F_Z(t/a)·F_Z(t/b))` and its `V` analogue, then
/// recomputes the joint residual from the three tables.
pub(crate) fn reconstruct(
    observed: &dyn JointDistribution,
    adjusted: &dyn JointDistribution,
    coeffs: &ScaleCoefficients,
    znodes: &[f64],
    theta: &[f64],
    generator: Option<&Generator>,
) -> Result<Reconstruction> {
    let fz = LogLogCdf::new(znodes, theta);
    let (zlo, zhi) = (znodes[0], znodes[znodes.len() - 1]);
    let side = |s: f64, r: f64, first: bool| -> Result<(Vec<f64>, Vec<f64>)> {
        let nodes = marginal_nodes(znodes, s, r);
        let inf = f64::INFINITY;
        let queries: Vec<(f64, f64)> = nodes.iter().map(|&t| if first { (t, inf) } else { (inf, t) }).collect();
        let marg = adjusted.eval_batch(&queries);
        let mut kept = Vec::new();
        let mut vals = Vec::new();
        for (&t, &m) in nodes.iter().zip(&marg) {
            let den = clamp_eval(&fz, t / s, zlo, zhi).unwrap_or(0.0) * clamp_eval(&fz, t / r, zlo, zhi).unwrap_or(0.0);
            if m > CDF_FLOOR && den > CDF_FLOOR {
                kept.push(t);
                vals.push(m / den);
            }
        }
        if kept.is_empty() {
            return Err(Error::InvalidArgument(
                "grid too narrow to reconstruct the non-shared components".into(),
            ));
        }
        let vals = isotonic_bounded(&vals, 0.0, 1.0);
        Ok((kept, vals))
    };
    let (xn, xv) = side(coeffs.a, coeffs.b, true)?;
    let (yn, yv) = side(coeffs.c, coeffs.d, false)?;

    let pick = |n: usize| -> Vec<usize> {
        if n <= RESIDUAL_AXIS_POINTS {
            (0..n).collect()
        } else {
            (0..RESIDUAL_AXIS_POINTS).map(|k| k * (n - 1) / (RESIDUAL_AXIS_POINTS - 1)).collect()
        }
    };
    let mut pairs = Vec::new();
    let mut model = Vec::new();
    for &i in &pick(xn.len()) {
        for &j in &pick(yn.len()) {
            let (t1, t2) = (xn[i], yn[j]);
            let (m1, m2) = coeffs.shock_arguments(t1, t2);
            let (Some(f1), Some(f2)) = (clamp_eval(&fz, m1, zlo, zhi), clamp_eval(&fz, m2, zlo, zhi)) else {
                continue;
            };
            let beta = generator.map_or(1.0, |g| g.beta([t1, t2, m1, m2]));
            pairs.push((t1, t2));
            model.push(xv[i] * yv[j] * f1 * f2 * beta);
        }
    }
    let obs = observed.eval_batch(&pairs);
    let sup_residual = model.iter().zip(&obs).map(|(m, o)| (m - o).abs()).fold(0.0, f64::max);

    Ok(Reconstruction {
        fx_hat: DistributionSpec::tabulated(xn, xv)?,
        fy_hat: DistributionSpec::tabulated(yn, yv)?,
        fz1_hat: DistributionSpec::tabulated(znodes.to_vec(), theta.to_vec())?,
        sup_residual,
        residual_probes: pairs.len(),
    })
}

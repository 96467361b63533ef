use serde::Serialize;

use super::reconstruct::reconstruct;
use super::{check_grid, RecoveryMethod, RecoveryResult, SolverReport};
use crate::distributions::DistributionSpec;
use crate::error::{Error, Result};
use crate::isotonic::isotonic_bounded;
use crate::max_model::{JointDistribution, Regime, ScaleCoefficients, CDF_FLOOR};

const MAX_TELESCOPE_TERMS: usize = 4096;

/// Which part of the plane supplied the quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionKind {
    /// `t₁/a ≤ t₂/c, t₁/b ≥ t₂/d`, quotient `F_Z(t₁/b)·F_Z(t₂/c)`.
    Primary,
    /// `t₁/a ≥ t₂/c, t₁/b ≤ t₂/d`, quotient `F_Z(t₁/a)·F_Z(t₂/d)`.
    Mirror,
    /// `a = b`, `c = d`: both regions collapse onto the line `t₁/a = t₂/c`.
    Diagonal,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionQuotient {
    #[serde(serialize_with = "super::table_of")]
    pub fz1_hat: DistributionSpec,
    pub region: RegionKind,
    pub skipped: Vec<f64>,
}

struct Geometry {
    kind: RegionKind,
    s1: f64,
    s2: f64,
    rho_lo: f64,
    rho_hi: f64,
}

/// In coordinates `t₁ = s₁z`, `t₂ = s₂w` the quotient reads
/// `L(z) + L(w)` with `L = ln F_Z`, valid for `w/z ∈ [ρ_lo, ρ_hi]`.
fn geometry(k: &ScaleCoefficients) -> Result<Geometry> {
    let (a, b, c, d) = (k.a, k.b, k.c, k.d);
    let (ad, bc) = (a * d, b * c);
    let close = |x: f64, y: f64| (x - y).abs() <= 1e-12 * x.abs().max(y.abs());
    if close(ad, bc) {
        if close(a, b) {
            return Ok(Geometry { kind: RegionKind::Diagonal, s1: a, s2: c, rho_lo: 1.0, rho_hi: 1.0 });
        }
        return Err(Error::UnsupportedCoefficients(format!(
            "ad = bc with a ≠ b leaves only the line w = {}·z, which does not isolate F_Z; use the grid solver",
            b / a
        )));
    }
    if ad > bc {
        Ok(Geometry { kind: RegionKind::Primary, s1: b, s2: c, rho_lo: b / a, rho_hi: d / c })
    } else {
        Ok(Geometry { kind: RegionKind::Mirror, s1: a, s2: d, rho_lo: a / b, rho_hi: c / d })
    }
}

/// Closed-form `F_Z` on `grid` from the region where each shock term is
/// driven by a different coordinate.
///
/// If the admissible ratio interval contains 1 the value is
/// `exp(q(z, z)/2)`. Otherwise the two ends of the interval are differenced
/// and the resulting shift equation `L(rs) − L(s) = Δ(s)` is summed outward,
/// using `F_Z → 1` at the top of the support as the normalization.
pub fn region_quotient_fz1(g: &dyn JointDistribution, coeffs: &ScaleCoefficients, grid: &[f64]) -> Result<RegionQuotient> {
    coeffs.require(Regime::AllPositive)?;
    check_grid(grid, true)?;
    let geo = geometry(coeffs)?;
    let inf = f64::INFINITY;
    let q = |pts: &[(f64, f64)]| -> Vec<Option<f64>> {
        let queries: Vec<(f64, f64)> = pts
            .iter()
            .flat_map(|&(z, w)| {
                let (t1, t2) = (geo.s1 * z, geo.s2 * w);
                [(t1, inf), (inf, t2), (t1, t2)]
            })
            .collect();
        let v = g.eval_batch(&queries);
        v.chunks(3)
            .map(|c| (c[0] > CDF_FLOOR && c[1] > CDF_FLOOR && c[2] > CDF_FLOOR).then(|| c[0].ln() + c[1].ln() - c[2].ln()))
            .collect()
    };

    let mut logs: Vec<Option<f64>> = if geo.rho_lo <= 1.0 && 1.0 <= geo.rho_hi {
        let pts: Vec<(f64, f64)> = grid.iter().map(|&z| (z, z)).collect();
        q(&pts).into_iter().map(|v| v.map(|x| 0.5 * x)).collect()
    } else {
        grid.iter().map(|&s| telescope(&q, s, geo.rho_lo, geo.rho_hi)).collect()
    };
    for x in logs.iter_mut().flatten() {
        *x = x.min(0.0);
    }

    let mut nodes = Vec::new();
    let mut vals = Vec::new();
    let mut skipped = Vec::new();
    for (&z, l) in grid.iter().zip(&logs) {
        match l {
            Some(x) if x.exp() > CDF_FLOOR => {
                nodes.push(z);
                vals.push(x.exp());
            }
            _ => skipped.push(z),
        }
    }
    if nodes.is_empty() {
        return Err(Error::InvalidArgument("every grid node fell below the CDF floor".into()));
    }
    Ok(RegionQuotient {
        fz1_hat: DistributionSpec::tabulated(nodes, isotonic_bounded(&vals, 0.0, 1.0))?,
        region: geo.kind,
        skipped,
    })
}

fn telescope(q: &dyn Fn(&[(f64, f64)]) -> Vec<Option<f64>>, s: f64, lo: f64, hi: f64) -> Option<f64> {
    let r = hi / lo;
    let mut total = 0.0;
    let mut x = s;
    let batch = 32;
    let mut terms = 0;
    while terms < MAX_TELESCOPE_TERMS {
        let pts: Vec<(f64, f64)> = (0..batch)
            .flat_map(|k| {
                let u = x * r.powi(k);
                let z = u / lo;
                [(z, hi * z), (z, u)]
            })
            .collect();
        let v = q(&pts);
        for pair in v.chunks(2) {
            let delta = pair[0]? - pair[1]?;
            total -= delta;
            terms += 1;
            if delta.abs() < 1e-18 {
                return Some(total);
            }
        }
        x *= r.powi(batch);
        if !x.is_finite() {
            break;
        }
    }
    Some(total)
}

/// [`region_quotient_fz1`] followed by reconstruction of `F_X` and `F_Y`.
pub fn recover_by_region_quotient(g: &dyn JointDistribution, coeffs: &ScaleCoefficients, grid: &[f64]) -> Result<RecoveryResult> {
    let rq = region_quotient_fz1(g, coeffs, grid)?;
    let table = rq.fz1_hat.to_table().expect("tabulated");
    let rec = reconstruct(g, g, coeffs, &table.nodes, &table.values, None)?;
    Ok(RecoveryResult {
        method: RecoveryMethod::RegionQuotient,
        fx_hat: rec.fx_hat,
        fy_hat: rec.fy_hat,
        fz1_hat: rec.fz1_hat,
        sup_residual: rec.sup_residual,
        residual_probes: rec.residual_probes,
        skipped_nodes: rq.skipped,
        solver_report: SolverReport::closed_form(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::max_model::{ComponentSystem, JointCdf2D};

    fn analytic(z: DistributionSpec, k: ScaleCoefficients) -> JointCdf2D {
        let e = DistributionSpec::exponential(1.0).unwrap();
        JointCdf2D::analytic(ComponentSystem::independent(e.clone(), e, z).unwrap(), k).unwrap()
    }

    fn geometric(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect()
    }

    #[test]
    fn quotient_identity_on_primary_region() {
        let k = ScaleCoefficients::all_positive(1.0, 2.0, 1.0, 4.0).unwrap();
        let z = DistributionSpec::weibull(1.5, 1.0).unwrap();
        let g = analytic(z.clone(), k);
        for &(t1, t2) in &[(1.0, 1.5), (0.5, 0.8), (2.0, 4.0), (0.3, 0.3)] {
            assert!(t1 / k.a <= t2 / k.c && t1 / k.b >= t2 / k.d);
            let (u, v, j) = (g.eval(t1, f64::INFINITY), g.eval(f64::INFINITY, t2), g.eval(t1, t2));
            assert!((u * v / j - z.cdf(t1 / k.b) * z.cdf(t2 / k.c)).abs() < 1e-10);
        }
    }

    #[test]
    fn exponential_truth_with_mirror_region() {
        let k = ScaleCoefficients::all_positive(1.0, 2.0, 2.0, 1.0).unwrap();
        let z = DistributionSpec::exponential(1.0).unwrap();
        let grid = geometric(0.05, 8.0, 60);
        let rq = region_quotient_fz1(&analytic(z.clone(), k), &k, &grid).unwrap();
        assert_eq!(rq.region, RegionKind::Mirror);
        for &t in &grid {
            assert!((rq.fz1_hat.cdf(t) - z.cdf(t)).abs() < 1e-9, "{t}");
        }
    }

    #[test]
    fn telescoped_sum_matches_truth() {
        let k = ScaleCoefficients::all_positive(1.0, 2.0, 1.0, 4.0).unwrap();
        let z = DistributionSpec::weibull(2.0, 1.0).unwrap();
        let grid = geometric(0.1, 3.0, 25);
        let rq = region_quotient_fz1(&analytic(z.clone(), k), &k, &grid).unwrap();
        assert_eq!(rq.region, RegionKind::Primary);
        for &t in &grid {
            assert!((rq.fz1_hat.cdf(t) - z.cdf(t)).abs() < 1e-9, "{t}");
        }
    }

    #[test]
    fn uniform_truth_is_linear() {
        let k = ScaleCoefficients::all_positive(1.0, 3.0, 2.0, 1.0).unwrap();
        let z = DistributionSpec::uniform(0.0, 1.0).unwrap();
        let sys = ComponentSystem::independent(z.clone(), z.clone(), z).unwrap();
        let g = JointCdf2D::analytic(sys, k).unwrap();
        let grid: Vec<f64> = (1..20).map(|i| i as f64 / 20.0).collect();
        let rq = region_quotient_fz1(&g, &k, &grid).unwrap();
        for &t in &grid {
            assert!((rq.fz1_hat.cdf(t) - t).abs() < 1e-9);
        }
    }

    #[test]
    fn unit_coefficients_use_the_diagonal() {
        let k = ScaleCoefficients::all_positive(1.0, 1.0, 1.0, 1.0).unwrap();
        let z = DistributionSpec::exponential(1.0).unwrap();
        let grid = geometric(0.1, 5.0, 20);
        let rq = region_quotient_fz1(&analytic(z.clone(), k), &k, &grid).unwrap();
        assert_eq!(rq.region, RegionKind::Diagonal);
        for &t in &grid {
            assert!((rq.fz1_hat.cdf(t) - z.cdf(t)).abs() < 1e-9);
        }
    }

    #[test]
    fn degenerate_line_is_unsupported() {
        let k = ScaleCoefficients::all_positive(1.0, 2.0, 1.0, 2.0).unwrap();
        let g = analytic(DistributionSpec::exponential(1.0).unwrap(), k);
        assert!(matches!(region_quotient_fz1(&g, &k, &[1.0]), Err(Error::UnsupportedCoefficients(_))));
    }

    #[test]
    fn full_recovery_round_trip() {
        let k = ScaleCoefficients::all_positive(1.0, 3.0, 2.0, 1.0).unwrap();
        let z = DistributionSpec::weibull(2.0, 1.0).unwrap();
        let g = analytic(z, k);
        let r = recover_by_region_quotient(&g, &k, &geometric(0.05, 4.0, 80)).unwrap();
        assert!(r.sup_residual < 1e-5, "{}", r.sup_residual);
        let e = DistributionSpec::exponential(1.0).unwrap();
        let table = r.fx_hat.to_table().unwrap();
        for (&t, &v) in table.nodes.iter().zip(&table.values) {
            assert!((v - e.cdf(t)).abs() < 1e-4, "{t}");
        }
    }
}

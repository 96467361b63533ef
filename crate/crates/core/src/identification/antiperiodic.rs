use serde::Serialize;

use super::{find_node, TabulatedFn};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum AntiperiodicVerdict {
    Vanishes,
    Inconclusive { reason: String },
    Violated { witness: f64, residual: f64 },
}

/// Checks whether a tabulated `ζ` with `ζ(u) = −ζ(λu)` must vanish.
///
/// The relation fixes `|ζ|` along each orbit `u, λu, λ²u, …`, so once `ζ`
/// decays toward the support boundary every orbit magnitude is zero. On a
/// finite grid the relation is checked at every node whose image is also a
/// node.
///
/// With `λ = 1` the relation reads `ζ(u) = −ζ(u)` and is checked directly as
/// `ζ ≡ 0`. Otherwise the result is `Vanishes` when `|ζ| ≤ tol` everywhere,
/// `Violated` at the first node where the relation fails, and
/// `Inconclusive` when the relation holds but `ζ` does not vanish.
pub fn antiperiodic_vanishing_check(
    zeta: &TabulatedFn,
    lambda: f64,
    boundary_decay: bool,
    tol: f64,
) -> Result<AntiperiodicVerdict> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::InvalidArgument(format!("λ must be positive and finite, got {lambda}")));
    }
    let argmax = || {
        zeta.values
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .map(|(j, v)| (zeta.nodes[j], v.abs()))
    };
    if (lambda - 1.0).abs() <= 1e-12 {
        return Ok(match argmax() {
            Some((u, m)) if m > tol => AntiperiodicVerdict::Violated { witness: u, residual: 2.0 * m },
            _ => AntiperiodicVerdict::Vanishes,
        });
    }
    let Some((&lo, &hi)) = zeta.nodes.first().zip(zeta.nodes.last()) else {
        return Err(Error::InvalidArgument("ζ has no nodes".into()));
    };
    let mut images = Vec::with_capacity(zeta.nodes.len());
    for (&u, &z) in zeta.nodes.iter().zip(&zeta.values) {
        let v = lambda * u;
        let inside = v >= lo * (1.0 - 1e-9) && v <= hi * (1.0 + 1e-9);
        match find_node(&zeta.nodes, v) {
            Some(j) => images.push((u, z, zeta.values[j])),
            None if inside => {
                return Err(Error::Config(format!(
                    "grid is not closed under multiplication by λ = {lambda}: {v} is not a node"
                )))
            }
            None => {}
        }
    }
    for &(u, z, zl) in &images {
        let r = (z + zl).abs();
        if r > tol {
            return Ok(AntiperiodicVerdict::Violated { witness: u, residual: r });
        }
    }
    match argmax() {
        Some((_, m)) if m > tol => Ok(AntiperiodicVerdict::Inconclusive {
            reason: if boundary_decay {
                format!("orbit magnitudes don't decay within grid (max |ζ| = {m:e})")
            } else {
                format!("relation holds with max |ζ| = {m:e} and no decay toward the boundary")
            },
        }),
        _ => Ok(AntiperiodicVerdict::Vanishes),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice(lambda: f64, lo: i32, hi: i32, per: i32) -> Vec<f64> {
        (lo * per..=hi * per).map(|k| lambda.powf(k as f64 / per as f64)).collect()
    }

    #[test]
    fn zero_vanishes() {
        let u = lattice(2.0, -4, 4, 3);
        let z = TabulatedFn::from_fn(&u, |_| 0.0).unwrap();
        for lambda in [2.0, 0.5, 1.0] {
            assert_eq!(antiperiodic_vanishing_check(&z, lambda, true, 1e-10).unwrap(), AntiperiodicVerdict::Vanishes);
        }
    }

    #[test]
    fn exponential_ratio_violates() {
        let u = lattice(2.0, -4, 4, 3);
        let z = TabulatedFn::from_fn(&u, |u| ((1.0 - (-u).exp()) / (1.0 - (-2.0 * u).exp())).ln()).unwrap();
        match antiperiodic_vanishing_check(&z, 2.0, true, 1e-10).unwrap() {
            AntiperiodicVerdict::Violated { witness, residual } => {
                assert!(u.contains(&witness));
                assert!(residual > 1e-3);
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn cosine_is_inconclusive() {
        let lambda: f64 = 2.0;
        let u = lattice(lambda, -4, 4, 4);
        let z = TabulatedFn::from_fn(&u, |u| (std::f64::consts::PI * u.ln() / lambda.ln()).cos()).unwrap();
        assert!(matches!(
            antiperiodic_vanishing_check(&z, lambda, false, 1e-10).unwrap(),
            AntiperiodicVerdict::Inconclusive { .. }
        ));
    }

    #[test]
    fn unit_lambda_checks_zero_directly() {
        let u = [0.5, 1.0, 2.0];
        let z = TabulatedFn::from_fn(&u, |u| u - 1.0).unwrap();
        assert!(matches!(
            antiperiodic_vanishing_check(&z, 1.0, true, 1e-10).unwrap(),
            AntiperiodicVerdict::Violated { witness, .. } if witness == 2.0
        ));
    }

    #[test]
    fn open_grid_is_a_config_error() {
        let z = TabulatedFn::from_fn(&[1.0, 1.5, 2.5, 3.0], |_| 0.0).unwrap();
        assert!(matches!(antiperiodic_vanishing_check(&z, 2.0, true, 1e-10), Err(Error::Config(_))));
        assert!(antiperiodic_vanishing_check(&z, -2.0, true, 1e-10).is_err());
    }
}

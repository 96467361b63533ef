//! Mixed-sign coefficients: the relations any observationally equivalent
//! system must satisfy, candidate alternatives built from them, and a
//! lattice test of joint-CDF equality.
//!
//! With `a, c > 0 > b, d` the marginal of `U` is
//! `F_X(t)·F_Z(t/a)·P(Z ≥ t/b)`. A second system `(M, N, S)` with the same
//! joint law must reproduce both marginals, which fixes `F_M` and `F_N`
//! once `F_S` is chosen. Whether a choice `F_S ≠ F_Z` can also reproduce
//! the full joint CDF is what [`explore_alternatives`] probes.

use serde::Serialize;

use crate::distributions::DistributionSpec;
use crate::error::{Error, Result};
use crate::identification::TabulatedFn;
use crate::max_model::{mixed_product, ComponentSystem, Dependence, Regime, ScaleCoefficients, CDF_FLOOR};

/// Largest joint deviation still reported as equivalence.
pub const EQUIVALENCE_TOL: f64 = 1e-10;
/// Default lattice resolution per axis.
pub const DEFAULT_LATTICE: usize = 64;
const MONOTONE_TOL: f64 = 1e-12;
const LIMIT_PROB: f64 = 1e-9;
const LIMIT_TOL: f64 = 1e-6;

/// `F_Z(t/s₊)·P(Z ≥ t/s₋)`, the shock part of one marginal.
fn shock_part(z: &DistributionSpec, s_pos: f64, s_neg: f64, t: f64) -> f64 {
    z.cdf(t / s_pos) * z.survival_closed(t / s_neg)
}

/// Per-node residuals of the two marginal relations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationReport {
    /// `|F_X·F_Z(t/a)(1−F_Z(t/b)⁻) − F_M·F_S(t/a)(1−F_S(t/b)⁻)|`.
    pub residual_x: TabulatedFn,
    /// The same with `Y, N` and `c, d`.
    pub residual_y: TabulatedFn,
    pub max_residual: f64,
    pub skipped: Vec<f64>,
}

/// Residuals of the marginal relations between `system_a = (X, Y, Z)` and
/// `system_b = (M, N, S)` on `grid`. Both vanish whenever the two joint CDFs
/// agree.
pub fn necessary_relations_check(
    system_a: &ComponentSystem,
    system_b: &ComponentSystem,
    coeffs: &ScaleCoefficients,
    grid: &[f64],
) -> Result<RelationReport> {
    coeffs.require(Regime::MixedSign)?;
    check_sorted(grid)?;
    let (mut nx, mut vx, mut ny, mut vy, mut skipped) = (vec![], vec![], vec![], vec![], vec![]);
    for &t in grid {
        let za = shock_part(system_a.fz1(), coeffs.a, coeffs.b, t);
        let zb = shock_part(system_b.fz1(), coeffs.a, coeffs.b, t);
        let wa = shock_part(system_a.fz1(), coeffs.c, coeffs.d, t);
        let wb = shock_part(system_b.fz1(), coeffs.c, coeffs.d, t);
        if za.min(zb).min(wa).min(wb) <= CDF_FLOOR {
            skipped.push(t);
            continue;
        }
        nx.push(t);
        vx.push((system_a.fx().cdf(t) * za - system_b.fx().cdf(t) * zb).abs());
        ny.push(t);
        vy.push((system_a.fy().cdf(t) * wa - system_b.fy().cdf(t) * wb).abs());
    }
    let max_residual = vx.iter().chain(&vy).cloned().fold(0.0, f64::max);
    Ok(RelationReport {
        residual_x: TabulatedFn { nodes: nx, values: vx },
        residual_y: TabulatedFn { nodes: ny, values: vy },
        max_residual,
        skipped,
    })
}

fn check_sorted(grid: &[f64]) -> Result<()> {
    if grid.is_empty() || grid.iter().any(|t| !t.is_finite()) || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("grid must be nonempty, finite and strictly increasing".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Validity {
    ValidCdfs,
    InvalidWithWitness { node: f64, reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Equivalence {
    Equivalent { max_deviation: f64 },
    NotEquivalent { max_deviation: f64, witness: (f64, f64) },
}

/// Outcome of [`verify_equal_joint`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JointComparison {
    pub equivalence: Equivalence,
    pub lattice_shape: (usize, usize),
    pub t1_range: (f64, f64),
    pub t2_range: (f64, f64),
    /// Equivalent on the lattice while the lattice leaves some probability
    /// mass of `U` or `V` unprobed.
    pub lattice_limited: bool,
}

impl JointComparison {
    pub fn equivalence_holds(&self) -> bool {
        matches!(self.equivalence, Equivalence::Equivalent { .. })
    }
}

/// `F_M = F_X·[F_Z(t/a)(1−F_Z(t/b)⁻)] / [F_S(t/a)(1−F_S(t/b)⁻)]`, kept as a
/// formula so joint comparisons are not limited by table resolution.
#[derive(Debug, Clone, PartialEq)]
struct RatioMarginal {
    base: DistributionSpec,
    fz: DistributionSpec,
    fs: DistributionSpec,
    s_pos: f64,
    s_neg: f64,
}

impl RatioMarginal {
    fn eval(&self, t: f64) -> Option<f64> {
        let f = self.base.cdf(t);
        let num = shock_part(&self.fz, self.s_pos, self.s_neg, t);
        let den = shock_part(&self.fs, self.s_pos, self.s_neg, t);
        if num == den {
            Some(f)
        } else if f == 0.0 {
            Some(0.0)
        } else if den <= CDF_FLOOR {
            None
        } else {
            Some(f * (num / den))
        }
    }

    fn eval_or_zero(&self, t: f64) -> f64 {
        self.eval(t).unwrap_or(0.0)
    }
}

/// A proposed `(M, N, S)` system for the same joint law.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlternativeCandidate {
    /// `F_M` on the build grid, as computed (may fail to be a CDF).
    pub fm_values: TabulatedFn,
    pub fn_values: TabulatedFn,
    /// Tabulated `F_M`, present when `validity` is `ValidCdfs`.
    pub fm: Option<DistributionSpec>,
    pub fn_: Option<DistributionSpec>,
    pub fs1: DistributionSpec,
    pub validity: Validity,
    /// Max residual of the marginal relations on the build grid.
    pub relation_residual: f64,
    pub comparison: Option<JointComparison>,
    #[serde(skip)]
    rules: Option<(RatioMarginal, RatioMarginal)>,
}

impl AlternativeCandidate {
    /// A candidate given directly by its three laws, with no relation
    /// imposed.
    pub fn from_components(fm: DistributionSpec, fn_: DistributionSpec, fs1: DistributionSpec, grid: &[f64]) -> Result<Self> {
        check_sorted(grid)?;
        Ok(Self {
            fm_values: TabulatedFn::from_fn(grid, |t| fm.cdf(t))?,
            fn_values: TabulatedFn::from_fn(grid, |t| fn_.cdf(t))?,
            fm: Some(fm),
            fn_: Some(fn_),
            fs1,
            validity: Validity::ValidCdfs,
            relation_residual: f64::NAN,
            comparison: None,
            rules: None,
        })
    }

    pub fn equivalence(&self) -> Option<&Equivalence> {
        self.comparison.as_ref().map(|c| &c.equivalence)
    }

    pub fn is_equivalent(&self) -> bool {
        matches!(self.equivalence(), Some(Equivalence::Equivalent { .. }))
    }

    /// The candidate as a component system (tables for `M` and `N`).
    pub fn as_system(&self) -> Result<ComponentSystem> {
        match (&self.fm, &self.fn_) {
            (Some(m), Some(n)) => ComponentSystem::independent(m.clone(), n.clone(), self.fs1.clone()),
            _ => Err(Error::InvalidArgument("candidate does not consist of valid CDFs".into())),
        }
    }

    fn joint(&self, coeffs: &ScaleCoefficients, t1: f64, t2: f64) -> f64 {
        let lower = (t1 / coeffs.a).min(t2 / coeffs.c);
        let upper = (t1 / coeffs.b).max(t2 / coeffs.d);
        let (m, n) = match &self.rules {
            Some((rm, rn)) => (rm.eval_or_zero(t1), rn.eval_or_zero(t2)),
            None => (self.fm.as_ref().map_or(0.0, |f| f.cdf(t1)), self.fn_.as_ref().map_or(0.0, |f| f.cdf(t2))),
        };
        // same factor order as the forward model so identical inputs agree bit for bit
        m * n * self.fs1.cdf(lower) * self.fs1.survival_closed(upper)
    }
}

/// Axes of the comparison lattice.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeLattice {
    pub t1: Vec<f64>,
    pub t2: Vec<f64>,
}

impl ProbeLattice {
    /// `n × n` nodes at the `(k + ½)/n` quantiles of `F_X` and `F_Y`.
    pub fn quantile_spaced(system: &ComponentSystem, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("lattice needs at least one node per axis".into()));
        }
        let axis = |f: &DistributionSpec| -> Result<Vec<f64>> {
            let mut v = (0..n).map(|k| f.quantile((k as f64 + 0.5) / n as f64)).collect::<Result<Vec<_>>>()?;
            v.dedup();
            Ok(v)
        };
        Ok(Self { t1: axis(system.fx())?, t2: axis(system.fy())? })
    }
}

fn check_marginal(rule: &RatioMarginal, grid: &[f64]) -> (Vec<f64>, Vec<f64>, Validity) {
    let mut nodes = Vec::new();
    let mut vals = Vec::new();
    let mut validity = Validity::ValidCdfs;
    let fail = |node: f64, reason: &str, validity: &mut Validity| {
        if *validity == Validity::ValidCdfs {
            *validity = Validity::InvalidWithWitness { node, reason: reason.into() };
        }
    };
    for &t in grid {
        let Some(v) = rule.eval(t) else {
            continue;
        };
        if !v.is_finite() || v < -MONOTONE_TOL {
            fail(t, "value below 0", &mut validity);
        } else if v > 1.0 + MONOTONE_TOL {
            fail(t, "value above 1", &mut validity);
        }
        if let Some(&prev) = vals.last() {
            if v < prev - MONOTONE_TOL {
                fail(t, "decreasing", &mut validity);
            }
        }
        nodes.push(t);
        vals.push(v);
    }
    if nodes.is_empty() {
        fail(grid[0], "undefined on the whole grid", &mut validity);
    }
    for (p, want_low) in [(LIMIT_PROB, true), (1.0 - LIMIT_PROB, false)] {
        let Ok(q) = rule.base.quantile(p) else { continue };
        match rule.eval(q) {
            Some(v) if want_low && v > LIMIT_TOL => fail(q, "does not tend to 0 at the lower end", &mut validity),
            Some(v) if !want_low && v < 1.0 - LIMIT_TOL => fail(q, "does not tend to 1 at the upper end", &mut validity),
            _ => {}
        }
    }
    (nodes, vals, validity)
}

/// Solves the marginal relations for `F_M` and `F_N` given `F_S = s1`,
/// checks that both are CDFs on `grid` and, if so, compares the joint CDFs
/// on the default quantile lattice.
pub fn construct_alternative(
    system: &ComponentSystem,
    coeffs: &ScaleCoefficients,
    s1: DistributionSpec,
    grid: &[f64],
) -> Result<AlternativeCandidate> {
    coeffs.require(Regime::MixedSign)?;
    check_sorted(grid)?;
    if system.dependence() != &Dependence::Independent {
        return Err(Error::Config("mixed-sign alternatives assume independent components".into()));
    }
    if !s1.support().same_as(system.fz1().support()) {
        return Err(Error::Config(format!(
            "candidate shared law must have the common support {:?}, got {:?}",
            system.fz1().support(),
            s1.support()
        )));
    }
    let rm = RatioMarginal { base: system.fx().clone(), fz: system.fz1().clone(), fs: s1.clone(), s_pos: coeffs.a, s_neg: coeffs.b };
    let rn = RatioMarginal { base: system.fy().clone(), fz: system.fz1().clone(), fs: s1.clone(), s_pos: coeffs.c, s_neg: coeffs.d };
    let (mn, mv, m_ok) = check_marginal(&rm, grid);
    let (nn, nv, n_ok) = check_marginal(&rn, grid);
    let validity = if m_ok != Validity::ValidCdfs { m_ok } else { n_ok };

    let table = |nodes: &[f64], vals: &[f64], base: &DistributionSpec| -> Option<DistributionSpec> {
        let clipped: Vec<f64> = vals.iter().map(|v| v.clamp(0.0, 1.0)).collect();
        DistributionSpec::tabulated_on(nodes.to_vec(), clipped, *base.support()).ok()
    };
    let (fm, fn_) = if validity == Validity::ValidCdfs {
        (table(&mn, &mv, system.fx()), table(&nn, &nv, system.fy()))
    } else {
        (None, None)
    };
    let validity = match (&validity, &fm, &fn_) {
        (Validity::ValidCdfs, Some(_), Some(_)) => validity,
        (Validity::ValidCdfs, _, _) => Validity::InvalidWithWitness { node: grid[0], reason: "table rejected".into() },
        _ => validity,
    };

    let mut relation_residual = 0.0f64;
    for (&t, &v) in mn.iter().zip(&mv) {
        let lhs = system.fx().cdf(t) * shock_part(system.fz1(), coeffs.a, coeffs.b, t);
        relation_residual = relation_residual.max((lhs - v * shock_part(&s1, coeffs.a, coeffs.b, t)).abs());
    }
    for (&t, &v) in nn.iter().zip(&nv) {
        let lhs = system.fy().cdf(t) * shock_part(system.fz1(), coeffs.c, coeffs.d, t);
        relation_residual = relation_residual.max((lhs - v * shock_part(&s1, coeffs.c, coeffs.d, t)).abs());
    }

    let mut candidate = AlternativeCandidate {
        fm_values: TabulatedFn { nodes: mn, values: mv },
        fn_values: TabulatedFn { nodes: nn, values: nv },
        fm,
        fn_,
        fs1: s1,
        validity,
        relation_residual,
        comparison: None,
        rules: Some((rm, rn)),
    };
    if candidate.validity == Validity::ValidCdfs {
        let lattice = ProbeLattice::quantile_spaced(system, DEFAULT_LATTICE)?;
        candidate.comparison = Some(verify_equal_joint(system, &candidate, coeffs, &lattice)?);
    }
    Ok(candidate)
}

/// `max |G_A − G_B|` over the lattice with the argmax as witness.
pub fn verify_equal_joint(
    system_a: &ComponentSystem,
    candidate: &AlternativeCandidate,
    coeffs: &ScaleCoefficients,
    lattice: &ProbeLattice,
) -> Result<JointComparison> {
    coeffs.require(Regime::MixedSign)?;
    if candidate.validity != Validity::ValidCdfs {
        return Err(Error::InvalidArgument("candidate is not a valid system of CDFs".into()));
    }
    if lattice.t1.is_empty() || lattice.t2.is_empty() {
        return Err(Error::InvalidArgument("lattice axes must be nonempty".into()));
    }
    let rows: Vec<(f64, (f64, f64))> = std::thread::scope(|s| {
        let handles: Vec<_> = lattice
            .t1
            .iter()
            .map(|&t1| {
                s.spawn(move || {
                    let mut best = (-1.0, (t1, f64::NAN));
                    for &t2 in &lattice.t2 {
                        let ga = mixed_product(system_a.fx(), system_a.fy(), system_a.fz1(), coeffs, t1, t2);
                        let dev = (ga - candidate.joint(coeffs, t1, t2)).abs();
                        if dev > best.0 || dev.is_nan() {
                            best = (dev, (t1, t2));
                        }
                    }
                    best
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("lattice worker panicked")).collect()
    });
    let (max_deviation, witness) = rows.into_iter().fold((-1.0, (f64::NAN, f64::NAN)), |acc, r| if r.0 > acc.0 || r.0.is_nan() { r } else { acc });
    let t1_range = (lattice.t1[0], lattice.t1[lattice.t1.len() - 1]);
    let t2_range = (lattice.t2[0], lattice.t2[lattice.t2.len() - 1]);
    let equivalent = max_deviation <= EQUIVALENCE_TOL;
    let g = |t1: f64, t2: f64| mixed_product(system_a.fx(), system_a.fy(), system_a.fz1(), coeffs, t1, t2);
    let inf = f64::INFINITY;
    let covers = g(t1_range.0, inf) <= 1e-15
        && g(t1_range.1, inf) >= 1.0 - 1e-15
        && g(inf, t2_range.0) <= 1e-15
        && g(inf, t2_range.1) >= 1.0 - 1e-15;
    Ok(JointComparison {
        equivalence: if equivalent {
            Equivalence::Equivalent { max_deviation }
        } else {
            Equivalence::NotEquivalent { max_deviation, witness }
        },
        lattice_shape: (lattice.t1.len(), lattice.t2.len()),
        t1_range,
        t2_range,
        lattice_limited: equivalent && !covers,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExplorationEntry {
    pub index: usize,
    pub s1: DistributionSpec,
    /// `s1` equals the true shared law on the build grid.
    pub is_identity: bool,
    pub validity: Validity,
    pub equivalence: Option<Equivalence>,
    pub relation_residual: f64,
}

/// Results of trying a family of `s1` candidates against one system.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExplorationReport {
    pub coefficients: ScaleCoefficients,
    pub entries: Vec<ExplorationEntry>,
    pub valid_candidates: usize,
    /// Some `s1 ≠ F_Z` reproduced the joint CDF on the lattice.
    pub nontrivial_equivalent_found: bool,
}

/// Runs [`construct_alternative`] for every candidate concurrently and
/// aggregates in input order.
pub fn explore_alternatives(
    system: &ComponentSystem,
    coeffs: &ScaleCoefficients,
    candidates: &[DistributionSpec],
    grid: &[f64],
) -> Result<ExplorationReport> {
    let results: Vec<Result<AlternativeCandidate>> = std::thread::scope(|s| {
        let handles: Vec<_> = candidates
            .iter()
            .map(|c| s.spawn(move || construct_alternative(system, coeffs, c.clone(), grid)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("candidate worker panicked")).collect()
    });
    let mut entries = Vec::with_capacity(results.len());
    for (index, (r, s1)) in results.into_iter().zip(candidates).enumerate() {
        let cand = r?;
        let is_identity = grid.iter().all(|&t| s1.cdf(t) == system.fz1().cdf(t) && s1.cdf_left(t) == system.fz1().cdf_left(t));
        entries.push(ExplorationEntry {
            index,
            s1: s1.clone(),
            is_identity,
            validity: cand.validity.clone(),
            equivalence: cand.equivalence().cloned(),
            relation_residual: cand.relation_residual,
        });
    }
    let valid_candidates = entries.iter().filter(|e| e.validity == Validity::ValidCdfs).count();
    let nontrivial_equivalent_found =
        entries.iter().any(|e| !e.is_identity && matches!(e.equivalence, Some(Equivalence::Equivalent { .. })));
    Ok(ExplorationReport { coefficients: *coeffs, entries, valid_candidates, nontrivial_equivalent_found })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exp(rate: f64) -> DistributionSpec {
        DistributionSpec::exponential(rate).unwrap()
    }

    fn setup() -> (ComponentSystem, ScaleCoefficients, Vec<f64>) {
        let sys = ComponentSystem::independent(exp(1.0), exp(1.0), exp(1.0)).unwrap();
        let k = ScaleCoefficients::mixed_sign(1.0, -1.0, 1.0, -1.0).unwrap();
        let grid = (1..=100).map(|i| 0.08 * i as f64).collect();
        (sys, k, grid)
    }

    #[test]
    fn identity_candidate_is_exact() {
        let (sys, k, grid) = setup();
        let c = construct_alternative(&sys, &k, exp(1.0), &grid).unwrap();
        assert_eq!(c.validity, Validity::ValidCdfs);
        assert_eq!(c.equivalence(), Some(&Equivalence::Equivalent { max_deviation: 0.0 }));
        for (&t, &v) in c.fm_values.nodes.iter().zip(&c.fm_values.values) {
            assert_eq!(v, sys.fx().cdf(t));
        }
        assert_eq!(c.relation_residual, 0.0);
    }

    #[test]
    fn faster_shared_law_gives_tanh_marginal() {
        let (sys, k, grid) = setup();
        let c = construct_alternative(&sys, &k, exp(2.0), &grid).unwrap();
        assert_eq!(c.validity, Validity::ValidCdfs);
        for (&t, &v) in c.fm_values.nodes.iter().zip(&c.fm_values.values) {
            assert!((v - (t / 2.0).tanh()).abs() < 1e-14);
        }
        assert!(c.relation_residual <= 1e-12);
        assert!(!c.is_equivalent());
        let report = necessary_relations_check(&sys, &c.as_system().unwrap(), &k, &grid).unwrap();
        assert!(report.max_residual <= 1e-12);
    }

    #[test]
    fn heavier_shared_law_breaks_the_cdf() {
        let (sys, k, grid) = setup();
        let c = construct_alternative(&sys, &k, exp(0.2), &grid).unwrap();
        assert!(matches!(c.validity, Validity::InvalidWithWitness { .. }));
        assert!(c.comparison.is_none());
        assert!(verify_equal_joint(&sys, &c, &k, &ProbeLattice { t1: vec![1.0], t2: vec![1.0] }).is_err());
    }

    #[test]
    fn relations_detect_changed_shared_law() {
        let (sys, k, grid) = setup();
        let other = ComponentSystem::independent(exp(1.0), exp(1.0), exp(1.5)).unwrap();
        assert!(necessary_relations_check(&sys, &sys, &k, &grid).unwrap().max_residual == 0.0);
        assert!(necessary_relations_check(&sys, &other, &k, &grid).unwrap().max_residual >= 1e-3);
    }

    #[test]
    fn unconstrained_candidate_is_not_equivalent() {
        let (sys, k, grid) = setup();
        let c = AlternativeCandidate::from_components(exp(1.0), exp(1.0), exp(1.3), &grid).unwrap();
        let lattice = ProbeLattice::quantile_spaced(&sys, 16).unwrap();
        match verify_equal_joint(&sys, &c, &k, &lattice).unwrap().equivalence {
            Equivalence::NotEquivalent { max_deviation, .. } => assert!(max_deviation >= 1e-3),
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn differences_beyond_the_lattice_are_flagged() {
        let (sys, k, grid) = setup();
        let lattice = ProbeLattice { t1: vec![0.5, 1.0], t2: vec![0.5, 1.0] };
        let z1 = exp(1.0).cdf(1.0);
        let nodes = vec![0.0, 0.5, 1.0, 2.0, 5.0];
        let values = vec![0.0, exp(1.0).cdf(0.5), z1, z1 + 0.5 * (1.0 - z1), 1.0];
        let s = DistributionSpec::tabulated(nodes, values).unwrap();
        let c = AlternativeCandidate::from_components(exp(1.0), exp(1.0), s, &grid).unwrap();
        let r = verify_equal_joint(&sys, &c, &k, &lattice).unwrap();
        assert_eq!(r.equivalence, Equivalence::Equivalent { max_deviation: 0.0 });
        assert!(r.lattice_limited);
        let wide = ProbeLattice { t1: vec![0.5, 1.0, 3.0], t2: vec![0.5, 1.0, 3.0] };
        assert!(!verify_equal_joint(&sys, &c, &k, &wide).unwrap().equivalence_holds());
    }

    #[test]
    fn exploration_aggregates_in_order() {
        let (sys, k, grid) = setup();
        let r = explore_alternatives(&sys, &k, &[exp(1.0), exp(2.0), exp(0.2)], &grid).unwrap();
        assert_eq!(r.entries.len(), 3);
        assert!(r.entries[0].is_identity && !r.entries[1].is_identity);
        assert_eq!(r.valid_candidates, 2);
        assert!(!r.nontrivial_equivalent_found);
    }

    #[test]
    fn rejects_foreign_support() {
        let (sys, k, grid) = setup();
        let u = DistributionSpec::uniform(0.0, 1.0).unwrap();
        assert!(matches!(construct_alternative(&sys, &k, u, &grid), Err(Error::Config(_))));
    }
}

use serde::{Deserialize, Serialize};

use super::reconstruct::reconstruct;
use super::{check_grid, find_node, RecoveryMethod, RecoveryResult, SolverReport, StartReport};
use crate::error::{Error, Result};
use crate::isotonic::isotonic_bounded;
use crate::max_independence::Generator;
use crate::max_model::{JointDistribution, Regime, ScaleCoefficients};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSolverConfig {
    pub starts: usize,
    pub max_iterations: usize,
    /// Stop once one iteration lowers the objective by less than this.
    pub objective_tol: f64,
    /// Largest multistart spread still reported as agreement.
    pub agreement_tol: f64,
    pub floor: f64,
    /// Cap on probe rows; rows are thinned with a fixed stride.
    pub max_probes: Option<usize>,
    /// Explicit starting tables of `F_Z` on the grid. Replaces the
    /// generated starts when nonempty.
    pub initial_tables: Vec<Vec<f64>>,
}

impl Default for GridSolverConfig {
    fn default() -> Self {
        Self {
            starts: 5,
            max_iterations: 10_000,
            objective_tol: 1e-14,
            agreement_tol: 1e-4,
            floor: 1e-12,
            max_probes: None,
            initial_tables: Vec::new(),
        }
    }
}

/// `G / β` with the generator evaluated at the model's own arguments.
/// Returns NaN where `β` is below the floor so those probes are skipped.
pub struct GeneratorQuotient<'a> {
    pub inner: &'a dyn JointDistribution,
    pub generator: &'a Generator,
    pub coeffs: ScaleCoefficients,
    pub floor: f64,
}

impl JointDistribution for GeneratorQuotient<'_> {
    fn eval(&self, t1: f64, t2: f64) -> f64 {
        let g = self.inner.eval(t1, t2);
        self.adjust(g, t1, t2)
    }

    fn eval_batch(&self, points: &[(f64, f64)]) -> Vec<f64> {
        let g = self.inner.eval_batch(points);
        g.into_iter().zip(points).map(|(g, &(t1, t2))| self.adjust(g, t1, t2)).collect()
    }
}

impl GeneratorQuotient<'_> {
    fn adjust(&self, g: f64, t1: f64, t2: f64) -> f64 {
        let (m1, m2) = self.coeffs.shock_arguments(t1, t2);
        let beta = self.generator.beta([t1, t2, m1, m2]);
        if beta < self.floor {
            f64::NAN
        } else {
            g / beta
        }
    }
}

/// One linearized probe: `Σ coef·ℓ[idx] = y`.
struct Row {
    terms: Vec<(usize, f64)>,
    y: f64,
}

struct System {
    rows: Vec<Row>,
    n: usize,
    lipschitz: f64,
}

impl System {
    fn objective(&self, l: &[f64]) -> f64 {
        self.rows
            .iter()
            .map(|r| {
                let e = r.terms.iter().map(|&(j, c)| c * l[j]).sum::<f64>() - r.y;
                e * e
            })
            .sum()
    }

    fn gradient(&self, l: &[f64], out: &mut [f64]) {
        out.fill(0.0);
        for r in &self.rows {
            let e = r.terms.iter().map(|&(j, c)| c * l[j]).sum::<f64>() - r.y;
            for &(j, c) in &r.terms {
                out[j] += 2.0 * c * e;
            }
        }
    }
}

/// Builds probe rows on the lattice `(s₁zᵢ, s₂zₖ)`, `s₁ ∈ {a, b}`,
/// `s₂ ∈ {c, d}`. With `F_X, F_Y` divided out through the marginals, each row
/// is
///
/// ```text
/// ln G − ln F_U(t₁) − ln F_V(t₂) = L(m₁) + L(m₂) − L(t₁/a) − L(t₁/b) − L(t₂/c) − L(t₂/d).
/// ```
///
/// A row is kept only when every argument that survives cancellation is a
/// grid node, so the truth is an exact zero of the objective.
fn build_rows(
    g: &dyn JointDistribution,
    k: &ScaleCoefficients,
    grid: &[f64],
    floor: f64,
) -> (Vec<(Vec<(usize, f64)>, f64)>, usize) {
    let mut pts = Vec::new();
    for &s1 in &dedup([k.a, k.b]) {
        for &s2 in &dedup([k.c, k.d]) {
            for &zi in grid {
                for &zk in grid {
                    pts.push((s1 * zi, s2 * zk));
                }
            }
        }
    }
    let mut structural = Vec::new();
    let mut keep_pts = Vec::new();
    for &(t1, t2) in &pts {
        let (m1, m2) = k.shock_arguments(t1, t2);
        let args = [(m1, 1.0), (m2, 1.0), (t1 / k.a, -1.0), (t1 / k.b, -1.0), (t2 / k.c, -1.0), (t2 / k.d, -1.0)];
        let mut combined: Vec<(f64, f64)> = Vec::new();
        for (x, c) in args {
            match combined.iter_mut().find(|(y, _)| (x - *y).abs() <= 1e-12 * x.abs()) {
                Some(e) => e.1 += c,
                None => combined.push((x, c)),
            }
        }
        combined.retain(|&(_, c)| c != 0.0);
        if combined.is_empty() {
            continue;
        }
        let Some(terms) = combined.iter().map(|&(x, c)| find_node(grid, x).map(|j| (j, c))).collect::<Option<Vec<_>>>()
        else {
            continue;
        };
        let mut terms = terms;
        terms.sort_by_key(|t| t.0);
        structural.push(terms);
        keep_pts.push((t1, t2));
    }
    let inf = f64::INFINITY;
    let queries: Vec<(f64, f64)> = keep_pts.iter().flat_map(|&(t1, t2)| [(t1, t2), (t1, inf), (inf, t2)]).collect();
    let vals = g.eval_batch(&queries);
    let mut rows = Vec::new();
    let mut skipped = 0;
    for (terms, v) in structural.into_iter().zip(vals.chunks(3)) {
        if v.iter().all(|&x| x > floor) {
            rows.push((terms, v[0].ln() - v[1].ln() - v[2].ln()));
        } else {
            skipped += 1;
        }
    }
    // identical structural rows from different coefficient pairs are kept:
    // they are distinct observations once the input is not exact
    (rows, skipped)
}

fn dedup(v: [f64; 2]) -> Vec<f64> {
    if v[0] == v[1] {
        vec![v[0]]
    } else {
        v.to_vec()
    }
}

struct StartOutcome {
    l: Vec<f64>,
    trace: Vec<f64>,
    converged: bool,
}

/// FISTA with adaptive restart, projected onto nondecreasing `ℓ` in
/// `[ln floor, 0]`.
fn run_start(sys: &System, l0: Vec<f64>, cfg: &GridSolverConfig) -> StartOutcome {
    let lo = cfg.floor.ln();
    let step = 1.0 / sys.lipschitz;
    let mut x = isotonic_bounded(&l0, lo, 0.0);
    let mut y = x.clone();
    let mut t = 1.0f64;
    let mut grad = vec![0.0; sys.n];
    let mut f_prev = sys.objective(&x);
    let mut trace = Vec::new();
    let mut converged = false;
    for _ in 0..cfg.max_iterations {
        sys.gradient(&y, &mut grad);
        let trial: Vec<f64> = y.iter().zip(&grad).map(|(v, g)| v - step * g).collect();
        let x_new = isotonic_bounded(&trial, lo, 0.0);
        let f = sys.objective(&x_new);
        if f > f_prev {
            // momentum overshoot: restart from the last iterate with a plain step
            t = 1.0;
            sys.gradient(&x, &mut grad);
            let trial: Vec<f64> = x.iter().zip(&grad).map(|(v, g)| v - step * g).collect();
            let x_plain = isotonic_bounded(&trial, lo, 0.0);
            let fp = sys.objective(&x_plain);
            trace.push(fp.min(f_prev));
            if fp >= f_prev || f_prev - fp < cfg.objective_tol {
                if fp < f_prev {
                    x = x_plain;
                }
                converged = true;
                break;
            }
            x = x_plain;
            y = x.clone();
            f_prev = fp;
            continue;
        }
        trace.push(f);
        let decrease = f_prev - f;
        let t_new = 0.5 * (1.0 + (1.0 + 4.0 * t * t).sqrt());
        let mom = (t - 1.0) / t_new;
        y = x_new.iter().zip(&x).map(|(a, b)| a + mom * (a - b)).collect();
        x = x_new;
        t = t_new;
        f_prev = f;
        if decrease < cfg.objective_tol {
            converged = true;
            break;
        }
    }
    StartOutcome { l: x, trace, converged }
}

fn initial_tables(n: usize, cfg: &GridSolverConfig) -> Result<Vec<Vec<f64>>> {
    if !cfg.initial_tables.is_empty() {
        for t in &cfg.initial_tables {
            if t.len() != n {
                return Err(Error::Config(format!("initial table has {} values for {n} grid nodes", t.len())));
            }
        }
        return Ok(cfg.initial_tables.clone());
    }
    let k = cfg.starts;
    Ok((0..k)
        .map(|s| {
            let gamma = if k == 1 { 1.0 } else { 2f64.powf(2.0 * s as f64 / (k - 1) as f64 - 1.0) };
            (0..n).map(|j| ((j + 1) as f64 / (n + 1) as f64).powf(gamma)).collect()
        })
        .collect())
}

fn solve(
    observed: &dyn JointDistribution,
    adjusted: &dyn JointDistribution,
    coeffs: &ScaleCoefficients,
    grid: &[f64],
    cfg: &GridSolverConfig,
    generator: Option<&Generator>,
    method: RecoveryMethod,
) -> Result<RecoveryResult> {
    coeffs.require(Regime::AllPositive)?;
    check_grid(grid, true)?;
    if cfg.starts == 0 && cfg.initial_tables.is_empty() {
        return Err(Error::Config("solver needs at least one start".into()));
    }
    if !(cfg.floor > 0.0 && cfg.floor < 1.0) {
        return Err(Error::Config(format!("floor must lie in (0, 1), got {}", cfg.floor)));
    }
    let starts = initial_tables(grid.len(), cfg)?;

    let (mut raw, _skipped_probes) = build_rows(adjusted, coeffs, grid, cfg.floor);
    if let Some(cap) = cfg.max_probes {
        if cap == 0 {
            return Err(Error::Config("max_probes must be positive".into()));
        }
        if raw.len() > cap {
            let n = raw.len();
            raw = (0..cap).map(|i| raw[i * n / cap].clone()).collect();
        }
    }
    let mut covered = vec![false; grid.len()];
    for (terms, _) in &raw {
        for &(j, _) in terms {
            covered[j] = true;
        }
    }
    let index: Vec<Option<usize>> = covered
        .iter()
        .scan(0, |next, &c| {
            Some(c.then(|| {
                *next += 1;
                *next - 1
            }))
        })
        .collect();
    let nodes: Vec<f64> = grid.iter().zip(&covered).filter(|(_, &c)| c).map(|(&z, _)| z).collect();
    let uncovered: Vec<f64> = grid.iter().zip(&covered).filter(|(_, &c)| !c).map(|(&z, _)| z).collect();
    if nodes.is_empty() {
        return Err(Error::InvalidArgument("no probe pair ties the grid to the joint CDF".into()));
    }
    let rows: Vec<Row> = raw
        .into_iter()
        .map(|(terms, y)| Row { terms: terms.into_iter().map(|(j, c)| (index[j].unwrap(), c)).collect(), y })
        .collect();
    let n = nodes.len();
    let mut bound = vec![0.0; n];
    for r in &rows {
        let s: f64 = r.terms.iter().map(|t| t.1.abs()).sum();
        for &(j, c) in &r.terms {
            bound[j] += c.abs() * s;
        }
    }
    let lipschitz = 2.0 * bound.iter().cloned().fold(0.0, f64::max);
    let sys = System { rows, n, lipschitz };

    let starts: Vec<Vec<f64>> = starts
        .into_iter()
        .map(|t| grid.iter().zip(&covered).zip(t).filter(|((_, &c), _)| c).map(|(_, v)| v.max(cfg.floor).ln()).collect())
        .collect();
    let outcomes: Vec<StartOutcome> = std::thread::scope(|s| {
        let handles: Vec<_> = starts.into_iter().map(|l0| s.spawn(|| run_start(&sys, l0, cfg))).collect();
        handles.into_iter().map(|h| h.join().expect("solver thread panicked")).collect()
    });

    let objectives: Vec<f64> = outcomes.iter().map(|o| sys.objective(&o.l)).collect();
    let best = (0..outcomes.len())
        .min_by(|&i, &j| objectives[i].total_cmp(&objectives[j]).then(i.cmp(&j)))
        .expect("at least one start");
    let best_vals: Vec<f64> = outcomes[best].l.iter().map(|v| v.exp()).collect();
    let spread = outcomes
        .iter()
        .flat_map(|o| o.l.iter().zip(&best_vals).map(|(v, b)| (v.exp() - b).abs()))
        .fold(0.0, f64::max);
    let ambiguous = spread > cfg.agreement_tol;

    let rec = reconstruct(observed, adjusted, coeffs, &nodes, &best_vals, generator)?;
    let report = SolverReport {
        iterations: outcomes[best].trace.len(),
        objective_trace: outcomes[best].trace.clone(),
        starts: outcomes
            .iter()
            .enumerate()
            .map(|(i, o)| StartReport { index: i, iterations: o.trace.len(), objective: objectives[i], converged: o.converged })
            .collect(),
        selected_start: Some(best),
        multistart_spread: spread,
        agreement_tol: cfg.agreement_tol,
        ambiguous,
        probes: sys.rows.len(),
        uncovered_nodes: uncovered.clone(),
        note: ambiguous.then(|| {
            "starts disagree: the grid data do not pin down F_Z uniquely; with a ≠ b this is expected when F_Z is not smooth"
                .to_string()
        }),
    };
    let skipped = uncovered;
    Ok(RecoveryResult {
        method,
        fx_hat: rec.fx_hat,
        fy_hat: rec.fy_hat,
        fz1_hat: rec.fz1_hat,
        sup_residual: rec.sup_residual,
        residual_probes: rec.residual_probes,
        skipped_nodes: skipped,
        solver_report: report,
    })
}

/// Least-squares recovery for positive coefficients with multistart.
///
/// The unknowns are `ℓⱼ = ln F_Z(zⱼ)` on the grid nodes that appear in at
/// least one probe row. `F_X` and `F_Y` follow from the best table through
/// the marginals. Nodes never reached by a probe are reported and left out
/// of the recovered table.
pub fn recover_positive_general(
    g: &dyn JointDistribution,
    coeffs: &ScaleCoefficients,
    grid: &[f64],
    config: &GridSolverConfig,
) -> Result<RecoveryResult> {
    solve(g, g, coeffs, grid, config, None, RecoveryMethod::GridSolver)
}

/// Recovery when the components are max-independent with a known generator.
///
/// The generator factor is divided out of `g` at every probe and the
/// independent solver is run on the quotient. The residual is recomputed
/// against the original `g` with `β` restored.
pub fn recover_maxind(
    g: &dyn JointDistribution,
    coeffs: &ScaleCoefficients,
    generator: &Generator,
    grid: &[f64],
    config: &GridSolverConfig,
) -> Result<RecoveryResult> {
    let adjusted = GeneratorQuotient { inner: g, generator, coeffs: *coeffs, floor: config.floor };
    solve(g, &adjusted, coeffs, grid, config, Some(generator), RecoveryMethod::GridSolverMaxIndependent)
}

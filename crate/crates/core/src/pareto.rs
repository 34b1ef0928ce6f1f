//! Efficient solutions of a [`TriObjectiveMilp`].
//!
//! Three scalarizations are offered: [`weighted_sum`], [`lexicographic`] and
//! the two-stage ε-constraint sweep [`epsilon_constraint_enumerate`]. All
//! results go through [`filter_nondominated`] before they are reported as a
//! [`ParetoSet`].

use log::debug;
use rayon::prelude::*;
use thiserror::Error;

pub use crate::fuzzy::Component;
use crate::fuzzy::{FuzzyError, Tfn};
use crate::milp::{LinearForm, LinearRow, MilpBackend, MilpError, Relation, Status};
use crate::reformulate::TriObjectiveMilp;

/// Slack on fixed lexicographic stages.
pub const LEX_DELTA: f64 = 1e-6;
/// Tolerance for duplicate and dominance tests on θ triples.
pub const THETA_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParetoError {
    #[error("weight #{index} is {value}; weights must be positive")]
    NonpositiveWeight { index: usize, value: f64 },
    #[error("objective order must be a permutation of lo, mid, hi")]
    InvalidOrder,
    #[error("grid resolution must be at least 1x1")]
    InvalidGrid,
    #[error("program is infeasible")]
    Infeasible,
    #[error("program is unbounded")]
    Unbounded,
    #[error(transparent)]
    Solver(#[from] MilpError),
}

/// Parses `"lo,mid,hi"`-style orders.
pub fn parse_order(text: &str) -> Result<[Component; 3], ParetoError> {
    let parts: Vec<Component> = text
        .split(',')
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|_| ParetoError::InvalidOrder)?;
    let order: [Component; 3] = parts.try_into().map_err(|_| ParetoError::InvalidOrder)?;
    check_order(order)?;
    Ok(order)
}

fn check_order(order: [Component; 3]) -> Result<(), ParetoError> {
    let mut seen = [false; 3];
    for c in order {
        if std::mem::replace(&mut seen[c.index()], true) {
            return Err(ParetoError::InvalidOrder);
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParetoPoint {
    pub theta: [f64; 3],
    /// Values of every crisp column of the program.
    pub decision: Vec<f64>,
    pub method: String,
}

impl ParetoPoint {
    pub fn theta_tfn(&self, tol: f64) -> Result<Tfn, FuzzyError> {
        let [lo, mid, hi] = self.theta;
        Tfn::from_components_tol(lo, mid, hi, tol)
    }
}

fn scaled(tol: f64, x: f64, y: f64) -> f64 {
    tol * x.abs().max(y.abs()).max(1.0)
}

/// `a` dominates `b`: no component worse and one better, where differences
/// up to `tol` (relative once values exceed 1) count as ties.
pub fn dominates(a: &[f64; 3], b: &[f64; 3], tol: f64) -> bool {
    let no_worse = a.iter().zip(b).all(|(x, y)| *x <= y + scaled(tol, *x, *y));
    let better = a.iter().zip(b).any(|(x, y)| *x < y - scaled(tol, *x, *y));
    no_worse && better
}

/// Equal triples under the same tolerance as [`dominates`].
pub fn same_triple(a: &[f64; 3], b: &[f64; 3], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= scaled(tol, *x, *y))
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ParetoSet {
    pub points: Vec<ParetoPoint>,
}

impl ParetoSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// CSV with columns `method, theta_lo, theta_mid, theta_hi` followed by
    /// one column per decision variable.
    pub fn to_csv(&self, var_names: &[String]) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["method".to_string(), "theta_lo".into(), "theta_mid".into(), "theta_hi".into()];
        header.extend(var_names.iter().cloned());
        w.write_record(&header)?;
        for p in &self.points {
            let mut record = vec![p.method.clone()];
            record.extend(p.theta.iter().map(|v| v.to_string()));
            record.extend(p.decision.iter().map(|v| v.to_string()));
            w.write_record(&record)?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Drops dominated points and repeated θ triples, keeping the earliest.
///
/// Points are archived one at a time, so the result is pairwise
/// nondominated and never empty for non-empty input, even where the
/// tolerance makes dominance intransitive.
pub fn filter_nondominated(points: Vec<ParetoPoint>, tol: f64) -> ParetoSet {
    let mut kept: Vec<ParetoPoint> = Vec::new();
    for p in points {
        if let Some(q) = kept.iter().find(|q| same_triple(&q.theta, &p.theta, tol)) {
            debug!("{} repeats the θ of {}; keeping the earlier point", p.method, q.method);
            continue;
        }
        if kept.iter().any(|q| dominates(&q.theta, &p.theta, tol)) {
            continue;
        }
        kept.retain(|q| !dominates(&p.theta, &q.theta, tol));
        kept.push(p);
    }
    ParetoSet { points: kept }
}

fn theta_row(milp: &TriObjectiveMilp, c: Component, bound: f64, name: String) -> LinearRow {
    LinearRow::new(name, vec![(milp.theta_columns()[c.index()], 1.0)], Relation::Le, bound)
}

/// Solves one scalarization and returns the point with θ tightened.
fn solve_scalar(
    milp: &TriObjectiveMilp,
    objective: LinearForm,
    extra_rows: &[LinearRow],
    backend: &dyn MilpBackend,
) -> Result<Option<Vec<f64>>, ParetoError> {
    let lp = milp.program(objective, extra_rows);
    let sol = backend.solve(&lp, &milp.binaries())?;
    match sol.status {
        Status::Optimal => {
            let mut point = sol.point;
            milp.tighten_theta(&mut point);
            Ok(Some(point))
        }
        Status::Infeasible => Ok(None),
        Status::Unbounded => Err(ParetoError::Unbounded),
    }
}

fn point(milp: &TriObjectiveMilp, decision: Vec<f64>, method: String) -> ParetoPoint {
    ParetoPoint {
        theta: milp.theta_of(&decision),
        decision,
        method,
    }
}

/// Minimizes `w·(θ⁻, θ̂, θ⁺)` for strictly positive weights.
pub fn weighted_sum(
    milp: &TriObjectiveMilp,
    weights: [f64; 3],
    backend: &dyn MilpBackend,
) -> Result<ParetoPoint, ParetoError> {
    for (index, &value) in weights.iter().enumerate() {
        if !(value > 0.0 && value.is_finite()) {
            return Err(ParetoError::NonpositiveWeight { index, value });
        }
    }
    let objective: LinearForm = milp.theta_columns().iter().zip(weights).map(|(&c, w)| (c, w)).collect();
    let decision = solve_scalar(milp, objective, &[], backend)?.ok_or(ParetoError::Infeasible)?;
    let [a, b, c] = weights;
    Ok(point(milp, decision, format!("weighted({a},{b},{c})")))
}

/// Minimizes the components one after another, holding each finished stage
/// within [`LEX_DELTA`] of its optimum.
pub fn lexicographic(
    milp: &TriObjectiveMilp,
    order: [Component; 3],
    backend: &dyn MilpBackend,
) -> Result<ParetoPoint, ParetoError> {
    lexicographic_with_rows(milp, order, &[], backend)?.ok_or(ParetoError::Infeasible)
}

fn lexicographic_with_rows(
    milp: &TriObjectiveMilp,
    order: [Component; 3],
    base_rows: &[LinearRow],
    backend: &dyn MilpBackend,
) -> Result<Option<ParetoPoint>, ParetoError> {
    check_order(order)?;
    let theta = milp.theta_columns();
    let mut rows = base_rows.to_vec();
    let mut last = None;
    for c in order {
        let Some(decision) = solve_scalar(milp, vec![(theta[c.index()], 1.0)], &rows, backend)? else {
            return Ok(None);
        };
        let best = decision[theta[c.index()]];
        rows.push(theta_row(milp, c, best + LEX_DELTA, format!("lex_{c}")));
        last = Some(decision);
    }
    let [a, b, c] = order;
    Ok(last.map(|d| point(milp, d, format!("lex({a},{b},{c})"))))
}

fn all_orders() -> [[Component; 3]; 6] {
    use Component::*;
    [
        [Lo, Mid, Hi],
        [Lo, Hi, Mid],
        [Mid, Lo, Hi],
        [Mid, Hi, Lo],
        [Hi, Lo, Mid],
        [Hi, Mid, Lo],
    ]
}

fn grid_values(ideal: f64, worst: f64, steps: usize) -> Vec<f64> {
    if steps == 1 {
        return vec![worst];
    }
    (0..steps)
        .map(|s| ideal + (worst - ideal) * s as f64 / (steps - 1) as f64)
        .collect()
}

/// Two-stage ε-constraint sweep over an `n₂ × n₃` grid of bounds on θ̂ and
/// θ⁺.
///
/// The grid spans from the ideal to the worst value seen over the six
/// lexicographic solutions. Each cell minimizes θ⁻ under `θ̂ <= ε₂`,
/// `θ⁺ <= ε₃`, then minimizes `θ̂ + θ⁺` with θ⁻ held at its optimum. Cells
/// run in parallel; the archive is merged in grid order, followed by the
/// lexicographic points.
pub fn epsilon_constraint_enumerate(
    milp: &TriObjectiveMilp,
    steps: (usize, usize),
    backend: &dyn MilpBackend,
) -> Result<ParetoSet, ParetoError> {
    let (n2, n3) = steps;
    if n2 == 0 || n3 == 0 {
        return Err(ParetoError::InvalidGrid);
    }
    let boundary = all_orders()
        .into_iter()
        .map(|order| lexicographic(milp, order, backend))
        .collect::<Result<Vec<_>, _>>()?;
    let mut ideal = [f64::INFINITY; 3];
    let mut worst = [f64::NEG_INFINITY; 3];
    for p in &boundary {
        for k in 0..3 {
            ideal[k] = ideal[k].min(p.theta[k]);
            worst[k] = worst[k].max(p.theta[k]);
        }
    }
    debug!("ideal {ideal:?}, worst {worst:?}");

    let cells: Vec<(usize, usize, f64, f64)> = grid_values(ideal[1], worst[1], n2)
        .into_iter()
        .enumerate()
        .flat_map(|(a, e2)| {
            grid_values(ideal[2], worst[2], n3)
                .into_iter()
                .enumerate()
                .map(move |(b, e3)| (a, b, e2, e3))
        })
        .collect();
    let theta = milp.theta_columns();
    let solved = cells
        .par_iter()
        .map(|&(a, b, e2, e3)| -> Result<Option<ParetoPoint>, ParetoError> {
            let slack = LEX_DELTA;
            let mut rows = vec![
                theta_row(milp, Component::Mid, e2 + slack, "eps_mid".into()),
                theta_row(milp, Component::Hi, e3 + slack, "eps_hi".into()),
            ];
            let Some(first) = solve_scalar(milp, vec![(theta[0], 1.0)], &rows, backend)? else {
                debug!("cell ({a},{b}) infeasible");
                return Ok(None);
            };
            rows.push(theta_row(milp, Component::Lo, first[theta[0]] + LEX_DELTA, "eps_lo".into()));
            let second = solve_scalar(milp, vec![(theta[1], 1.0), (theta[2], 1.0)], &rows, backend)?
                .unwrap_or(first);
            Ok(Some(point(milp, second, format!("eps({a},{b})"))))
        })
        .collect::<Vec<_>>();
    let mut candidates = Vec::new();
    for r in solved {
        candidates.extend(r?);
    }
    candidates.extend(boundary);
    Ok(filter_nondominated(candidates, THETA_TOL))
}

/// Result of checking whether a θ triple is attainable.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaAudit {
    /// Some feasible point has θ within `window` of the target.
    pub feasible: bool,
    /// Smallest `s` such that some feasible point has every minimax row
    /// component at most `target + s`. Negative values mean the target is
    /// strictly improvable in all three components.
    pub min_excess: f64,
    /// Point attaining `min_excess`.
    pub witness: Option<Vec<f64>>,
}

/// Fixes θ to `target ± window` and also computes the minimal uniform
/// excess over `target` across the feasible set.
pub fn audit_theta(
    milp: &TriObjectiveMilp,
    target: [f64; 3],
    window: f64,
    backend: &dyn MilpBackend,
) -> Result<ThetaAudit, ParetoError> {
    let theta = milp.theta_columns();
    let mut fixed = Vec::new();
    for (k, c) in Component::ALL.into_iter().enumerate() {
        fixed.push(theta_row(milp, c, target[k] + window, format!("fix_{c}_upper")));
        fixed.push(LinearRow::new(
            format!("fix_{c}_lower"),
            vec![(theta[k], 1.0)],
            Relation::Ge,
            target[k] - window,
        ));
    }
    let feasible = backend.solve(&milp.program(Vec::new(), &fixed), &milp.binaries())?.is_optimal();

    let mut lp = milp.program(Vec::new(), &[]);
    let s = lp.add_var("excess", f64::NEG_INFINITY, f64::INFINITY);
    for (k, c) in Component::ALL.into_iter().enumerate() {
        lp.add_row(format!("excess_{c}"), vec![(theta[k], 1.0), (s, -1.0)], Relation::Le, target[k]);
    }
    lp.set_objective(vec![(s, 1.0)]);
    let sol = backend.solve(&lp, &milp.binaries())?;
    let (min_excess, witness) = match sol.status {
        Status::Optimal => {
            let mut point = sol.point;
            point.truncate(milp.num_vars());
            milp.tighten_theta(&mut point);
            (sol.objective, Some(point))
        }
        Status::Infeasible => (f64::INFINITY, None),
        Status::Unbounded => (f64::NEG_INFINITY, None),
    };
    Ok(ThetaAudit {
        feasible,
        min_excess,
        witness,
    })
}

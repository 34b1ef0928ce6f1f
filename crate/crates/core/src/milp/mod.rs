//! Crisp linear and mixed 0-1 programming.
//!
//! [`solve_lp`] is a dense two-phase primal simplex; [`BranchAndBound`]
//! runs best-first branch-and-bound over binary variables on top of it.
//! Both are tuned for correctness on desk-scale programs, not speed: there
//! is no presolve, no cutting planes and no warm starting.

mod branch;
pub mod lp_format;
mod simplex;

use thiserror::Error;

pub use branch::{BranchAndBound, MilpBackend};
pub use simplex::{solve_lp, solve_lp_with_bounds};

/// Row feasibility tolerance used when certifying solutions.
pub const FEAS_TOL: f64 = 1e-6;
/// Integrality tolerance for binary variables.
pub const INT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MilpError {
    #[error("malformed program: {0}")]
    MalformedProgram(String),
    #[error("simplex iteration limit ({0}) reached")]
    IterationLimit(usize),
    #[error("branch-and-bound node limit ({0}) reached")]
    NodeLimit(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        }
    }
}

/// Sparse linear form `Σ coef·x[var]`.
pub type LinearForm = Vec<(usize, f64)>;

/// Adds `scale · other` into `form`, merging repeated variables.
pub fn axpy_form(form: &mut LinearForm, scale: f64, other: &[(usize, f64)]) {
    for &(v, c) in other {
        match form.iter_mut().find(|(w, _)| *w == v) {
            Some((_, acc)) => *acc += scale * c,
            None => form.push((v, scale * c)),
        }
    }
}

pub fn eval_form(form: &[(usize, f64)], point: &[f64]) -> f64 {
    form.iter().map(|&(v, c)| c * point[v]).sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearRow {
    pub name: String,
    pub coeffs: LinearForm,
    pub relation: Relation,
    pub rhs: f64,
}

impl LinearRow {
    pub fn new(name: impl Into<String>, coeffs: LinearForm, relation: Relation, rhs: f64) -> Self {
        LinearRow {
            name: name.into(),
            coeffs,
            relation,
            rhs,
        }
    }

    /// Amount by which `point` violates the row (0 when satisfied).
    pub fn violation(&self, point: &[f64]) -> f64 {
        let lhs = eval_form(&self.coeffs, point);
        match self.relation {
            Relation::Le => (lhs - self.rhs).max(0.0),
            Relation::Ge => (self.rhs - lhs).max(0.0),
            Relation::Eq => (lhs - self.rhs).abs(),
        }
    }
}

/// `min c·x` subject to sparse rows and variable bounds.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LinearProgram {
    pub var_names: Vec<String>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub rows: Vec<LinearRow>,
    pub objective: LinearForm,
}

impl LinearProgram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn num_vars(&self) -> usize {
        self.var_names.len()
    }

    pub fn add_var(&mut self, name: impl Into<String>, lower: f64, upper: f64) -> usize {
        self.var_names.push(name.into());
        self.lower.push(lower);
        self.upper.push(upper);
        self.var_names.len() - 1
    }

    pub fn add_row(&mut self, name: impl Into<String>, coeffs: LinearForm, relation: Relation, rhs: f64) -> usize {
        self.rows.push(LinearRow::new(name, coeffs, relation, rhs));
        self.rows.len() - 1
    }

    pub fn set_objective(&mut self, objective: LinearForm) {
        self.objective = objective;
    }

    pub fn objective_value(&self, point: &[f64]) -> f64 {
        eval_form(&self.objective, point)
    }

    /// Largest row or bound violation of `point`.
    pub fn max_violation(&self, point: &[f64]) -> f64 {
        let rows = self.rows.iter().map(|r| r.violation(point));
        let bounds = (0..self.num_vars())
            .map(|j| (self.lower[j] - point[j]).max(point[j] - self.upper[j]).max(0.0));
        rows.chain(bounds).fold(0.0, f64::max)
    }

    pub fn validate(&self) -> Result<(), MilpError> {
        let n = self.num_vars();
        if self.lower.len() != n || self.upper.len() != n {
            return Err(MilpError::MalformedProgram(format!(
                "{} names but {} lower and {} upper bounds",
                n,
                self.lower.len(),
                self.upper.len()
            )));
        }
        for j in 0..n {
            if self.lower[j].is_nan() || self.upper[j].is_nan() || self.lower[j] == f64::INFINITY
                || self.upper[j] == f64::NEG_INFINITY
            {
                return Err(MilpError::MalformedProgram(format!(
                    "variable `{}` has bounds [{}, {}]",
                    self.var_names[j], self.lower[j], self.upper[j]
                )));
            }
        }
        let check_form = |what: &str, form: &[(usize, f64)]| -> Result<(), MilpError> {
            for &(v, c) in form {
                if v >= n {
                    return Err(MilpError::MalformedProgram(format!("{what} references variable #{v}")));
                }
                if !c.is_finite() {
                    return Err(MilpError::MalformedProgram(format!("{what} has coefficient {c}")));
                }
            }
            Ok(())
        };
        check_form("objective", &self.objective)?;
        for row in &self.rows {
            check_form(&format!("row `{}`", row.name), &row.coeffs)?;
            if !row.rhs.is_finite() {
                return Err(MilpError::MalformedProgram(format!(
                    "row `{}` has right-hand side {}",
                    row.name, row.rhs
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MilpSolution {
    pub status: Status,
    /// Values of the program's variables; empty unless `Optimal`.
    pub point: Vec<f64>,
    pub objective: f64,
    /// LP relaxations solved (1 for a plain LP).
    pub node_count: usize,
    /// Row multipliers of the final basis (plain LPs only; empty otherwise).
    /// For `min c·x` they satisfy `y ≤ 0` on `<=` rows and `y ≥ 0` on `>=` rows.
    pub duals: Vec<f64>,
}

impl MilpSolution {
    pub(crate) fn without_point(status: Status, node_count: usize) -> Self {
        MilpSolution {
            status,
            point: Vec::new(),
            objective: match status {
                Status::Unbounded => f64::NEG_INFINITY,
                _ => f64::INFINITY,
            },
            node_count,
            duals: Vec::new(),
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == Status::Optimal
    }
}

/// Solves `lp` with the default branch-and-bound engine.
pub fn solve_milp(lp: &LinearProgram, binaries: &[usize]) -> Result<MilpSolution, MilpError> {
    BranchAndBound::default().solve(lp, binaries)
}

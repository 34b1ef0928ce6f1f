//! Fully fuzzy minimax mixed 0-1 programs.
//!
//! A [`FuzzyMinimaxModel`] minimizes the minimal upper bound of a list of
//! fuzzy linear rows over fuzzy nonnegative and crisp binary variables,
//! subject to fuzzy linear constraints with relation `≲` or `=`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fuzzy::{theta_mub, FuzzyError, Tfn};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("variable name `{0}` is already in use")]
    DuplicateName(String),
    #[error("expression references unknown variable #{0}")]
    UnknownVariable(usize),
    #[error("unknown variable name `{0}`")]
    UnknownVariableName(String),
    #[error("the minimax objective needs at least one row")]
    EmptyObjective,
    #[error("assignment has {got} values for {expected} variables")]
    IncompleteAssignment { expected: usize, got: usize },
    #[error("variable `{name}` got {value}, which does not match its kind {kind:?}")]
    KindMismatch {
        name: String,
        kind: VariableKind,
        value: Tfn,
    },
    #[error(transparent)]
    Fuzzy(#[from] FuzzyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VariableKind {
    /// `x̃ ∈ T≥0`: a triangular fuzzy number with nonnegative lower endpoint.
    FuzzyNonnegative,
    /// `x ∈ {0, 1}`, embedded as the degenerate number `(x, x, x)`.
    CrispBinary,
}

/// Dense index of a model variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(pub usize);

#[derive(Debug, Clone, PartialEq)]
pub struct Variable {
    pub id: VarId,
    pub name: String,
    pub kind: VariableKind,
}

/// `Σ c̃ᵢ x̃ᵢ + k̃` with at most one term per variable.
///
/// Adding a term for a variable that already has one adds the coefficients.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FuzzyLinearExpression {
    terms: Vec<(Tfn, VarId)>,
    constant: Tfn,
}

impl FuzzyLinearExpression {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn constant(value: Tfn) -> Self {
        FuzzyLinearExpression {
            terms: Vec::new(),
            constant: value,
        }
    }

    pub fn term(mut self, coefficient: Tfn, var: VarId) -> Self {
        self.add_term(coefficient, var);
        self
    }

    pub fn with_constant(mut self, value: Tfn) -> Self {
        self.constant = self.constant.add(&value);
        self
    }

    pub fn add_term(&mut self, coefficient: Tfn, var: VarId) {
        match self.terms.iter_mut().find(|(_, v)| *v == var) {
            Some((c, _)) => *c = c.add(&coefficient),
            None => self.terms.push((coefficient, var)),
        }
    }

    /// Sum of two expressions, merging shared variables.
    pub fn plus(&self, other: &FuzzyLinearExpression) -> FuzzyLinearExpression {
        let mut out = self.clone();
        for &(c, v) in &other.terms {
            out.add_term(c, v);
        }
        out.constant = out.constant.add(&other.constant);
        out
    }

    pub fn terms(&self) -> &[(Tfn, VarId)] {
        &self.terms
    }

    pub fn constant_term(&self) -> Tfn {
        self.constant
    }

    fn check_vars(&self, n: usize) -> Result<(), ModelError> {
        match self.terms.iter().find(|(_, v)| v.0 >= n) {
            Some((_, v)) => Err(ModelError::UnknownVariable(v.0)),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FuzzyRelation {
    /// `≲`: componentwise `<=`.
    LessOrApprox,
    /// `=`: componentwise equality.
    Equal,
}

/// `lhs (≲ | =) rhs`. The right side is usually a constant, but may carry
/// variable terms (as in `Σ x̃ ≲ ũ·y`); each side is evaluated separately
/// before the components are compared.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyConstraint {
    pub lhs: FuzzyLinearExpression,
    pub relation: FuzzyRelation,
    pub rhs: FuzzyLinearExpression,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub constraint: usize,
    pub lhs: Tfn,
    pub rhs: Tfn,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    /// Minimal upper bound of the evaluated rows.
    pub objective: Tfn,
    pub row_values: Vec<Tfn>,
    pub feasible: bool,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct FuzzyMinimaxModel {
    variables: Vec<Variable>,
    constraints: Vec<FuzzyConstraint>,
    minimax_rows: Vec<FuzzyLinearExpression>,
}

impl FuzzyMinimaxModel {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_variable(&mut self, name: impl Into<String>, kind: VariableKind) -> Result<VarId, ModelError> {
        let name = name.into();
        if self.variables.iter().any(|v| v.name == name) {
            return Err(ModelError::DuplicateName(name));
        }
        let id = VarId(self.variables.len());
        self.variables.push(Variable { id, name, kind });
        Ok(id)
    }

    /// Adds `expr (≲ | =) rhs` and returns the constraint index.
    pub fn add_constraint(
        &mut self,
        expr: FuzzyLinearExpression,
        relation: FuzzyRelation,
        rhs: Tfn,
    ) -> Result<usize, ModelError> {
        self.add_constraint_expr(expr, relation, FuzzyLinearExpression::constant(rhs))
    }

    pub fn add_constraint_expr(
        &mut self,
        lhs: FuzzyLinearExpression,
        relation: FuzzyRelation,
        rhs: FuzzyLinearExpression,
    ) -> Result<usize, ModelError> {
        lhs.check_vars(self.variables.len())?;
        rhs.check_vars(self.variables.len())?;
        self.constraints.push(FuzzyConstraint { lhs, relation, rhs });
        Ok(self.constraints.len() - 1)
    }

    /// Stores the rows inside the minimal-upper-bound objective, folding an
    /// optional shared additive term into every row
    /// (`Θ(r₁, …, rₖ) + s = Θ(r₁ + s, …, rₖ + s)`).
    pub fn set_minimax_rows(
        &mut self,
        rows: Vec<FuzzyLinearExpression>,
        shared: Option<FuzzyLinearExpression>,
    ) -> Result<(), ModelError> {
        if rows.is_empty() {
            return Err(ModelError::EmptyObjective);
        }
        for row in rows.iter().chain(shared.iter()) {
            row.check_vars(self.variables.len())?;
        }
        self.minimax_rows = match shared {
            Some(s) => rows.iter().map(|r| r.plus(&s)).collect(),
            None => rows,
        };
        Ok(())
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn variable(&self, id: VarId) -> &Variable {
        &self.variables[id.0]
    }

    pub fn variable_by_name(&self, name: &str) -> Option<&Variable> {
        self.variables.iter().find(|v| v.name == name)
    }

    pub fn constraints(&self) -> &[FuzzyConstraint] {
        &self.constraints
    }

    pub fn minimax_rows(&self) -> &[FuzzyLinearExpression] {
        &self.minimax_rows
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if self.minimax_rows.is_empty() {
            return Err(ModelError::EmptyObjective);
        }
        Ok(())
    }

    /// Value of `expr` under `assignment` using triangular arithmetic.
    pub fn eval_expression(
        &self,
        expr: &FuzzyLinearExpression,
        assignment: &[Tfn],
    ) -> Result<Tfn, ModelError> {
        let mut acc = expr.constant;
        for &(coef, var) in &expr.terms {
            let value = assignment[var.0];
            let product = match self.variables[var.0].kind {
                VariableKind::FuzzyNonnegative => coef.mul(&value)?,
                VariableKind::CrispBinary => coef.scale(value.mid()),
            };
            acc = acc.add(&product);
        }
        Ok(acc)
    }

    pub fn evaluate(&self, assignment: &[Tfn]) -> Result<Evaluation, ModelError> {
        self.evaluate_tol(assignment, 0.0)
    }

    /// Evaluates the objective and checks every constraint, counting
    /// component differences up to `tol` as equal.
    pub fn evaluate_tol(&self, assignment: &[Tfn], tol: f64) -> Result<Evaluation, ModelError> {
        self.validate()?;
        if assignment.len() != self.variables.len() {
            return Err(ModelError::IncompleteAssignment {
                expected: self.variables.len(),
                got: assignment.len(),
            });
        }
        for (var, value) in self.variables.iter().zip(assignment) {
            let ok = match var.kind {
                VariableKind::FuzzyNonnegative => value.is_nonnegative(),
                VariableKind::CrispBinary => {
                    value.is_degenerate() && (value.mid() == 0.0 || value.mid() == 1.0)
                }
            };
            if !ok {
                return Err(ModelError::KindMismatch {
                    name: var.name.clone(),
                    kind: var.kind,
                    value: *value,
                });
            }
        }
        let row_values = self
            .minimax_rows
            .iter()
            .map(|r| self.eval_expression(r, assignment))
            .collect::<Result<Vec<_>, _>>()?;
        let objective = theta_mub(&row_values)?;
        let mut violations = Vec::new();
        for (k, c) in self.constraints.iter().enumerate() {
            let lhs = self.eval_expression(&c.lhs, assignment)?;
            let rhs = self.eval_expression(&c.rhs, assignment)?;
            let ok = match c.relation {
                FuzzyRelation::LessOrApprox => lhs.compare_tol(&rhs, tol).is_less_or_approx(),
                FuzzyRelation::Equal => lhs.approx_eq(&rhs, tol),
            };
            if !ok {
                violations.push(Violation { constraint: k, lhs, rhs });
            }
        }
        Ok(Evaluation {
            objective,
            row_values,
            feasible: violations.is_empty(),
            violations,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ModelDocument::from(self)).expect("model serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, ModelJsonError> {
        let doc: ModelDocument = serde_json::from_str(text)?;
        Ok(doc.into_model()?)
    }
}

#[derive(Debug, Error)]
pub enum ModelJsonError {
    #[error("malformed model document: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Model(#[from] ModelError),
}

// Name-based document form of a model.

#[derive(Serialize, Deserialize)]
struct ModelDocument {
    variables: Vec<VariableDoc>,
    constraints: Vec<ConstraintDoc>,
    minimax_rows: Vec<ExprDoc>,
}

#[derive(Serialize, Deserialize)]
struct VariableDoc {
    name: String,
    kind: VariableKind,
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    var: String,
    coef: Tfn,
}

#[derive(Serialize, Deserialize)]
struct ExprDoc {
    terms: Vec<TermDoc>,
    #[serde(default)]
    constant: Tfn,
}

#[derive(Serialize, Deserialize)]
struct ConstraintDoc {
    lhs: ExprDoc,
    relation: FuzzyRelation,
    rhs: ExprDoc,
}

impl ExprDoc {
    fn from_expr(model: &FuzzyMinimaxModel, e: &FuzzyLinearExpression) -> Self {
        ExprDoc {
            terms: e
                .terms
                .iter()
                .map(|&(coef, v)| TermDoc {
                    var: model.variables[v.0].name.clone(),
                    coef,
                })
                .collect(),
            constant: e.constant,
        }
    }

    fn to_expr(&self, ids: &HashMap<&str, VarId>) -> Result<FuzzyLinearExpression, ModelError> {
        let mut e = FuzzyLinearExpression::constant(self.constant);
        for t in &self.terms {
            let id = ids
                .get(t.var.as_str())
                .ok_or_else(|| ModelError::UnknownVariableName(t.var.clone()))?;
            e.add_term(t.coef, *id);
        }
        Ok(e)
    }
}

impl From<&FuzzyMinimaxModel> for ModelDocument {
    fn from(m: &FuzzyMinimaxModel) -> Self {
        ModelDocument {
            variables: m
                .variables
                .iter()
                .map(|v| VariableDoc {
                    name: v.name.clone(),
                    kind: v.kind,
                })
                .collect(),
            constraints: m
                .constraints
                .iter()
                .map(|c| ConstraintDoc {
                    lhs: ExprDoc::from_expr(m, &c.lhs),
                    relation: c.relation,
                    rhs: ExprDoc::from_expr(m, &c.rhs),
                })
                .collect(),
            minimax_rows: m.minimax_rows.iter().map(|r| ExprDoc::from_expr(m, r)).collect(),
        }
    }
}

impl ModelDocument {
    fn into_model(self) -> Result<FuzzyMinimaxModel, ModelError> {
        let mut model = FuzzyMinimaxModel::new();
        for v in &self.variables {
            model.add_variable(v.name.clone(), v.kind)?;
        }
        let ids: HashMap<&str, VarId> = self
            .variables
            .iter()
            .enumerate()
            .map(|(i, v)| (v.name.as_str(), VarId(i)))
            .collect();
        for c in &self.constraints {
            model.add_constraint_expr(c.lhs.to_expr(&ids)?, c.relation, c.rhs.to_expr(&ids)?)?;
        }
        let rows = self
            .minimax_rows
            .iter()
            .map(|r| r.to_expr(&ids))
            .collect::<Result<Vec<_>, _>>()?;
        model.set_minimax_rows(rows, None)?;
        Ok(model)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(lo: f64, mid: f64, hi: f64) -> Tfn {
        Tfn::new(lo, mid, hi).unwrap()
    }

    #[test]
    fn variables_get_dense_ids() {
        let mut m = FuzzyMinimaxModel::new();
        assert_eq!(m.add_variable("x_11", VariableKind::FuzzyNonnegative), Ok(VarId(0)));
        assert_eq!(m.add_variable("y_1", VariableKind::CrispBinary), Ok(VarId(1)));
        assert_eq!(m.variable(VarId(1)).kind, VariableKind::CrispBinary);
        assert_eq!(
            m.add_variable("x_11", VariableKind::CrispBinary),
            Err(ModelError::DuplicateName("x_11".into()))
        );
    }

    #[test]
    fn constraints_are_indexed() {
        let mut m = FuzzyMinimaxModel::new();
        let x0 = m.add_variable("x0", VariableKind::FuzzyNonnegative).unwrap();
        let x1 = m.add_variable("x1", VariableKind::FuzzyNonnegative).unwrap();
        let row = FuzzyLinearExpression::new().term(t(1.0, 2.0, 3.0), x0);
        assert_eq!(m.add_constraint(row, FuzzyRelation::LessOrApprox, t(10.0, 12.0, 14.0)), Ok(0));
        let sum = FuzzyLinearExpression::new()
            .term(Tfn::crisp(1.0), x0)
            .term(Tfn::crisp(1.0), x1);
        assert_eq!(m.add_constraint(sum, FuzzyRelation::Equal, Tfn::crisp(5.0)), Ok(1));
        let foreign = FuzzyLinearExpression::new().term(Tfn::crisp(1.0), VarId(7));
        assert_eq!(
            m.add_constraint(foreign, FuzzyRelation::Equal, Tfn::ZERO),
            Err(ModelError::UnknownVariable(7))
        );
    }

    #[test]
    fn terms_merge() {
        let e = FuzzyLinearExpression::new()
            .term(t(1.0, 2.0, 3.0), VarId(0))
            .term(t(1.0, 1.0, 1.0), VarId(0));
        assert_eq!(e.terms(), &[(t(2.0, 3.0, 4.0), VarId(0))]);
    }

    #[test]
    fn shared_term_is_folded() {
        let mut m = FuzzyMinimaxModel::new();
        let x = m.add_variable("x", VariableKind::FuzzyNonnegative).unwrap();
        let y = m.add_variable("y", VariableKind::CrispBinary).unwrap();
        let r1 = FuzzyLinearExpression::new().term(t(1.0, 1.0, 1.0), x);
        let r2 = FuzzyLinearExpression::new().term(t(2.0, 2.0, 2.0), x);
        let shared = FuzzyLinearExpression::new().term(t(3.0, 4.0, 5.0), y);
        m.set_minimax_rows(vec![r1.clone()], None).unwrap();
        assert_eq!(m.minimax_rows().len(), 1);
        m.set_minimax_rows(vec![r1.clone(), r2.clone()], Some(shared.clone())).unwrap();
        assert_eq!(m.minimax_rows(), &[r1.plus(&shared), r2.plus(&shared)]);
        assert_eq!(m.set_minimax_rows(vec![], None), Err(ModelError::EmptyObjective));
    }

    #[test]
    fn evaluate_single_row() {
        let mut m = FuzzyMinimaxModel::new();
        let x = m.add_variable("x", VariableKind::FuzzyNonnegative).unwrap();
        m.set_minimax_rows(vec![FuzzyLinearExpression::new().term(Tfn::crisp(1.0), x)], None)
            .unwrap();
        let ev = m.evaluate(&[t(1.0, 2.0, 3.0)]).unwrap();
        assert_eq!(ev.objective, t(1.0, 2.0, 3.0));
        assert!(ev.feasible);

        m.set_minimax_rows(vec![FuzzyLinearExpression::new().term(t(-1.0, 1.0, 2.0), x)], None)
            .unwrap();
        let ev = m.evaluate(&[t(2.0, 3.0, 4.0)]).unwrap();
        assert_eq!(ev.objective, t(-4.0, 3.0, 8.0));
    }

    #[test]
    fn evaluate_crisp_matches_max() {
        let mut m = FuzzyMinimaxModel::new();
        let x = m.add_variable("x", VariableKind::FuzzyNonnegative).unwrap();
        let y = m.add_variable("y", VariableKind::CrispBinary).unwrap();
        let rows = vec![
            FuzzyLinearExpression::new().term(Tfn::crisp(2.0), x).term(Tfn::crisp(1.0), y),
            FuzzyLinearExpression::new().term(Tfn::crisp(-1.0), x).with_constant(Tfn::crisp(6.0)),
        ];
        m.set_minimax_rows(rows, None).unwrap();
        m.add_constraint(
            FuzzyLinearExpression::new().term(Tfn::crisp(1.0), x),
            FuzzyRelation::LessOrApprox,
            Tfn::crisp(3.0),
        )
        .unwrap();
        let ev = m.evaluate(&[Tfn::crisp(1.5), Tfn::crisp(1.0)]).unwrap();
        assert_eq!(ev.objective, Tfn::crisp(f64::max(2.0 * 1.5 + 1.0, 6.0 - 1.5)));
        assert!(ev.feasible);
        let ev = m.evaluate(&[Tfn::crisp(4.0), Tfn::crisp(0.0)]).unwrap();
        assert!(!ev.feasible);
        assert_eq!(ev.violations[0].constraint, 0);
    }

    #[test]
    fn evaluate_rejects_bad_assignments() {
        let mut m = FuzzyMinimaxModel::new();
        let x = m.add_variable("x", VariableKind::FuzzyNonnegative).unwrap();
        let y = m.add_variable("y", VariableKind::CrispBinary).unwrap();
        m.set_minimax_rows(
            vec![FuzzyLinearExpression::new().term(Tfn::crisp(1.0), x).term(Tfn::crisp(1.0), y)],
            None,
        )
        .unwrap();
        assert!(matches!(
            m.evaluate(&[Tfn::ZERO]),
            Err(ModelError::IncompleteAssignment { expected: 2, got: 1 })
        ));
        assert!(matches!(
            m.evaluate(&[Tfn::ZERO, t(0.0, 0.5, 1.0)]),
            Err(ModelError::KindMismatch { .. })
        ));
        assert!(matches!(
            m.evaluate(&[t(-1.0, 0.0, 1.0), Tfn::ZERO]),
            Err(ModelError::KindMismatch { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let mut m = FuzzyMinimaxModel::new();
        let x = m.add_variable("x", VariableKind::FuzzyNonnegative).unwrap();
        let y = m.add_variable("y", VariableKind::CrispBinary).unwrap();
        m.add_constraint_expr(
            FuzzyLinearExpression::new().term(Tfn::crisp(1.0), x),
            FuzzyRelation::LessOrApprox,
            FuzzyLinearExpression::new().term(t(1.0, 2.5, 3.0), y),
        )
        .unwrap();
        m.set_minimax_rows(
            vec![FuzzyLinearExpression::new().term(t(0.1, 0.2, 0.3), x).with_constant(t(1.0, 1.0, 2.0))],
            None,
        )
        .unwrap();
        let text = m.to_json();
        let back = FuzzyMinimaxModel::from_json(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.to_json(), text);
    }
}

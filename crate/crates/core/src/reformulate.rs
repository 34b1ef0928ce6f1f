//! Crisp three-objective reformulation of a fuzzy minimax model.
//!
//! Every fuzzy nonnegative variable `x̃ᵢ` becomes three continuous columns
//! `(x⁻ᵢ, x̂ᵢ, x⁺ᵢ)`, every binary stays a single binary column shared by all
//! three components, and one free triple `(θ⁻, θ̂, θ⁺)` bounds the minimax
//! rows. Products `c̃·x̃` with constant coefficients lower to linear forms
//! through the sign cases of triangular multiplication, so no auxiliary
//! product variables are needed.
//!
//! Row families (1-based `j` over minimax rows, `k` over constraints, `i`
//! over model variables):
//!
//! | name          | row                                                  |
//! |---------------|------------------------------------------------------|
//! | `mo1_j`..`mo3_j` | component `lo`/`mid`/`hi` of row `j` `<= θ` component |
//! | `mo4_k`..`mo6_k` | component `lo`/`mid`/`hi` of constraint `k`          |
//! | `mo7`, `mo8`  | `θ⁻ <= θ̂`, `θ̂ <= θ⁺`                                  |
//! | `mo9_j_i`, `mo10_j_i` | shape of the lowered product `c̃ⱼᵢ·x̃ᵢ`           |
//! | `mo11_i`, `mo12_i` | `x⁻ᵢ <= x̂ᵢ`, `x̂ᵢ <= x⁺ᵢ`                         |
//!
//! `x⁻ᵢ >= 0` and the binary ties are variable bounds and kinds rather than
//! rows. The three objectives are `THETA_LO`, `THETA_MID` and `THETA_HI`.

use thiserror::Error;

use crate::fuzzy::{FuzzyError, Tfn};
use crate::milp::lp_format::LpFile;
use crate::milp::{axpy_form, eval_form, LinearForm, LinearProgram, LinearRow, Relation};
use crate::model::{FuzzyLinearExpression, FuzzyMinimaxModel, FuzzyRelation, ModelError, VarId, VariableKind};

pub const OBJECTIVE_NAMES: [&str; 3] = ["THETA_LO", "THETA_MID", "THETA_HI"];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReformulateError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("point is infeasible: {detail}")]
    InfeasiblePoint { detail: String },
}

impl From<FuzzyError> for ReformulateError {
    fn from(e: FuzzyError) -> Self {
        ReformulateError::InfeasiblePoint { detail: e.to_string() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CrispKind {
    Continuous,
    Binary,
}

/// Which fuzzy quantity a crisp column represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Origin {
    XLower(VarId),
    XMid(VarId),
    XUpper(VarId),
    BinaryY(VarId),
    ThetaLower,
    ThetaMid,
    ThetaUpper,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrispVariable {
    pub id: usize,
    pub name: String,
    pub kind: CrispKind,
    pub lower: f64,
    pub upper: f64,
    pub origin: Origin,
}

/// Crisp columns standing for one model variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceColumns {
    Fuzzy([usize; 3]),
    Binary(usize),
}

impl SourceColumns {
    /// Column holding component `k` (0 = lo, 1 = mid, 2 = hi).
    pub fn component(&self, k: usize) -> usize {
        match *self {
            SourceColumns::Fuzzy(cols) => cols[k],
            SourceColumns::Binary(col) => col,
        }
    }
}

/// A fuzzy solution recovered from a crisp point.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedSolution {
    pub assignment: Vec<Tfn>,
    pub theta: Tfn,
}

/// Linear forms for `(c̃·x̃)⁻`, `(c̃·x̃)^`, `(c̃·x̃)⁺` over the columns
/// `[x⁻, x̂, x⁺]` of a fuzzy nonnegative variable.
pub fn lower_product_components(c: Tfn, cols: [usize; 3]) -> [LinearForm; 3] {
    let [lo, mid, hi] = cols;
    let (lo_col, hi_col) = if c.lo() >= 0.0 {
        (lo, hi)
    } else if c.hi() >= 0.0 {
        (hi, hi)
    } else {
        (hi, lo)
    };
    [vec![(lo_col, c.lo())], vec![(mid, c.mid())], vec![(hi_col, c.hi())]]
}

/// Crisp vector program `v-min (θ⁻, θ̂, θ⁺)` equivalent to a fuzzy model.
#[derive(Debug, Clone, PartialEq)]
pub struct TriObjectiveMilp {
    variables: Vec<CrispVariable>,
    rows: Vec<LinearRow>,
    objectives: [LinearForm; 3],
    theta: [usize; 3],
    sources: Vec<SourceColumns>,
    /// Per minimax row: lowered form and constant of each component.
    minimax_forms: Vec<[(LinearForm, f64); 3]>,
}

fn lower_expression(sources: &[SourceColumns], expr: &FuzzyLinearExpression) -> [(LinearForm, f64); 3] {
    let k = expr.constant_term();
    let mut out: [(LinearForm, f64); 3] = [(Vec::new(), k.lo()), (Vec::new(), k.mid()), (Vec::new(), k.hi())];
    for &(coef, var) in expr.terms() {
        let forms = match sources[var.0] {
            SourceColumns::Fuzzy(cols) => lower_product_components(coef, cols),
            SourceColumns::Binary(col) => [vec![(col, coef.lo())], vec![(col, coef.mid())], vec![(col, coef.hi())]],
        };
        for (slot, form) in out.iter_mut().zip(forms) {
            axpy_form(&mut slot.0, 1.0, &form);
        }
    }
    out
}

pub fn reformulate(model: &FuzzyMinimaxModel) -> Result<TriObjectiveMilp, ReformulateError> {
    model.validate()?;
    let mut variables: Vec<CrispVariable> = Vec::new();
    let mut push = |name: String, kind: CrispKind, lower: f64, upper: f64, origin: Origin| {
        let id = variables.len();
        variables.push(CrispVariable {
            id,
            name,
            kind,
            lower,
            upper,
            origin,
        });
        id
    };
    let mut sources = Vec::with_capacity(model.variables().len());
    for v in model.variables() {
        let src = match v.kind {
            VariableKind::FuzzyNonnegative => {
                // Only x⁻ >= 0 is stated; x̂, x⁺ >= 0 follow from the shape rows.
                let lo = push(format!("{}_lo", v.name), CrispKind::Continuous, 0.0, f64::INFINITY, Origin::XLower(v.id));
                let mid = push(format!("{}_mid", v.name), CrispKind::Continuous, 0.0, f64::INFINITY, Origin::XMid(v.id));
                let hi = push(format!("{}_hi", v.name), CrispKind::Continuous, 0.0, f64::INFINITY, Origin::XUpper(v.id));
                SourceColumns::Fuzzy([lo, mid, hi])
            }
            VariableKind::CrispBinary => {
                SourceColumns::Binary(push(v.name.clone(), CrispKind::Binary, 0.0, 1.0, Origin::BinaryY(v.id)))
            }
        };
        sources.push(src);
    }
    let free = f64::NEG_INFINITY..f64::INFINITY;
    let theta = [
        push("theta_lo".into(), CrispKind::Continuous, free.start, free.end, Origin::ThetaLower),
        push("theta_mid".into(), CrispKind::Continuous, free.start, free.end, Origin::ThetaMid),
        push("theta_hi".into(), CrispKind::Continuous, free.start, free.end, Origin::ThetaUpper),
    ];

    let mut rows = Vec::new();
    let minimax_forms: Vec<_> = model.minimax_rows().iter().map(|r| lower_expression(&sources, r)).collect();

    // mo1-mo3
    for k in 0..3 {
        for (j, comps) in minimax_forms.iter().enumerate() {
            let (form, constant) = &comps[k];
            let mut coeffs = form.clone();
            axpy_form(&mut coeffs, -1.0, &[(theta[k], 1.0)]);
            coeffs.retain(|&(_, c)| c != 0.0);
            rows.push(LinearRow::new(format!("mo{}_{}", k + 1, j + 1), coeffs, Relation::Le, 0.0 - constant));
        }
    }

    // mo4-mo6
    let lowered: Vec<_> = model
        .constraints()
        .iter()
        .map(|c| (lower_expression(&sources, &c.lhs), lower_expression(&sources, &c.rhs), c.relation))
        .collect();
    for k in 0..3 {
        for (idx, (lhs, rhs, relation)) in lowered.iter().enumerate() {
            let mut coeffs = lhs[k].0.clone();
            axpy_form(&mut coeffs, -1.0, &rhs[k].0);
            coeffs.retain(|&(_, c)| c != 0.0);
            let relation = match relation {
                FuzzyRelation::LessOrApprox => Relation::Le,
                FuzzyRelation::Equal => Relation::Eq,
            };
            rows.push(LinearRow::new(format!("mo{}_{}", k + 4, idx + 1), coeffs, relation, rhs[k].1 - lhs[k].1));
        }
    }

    // mo7-mo8
    rows.push(LinearRow::new("mo7", vec![(theta[0], 1.0), (theta[1], -1.0)], Relation::Le, 0.0));
    rows.push(LinearRow::new("mo8", vec![(theta[1], 1.0), (theta[2], -1.0)], Relation::Le, 0.0));

    // mo9-mo10, fuzzy terms only: on binaries they reduce to (c⁻ - ĉ)·y <= 0,
    // which always holds.
    let mut shape_rows = Vec::new();
    for (j, row) in model.minimax_rows().iter().enumerate() {
        for &(coef, var) in row.terms() {
            let SourceColumns::Fuzzy(cols) = sources[var.0] else {
                continue;
            };
            let [lo, mid, hi] = lower_product_components(coef, cols);
            let mut r9 = lo;
            axpy_form(&mut r9, -1.0, &mid);
            let mut r10 = mid;
            axpy_form(&mut r10, -1.0, &hi);
            shape_rows.push(LinearRow::new(format!("mo9_{}_{}", j + 1, var.0 + 1), r9, Relation::Le, 0.0));
            shape_rows.push(LinearRow::new(format!("mo10_{}_{}", j + 1, var.0 + 1), r10, Relation::Le, 0.0));
        }
    }
    // Group all mo9 rows ahead of the mo10 rows.
    let (mo9, mo10): (Vec<_>, Vec<_>) = shape_rows.into_iter().partition(|r| r.name.starts_with("mo9_"));
    rows.extend(mo9);
    rows.extend(mo10);

    // mo11-mo12
    for prefix in [0, 1] {
        for (i, src) in sources.iter().enumerate() {
            if let SourceColumns::Fuzzy(cols) = src {
                rows.push(LinearRow::new(
                    format!("mo{}_{}", 11 + prefix, i + 1),
                    vec![(cols[prefix], 1.0), (cols[prefix + 1], -1.0)],
                    Relation::Le,
                    0.0,
                ));
            }
        }
    }

    Ok(TriObjectiveMilp {
        variables,
        rows,
        objectives: [vec![(theta[0], 1.0)], vec![(theta[1], 1.0)], vec![(theta[2], 1.0)]],
        theta,
        sources,
        minimax_forms,
    })
}

impl TriObjectiveMilp {
    pub fn variables(&self) -> &[CrispVariable] {
        &self.variables
    }

    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn rows(&self) -> &[LinearRow] {
        &self.rows
    }

    pub fn objectives(&self) -> &[LinearForm; 3] {
        &self.objectives
    }

    /// Columns of `(θ⁻, θ̂, θ⁺)`.
    pub fn theta_columns(&self) -> [usize; 3] {
        self.theta
    }

    pub fn source_columns(&self, var: VarId) -> SourceColumns {
        self.sources[var.0]
    }

    pub fn binaries(&self) -> Vec<usize> {
        self.variables
            .iter()
            .filter(|v| v.kind == CrispKind::Binary)
            .map(|v| v.id)
            .collect()
    }

    /// Appends a crisp row (used for side constraints written directly on
    /// the component columns).
    pub fn push_row(&mut self, row: LinearRow) {
        self.rows.push(row);
    }

    /// Single-objective program over the same feasible set, with extra rows.
    pub fn program(&self, objective: LinearForm, extra_rows: &[LinearRow]) -> LinearProgram {
        let mut rows = self.rows.clone();
        rows.extend_from_slice(extra_rows);
        LinearProgram {
            var_names: self.variables.iter().map(|v| v.name.clone()).collect(),
            lower: self.variables.iter().map(|v| v.lower).collect(),
            upper: self.variables.iter().map(|v| v.upper).collect(),
            rows,
            objective,
        }
    }

    pub fn lp_file(&self) -> LpFile {
        let lp = self.program(Vec::new(), &[]);
        LpFile {
            var_names: lp.var_names,
            lower: lp.lower,
            upper: lp.upper,
            binaries: self.binaries(),
            rows: lp.rows,
            objectives: OBJECTIVE_NAMES
                .iter()
                .zip(&self.objectives)
                .map(|(n, f)| (n.to_string(), f.clone()))
                .collect(),
        }
    }

    pub fn to_lp_text(&self) -> String {
        self.lp_file().write(Some("three-objective crisp reformulation: minimize THETA_LO, THETA_MID, THETA_HI"))
    }

    pub fn theta_of(&self, point: &[f64]) -> [f64; 3] {
        self.theta.map(|c| point[c])
    }

    /// Componentwise maxima of the lowered minimax rows at `point`; the
    /// smallest θ triple the point admits.
    pub fn row_maxima(&self, point: &[f64]) -> [f64; 3] {
        let mut out = [f64::NEG_INFINITY; 3];
        for comps in &self.minimax_forms {
            for (k, (form, constant)) in comps.iter().enumerate() {
                out[k] = out[k].max(eval_form(form, point) + constant);
            }
        }
        out
    }

    /// Sets θ in `point` to the row maxima. θ only appears in the minimax
    /// rows and in `mo7`/`mo8`, and the maxima are sorted whenever the
    /// per-term shape rows hold, so a feasible point stays feasible.
    pub fn tighten_theta(&self, point: &mut [f64]) {
        let maxima = self.row_maxima(point);
        for k in 0..3 {
            point[self.theta[k]] = maxima[k];
        }
    }

    /// Checks rows, bounds and integrality of `point` within `tol`.
    pub fn check_point(&self, point: &[f64], tol: f64) -> Result<(), ReformulateError> {
        if point.len() != self.variables.len() {
            return Err(ReformulateError::InfeasiblePoint {
                detail: format!("point has {} entries for {} columns", point.len(), self.variables.len()),
            });
        }
        for row in &self.rows {
            let v = row.violation(point);
            if v > tol {
                return Err(ReformulateError::InfeasiblePoint {
                    detail: format!("row `{}` violated by {v:e}", row.name),
                });
            }
        }
        for var in &self.variables {
            let x = point[var.id];
            let v = (var.lower - x).max(x - var.upper).max(0.0);
            if v > tol {
                return Err(ReformulateError::InfeasiblePoint {
                    detail: format!("bound of `{}` violated by {v:e}", var.name),
                });
            }
            if var.kind == CrispKind::Binary && (x - x.round()).abs() > tol {
                return Err(ReformulateError::InfeasiblePoint {
                    detail: format!("binary `{}` = {x}", var.name),
                });
            }
        }
        Ok(())
    }

    /// Regroups a feasible crisp point into fuzzy values.
    pub fn lift(&self, point: &[f64], tol: f64) -> Result<LiftedSolution, ReformulateError> {
        self.check_point(point, tol)?;
        let assignment = self
            .sources
            .iter()
            .map(|src| match *src {
                SourceColumns::Fuzzy([lo, mid, hi]) => {
                    Tfn::from_components_tol(point[lo].max(0.0), point[mid], point[hi], tol)
                }
                SourceColumns::Binary(col) => Ok(Tfn::crisp(point[col].round())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let [lo, mid, hi] = self.theta_of(point);
        let theta = Tfn::from_components_tol(lo, mid, hi, tol)?;
        Ok(LiftedSolution { assignment, theta })
    }
}

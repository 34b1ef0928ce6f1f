//! Capacitated center facility location, crisp and fully fuzzy.
//!
//! Customers `i` are served by facilities `j`. Opening a facility costs
//! `f_j`, sending `x_ij` units costs `c_ij` per unit, facility `j` serves at
//! most `u_j` units, and every customer's demand `d_i` is met in full. The
//! model minimizes the largest per-customer allocation cost plus the total
//! set-up cost.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fuzzy::{Component, Tfn};
use crate::milp::{LinearProgram, LinearRow, Relation};
use crate::model::{FuzzyLinearExpression, FuzzyMinimaxModel, FuzzyRelation, VarId, VariableKind};
use crate::reformulate::{reformulate, ReformulateError, TriObjectiveMilp};

/// Flows whose upper component is at most this are left out of networks.
pub const TAU_FLOW: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CcflpError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid instance: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("unknown variant `{0}` (expected derived or literal)")]
    UnknownVariant(String),
    #[error(transparent)]
    Reformulate(#[from] ReformulateError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CcflpInstance {
    pub n: usize,
    pub m: usize,
    pub d: Vec<Tfn>,
    pub u: Vec<Tfn>,
    pub f: Vec<Tfn>,
    pub c: Vec<Vec<Tfn>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawTfn {
    Scalar(f64),
    Triplet([f64; 3]),
}

impl RawTfn {
    fn components(&self) -> [f64; 3] {
        match *self {
            RawTfn::Scalar(v) => [v; 3],
            RawTfn::Triplet(t) => t,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    n: usize,
    m: usize,
    d: Vec<RawTfn>,
    u: Vec<RawTfn>,
    f: Vec<RawTfn>,
    c: Vec<Vec<RawTfn>>,
}

/// Dimensions and problems found in an instance document.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceReport {
    pub n: usize,
    pub m: usize,
    pub issues: Vec<String>,
}

impl InstanceReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

fn check_tfn(path: String, raw: &RawTfn, issues: &mut Vec<String>) {
    let [lo, mid, hi] = raw.components();
    if !(lo.is_finite() && mid.is_finite() && hi.is_finite()) {
        issues.push(format!("{path}: non-finite component"));
    } else if !(lo <= mid && mid <= hi) {
        issues.push(format!("{path}: components ({lo}, {mid}, {hi}) are not sorted"));
    } else if lo < 0.0 {
        issues.push(format!("{path}: negative lower component {lo}"));
    }
}

fn check_raw(raw: &RawInstance) -> Vec<String> {
    let mut issues = Vec::new();
    if raw.n == 0 || raw.m == 0 {
        issues.push(format!("n = {}, m = {}: both must be positive", raw.n, raw.m));
    }
    for (field, values, want) in [("d", &raw.d, raw.n), ("u", &raw.u, raw.m), ("f", &raw.f, raw.m)] {
        if values.len() != want {
            issues.push(format!("{field}: {} entries, expected {want}", values.len()));
        }
        for (k, v) in values.iter().enumerate() {
            check_tfn(format!("{field}[{k}]"), v, &mut issues);
        }
    }
    if raw.c.len() != raw.n {
        issues.push(format!("c: {} rows, expected {}", raw.c.len(), raw.n));
    }
    for (i, row) in raw.c.iter().enumerate() {
        if row.len() != raw.m {
            issues.push(format!("c[{i}]: {} entries, expected {}", row.len(), raw.m));
        }
        for (j, v) in row.iter().enumerate() {
            check_tfn(format!("c[{i}][{j}]"), v, &mut issues);
        }
    }
    issues
}

fn parse_raw(text: &str) -> Result<RawInstance, CcflpError> {
    serde_json::from_str(text).map_err(|e| CcflpError::Parse(e.to_string()))
}

/// Parses an instance document and lists every shape, sign and dimension
/// problem instead of stopping at the first.
pub fn check_instance(text: &str) -> Result<InstanceReport, CcflpError> {
    let raw = parse_raw(text)?;
    Ok(InstanceReport {
        n: raw.n,
        m: raw.m,
        issues: check_raw(&raw),
    })
}

impl CcflpInstance {
    pub fn from_json(text: &str) -> Result<Self, CcflpError> {
        let raw = parse_raw(text)?;
        let issues = check_raw(&raw);
        if !issues.is_empty() {
            return Err(CcflpError::Invalid(issues));
        }
        let conv = |v: &RawTfn| {
            let [lo, mid, hi] = v.components();
            Tfn::new(lo, mid, hi).expect("checked above")
        };
        Ok(CcflpInstance {
            n: raw.n,
            m: raw.m,
            d: raw.d.iter().map(conv).collect(),
            u: raw.u.iter().map(conv).collect(),
            f: raw.f.iter().map(conv).collect(),
            c: raw.c.iter().map(|row| row.iter().map(conv).collect()).collect(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    /// Every TFN replaced by its chosen component, as a crisp instance.
    pub fn at_component(&self, selector: Component) -> CcflpInstance {
        let pick = |t: &Tfn| Tfn::crisp(t.component(selector));
        CcflpInstance {
            n: self.n,
            m: self.m,
            d: self.d.iter().map(pick).collect(),
            u: self.u.iter().map(pick).collect(),
            f: self.f.iter().map(pick).collect(),
            c: self.c.iter().map(|row| row.iter().map(pick).collect()).collect(),
        }
    }

    pub fn is_crisp(&self) -> bool {
        self.d
            .iter()
            .chain(&self.u)
            .chain(&self.f)
            .chain(self.c.iter().flatten())
            .all(Tfn::is_degenerate)
    }
}

/// Seeded random instance in which the last facility alone can serve every
/// customer, so the derived fuzzy model and the crisp models are feasible.
pub fn random_instance(n: usize, m: usize, seed: u64, crisp: bool) -> CcflpInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spread = |rng: &mut ChaCha8Rng, mid: f64| -> Tfn {
        if crisp {
            return Tfn::crisp(mid);
        }
        let lo = mid * rng.random_range(0.5..1.0);
        let hi = mid * rng.random_range(1.0..1.5);
        Tfn::new(lo, mid, hi).expect("sorted by construction")
    };
    let round2 = |v: f64| (v * 100.0).round() / 100.0;
    let d: Vec<Tfn> = (0..n).map(|_| {
        let mid = round2(rng.random_range(1.0..40.0));
        spread(&mut rng, mid)
    }).collect();
    let total_hi: f64 = d.iter().map(Tfn::hi).sum();
    let mut u: Vec<Tfn> = (0..m).map(|_| {
        let mid = round2(rng.random_range(5.0..80.0));
        spread(&mut rng, mid)
    }).collect();
    if let Some(last) = u.last_mut() {
        let base = round2(total_hi + 1.0);
        *last = Tfn::new(base, base, base).unwrap();
    }
    let f = (0..m).map(|_| {
        let mid = round2(rng.random_range(100.0..800.0));
        spread(&mut rng, mid)
    }).collect();
    let c = (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if i == j {
                        Tfn::ZERO
                    } else {
                        let mid = round2(rng.random_range(10.0..100.0));
                        spread(&mut rng, mid)
                    }
                })
                .collect()
        })
        .collect();
    CcflpInstance { n, m, d, u, f, c }
}

/// Crisp single-objective model `min θ'` over one component of the data.
#[derive(Debug, Clone, PartialEq)]
pub struct CrispCcflp {
    pub lp: LinearProgram,
    pub binaries: Vec<usize>,
    /// Column of `x_ij`, indexed `[i][j]`.
    pub x: Vec<Vec<usize>>,
    pub y: Vec<usize>,
    pub theta: usize,
}

pub fn build_crisp_model(instance: &CcflpInstance, selector: Component) -> CrispCcflp {
    let val = |t: &Tfn| t.component(selector);
    let mut lp = LinearProgram::new();
    let x: Vec<Vec<usize>> = (0..instance.n)
        .map(|i| {
            (0..instance.m)
                .map(|j| lp.add_var(format!("x_{}_{}", i + 1, j + 1), 0.0, f64::INFINITY))
                .collect()
        })
        .collect();
    let y: Vec<usize> = (0..instance.m).map(|j| lp.add_var(format!("y_{}", j + 1), 0.0, 1.0)).collect();
    let theta = lp.add_var("theta", f64::NEG_INFINITY, f64::INFINITY);
    for i in 0..instance.n {
        let mut coeffs: Vec<(usize, f64)> = (0..instance.m).map(|j| (x[i][j], val(&instance.c[i][j]))).collect();
        coeffs.extend((0..instance.m).map(|j| (y[j], val(&instance.f[j]))));
        coeffs.push((theta, -1.0));
        lp.add_row(format!("cost_{}", i + 1), coeffs, Relation::Le, 0.0);
    }
    for i in 0..instance.n {
        let coeffs = (0..instance.m).map(|j| (x[i][j], 1.0)).collect();
        lp.add_row(format!("demand_{}", i + 1), coeffs, Relation::Eq, val(&instance.d[i]));
    }
    for j in 0..instance.m {
        let mut coeffs: Vec<(usize, f64)> = (0..instance.n).map(|i| (x[i][j], 1.0)).collect();
        coeffs.push((y[j], -val(&instance.u[j])));
        lp.add_row(format!("cap_{}", j + 1), coeffs, Relation::Le, 0.0);
    }
    lp.set_objective(vec![(theta, 1.0)]);
    CrispCcflp {
        binaries: y.clone(),
        lp,
        x,
        y,
        theta,
    }
}

impl CrispCcflp {
    pub fn network(&self, point: &[f64]) -> AssignmentNetwork {
        let open = (0..self.y.len()).filter(|&j| point[self.y[j]] > 0.5).collect();
        let mut flows = Vec::new();
        for (i, row) in self.x.iter().enumerate() {
            for (j, &col) in row.iter().enumerate() {
                if point[col] > TAU_FLOW {
                    flows.push(Flow {
                        customer: i,
                        facility: j,
                        amount: Tfn::crisp(point[col]),
                    });
                }
            }
        }
        AssignmentNetwork {
            customers: self.x.len(),
            facilities: self.y.len(),
            open,
            flows,
            theta: Tfn::crisp(point[self.theta]),
        }
    }
}

/// Best objective and open set over all non-empty facility subsets, each
/// evaluated by solving its allocation LP. Ties keep the first subset in
/// bitmask order.
pub fn best_open_set_by_enumeration(
    instance: &CcflpInstance,
    selector: Component,
) -> Result<Option<(f64, Vec<usize>)>, crate::milp::MilpError> {
    let val = |t: &Tfn| t.component(selector);
    let (n, m) = (instance.n, instance.m);
    assert!(m < usize::BITS as usize, "too many facilities to enumerate");
    let mut best: Option<(f64, Vec<usize>)> = None;
    for mask in 1usize..(1 << m) {
        let open: Vec<usize> = (0..m).filter(|j| mask >> j & 1 == 1).collect();
        let setup: f64 = open.iter().map(|&j| val(&instance.f[j])).sum();
        let mut lp = LinearProgram::new();
        let theta = lp.add_var("theta", f64::NEG_INFINITY, f64::INFINITY);
        let cols: Vec<Vec<usize>> = (0..n)
            .map(|i| open.iter().map(|&j| lp.add_var(format!("x_{i}_{j}"), 0.0, f64::INFINITY)).collect())
            .collect();
        for i in 0..n {
            let mut coeffs: Vec<(usize, f64)> =
                open.iter().enumerate().map(|(k, &j)| (cols[i][k], val(&instance.c[i][j]))).collect();
            coeffs.push((theta, -1.0));
            lp.add_row(format!("cost_{i}"), coeffs, Relation::Le, -setup);
            lp.add_row(
                format!("demand_{i}"),
                cols[i].iter().map(|&c| (c, 1.0)).collect(),
                Relation::Eq,
                val(&instance.d[i]),
            );
        }
        for (k, &j) in open.iter().enumerate() {
            lp.add_row(format!("cap_{j}"), (0..n).map(|i| (cols[i][k], 1.0)).collect(), Relation::Le, val(&instance.u[j]));
        }
        lp.set_objective(vec![(theta, 1.0)]);
        let sol = crate::milp::solve_lp(&lp)?;
        if sol.is_optimal() && best.as_ref().is_none_or(|(z, _)| sol.objective < *z) {
            best = Some((sol.objective, open));
        }
    }
    Ok(best)
}

/// How capacity rows enter the fuzzy model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Variant {
    /// `Σᵢ x̃ᵢⱼ ≲ ũⱼ yⱼ`, reformulated like every other constraint.
    #[default]
    Derived,
    /// `Σᵢ dᵢᵏ xᵢⱼᵏ <= uⱼᵏ yⱼ` for each component `k`, added to the crisp
    /// program after reformulation.
    Literal,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Derived => "derived",
            Variant::Literal => "literal",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = CcflpError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "derived" => Ok(Variant::Derived),
            "literal" => Ok(Variant::Literal),
            other => Err(CcflpError::UnknownVariant(other.to_string())),
        }
    }
}

/// Fuzzy model together with the handles needed to read solutions back.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyCcflp {
    pub model: FuzzyMinimaxModel,
    pub variant: Variant,
    /// `x̃ᵢⱼ` indexed `[i][j]`.
    pub x: Vec<Vec<VarId>>,
    pub y: Vec<VarId>,
    demands: Vec<Tfn>,
    capacities: Vec<Tfn>,
}

pub fn build_fuzzy_model(instance: &CcflpInstance, variant: Variant) -> FuzzyCcflp {
    let mut model = FuzzyMinimaxModel::new();
    let x: Vec<Vec<VarId>> = (0..instance.n)
        .map(|i| {
            (0..instance.m)
                .map(|j| {
                    model
                        .add_variable(format!("x_{}_{}", i + 1, j + 1), VariableKind::FuzzyNonnegative)
                        .expect("names are unique")
                })
                .collect()
        })
        .collect();
    let y: Vec<VarId> = (0..instance.m)
        .map(|j| model.add_variable(format!("y_{}", j + 1), VariableKind::CrispBinary).expect("names are unique"))
        .collect();
    for i in 0..instance.n {
        let lhs = (0..instance.m).fold(FuzzyLinearExpression::new(), |e, j| e.term(Tfn::crisp(1.0), x[i][j]));
        model.add_constraint(lhs, FuzzyRelation::Equal, instance.d[i]).expect("variables exist");
    }
    if variant == Variant::Derived {
        for j in 0..instance.m {
            let lhs = (0..instance.n).fold(FuzzyLinearExpression::new(), |e, i| e.term(Tfn::crisp(1.0), x[i][j]));
            let rhs = FuzzyLinearExpression::new().term(instance.u[j], y[j]);
            model.add_constraint_expr(lhs, FuzzyRelation::LessOrApprox, rhs).expect("variables exist");
        }
    }
    let rows = (0..instance.n)
        .map(|i| (0..instance.m).fold(FuzzyLinearExpression::new(), |e, j| e.term(instance.c[i][j], x[i][j])))
        .collect();
    let setup = (0..instance.m).fold(FuzzyLinearExpression::new(), |e, j| e.term(instance.f[j], y[j]));
    model.set_minimax_rows(rows, Some(setup)).expect("variables exist");
    FuzzyCcflp {
        model,
        variant,
        x,
        y,
        demands: instance.d.clone(),
        capacities: instance.u.clone(),
    }
}

impl FuzzyCcflp {
    /// Three-objective crisp program, with the component capacity rows of
    /// the literal variant appended as `cap_lo_j`, `cap_mid_j`, `cap_hi_j`.
    pub fn reformulate(&self) -> Result<TriObjectiveMilp, CcflpError> {
        let mut milp = reformulate(&self.model)?;
        if self.variant == Variant::Literal {
            for c in Component::ALL {
                for (j, &yj) in self.y.iter().enumerate() {
                    let mut coeffs: Vec<(usize, f64)> = self
                        .x
                        .iter()
                        .enumerate()
                        .map(|(i, row)| (milp.source_columns(row[j]).component(c.index()), self.demands[i].component(c)))
                        .collect();
                    coeffs.push((milp.source_columns(yj).component(0), -self.capacities[j].component(c)));
                    milp.push_row(LinearRow::new(format!("cap_{c}_{}", j + 1), coeffs, Relation::Le, 0.0));
                }
            }
        }
        Ok(milp)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Flow {
    pub customer: usize,
    pub facility: usize,
    pub amount: Tfn,
}

/// Open facilities and nonzero flows of a solution. Indices are 0-based;
/// reports and drawings number nodes from 1.
#[derive(Debug, Clone, PartialEq)]
pub struct AssignmentNetwork {
    pub customers: usize,
    pub facilities: usize,
    pub open: Vec<usize>,
    pub flows: Vec<Flow>,
    pub theta: Tfn,
}

/// Reads the network of a feasible point of `fuzzy.reformulate()`.
pub fn extract_network(
    fuzzy: &FuzzyCcflp,
    milp: &TriObjectiveMilp,
    point: &[f64],
    tol: f64,
) -> Result<AssignmentNetwork, CcflpError> {
    let lifted = milp.lift(point, tol)?;
    let open = (0..fuzzy.y.len()).filter(|&j| lifted.assignment[fuzzy.y[j].0].mid() > 0.5).collect();
    let mut flows = Vec::new();
    for (i, row) in fuzzy.x.iter().enumerate() {
        for (j, var) in row.iter().enumerate() {
            let amount = lifted.assignment[var.0];
            if amount.hi() > TAU_FLOW {
                flows.push(Flow {
                    customer: i,
                    facility: j,
                    amount,
                });
            }
        }
    }
    Ok(AssignmentNetwork {
        customers: fuzzy.x.len(),
        facilities: fuzzy.y.len(),
        open,
        flows,
        theta: lifted.theta,
    })
}

fn label(t: &Tfn) -> String {
    if t.is_degenerate() {
        format!("{:.2}", t.mid())
    } else {
        format!("{:.2}", t)
    }
}

impl AssignmentNetwork {
    pub fn flow(&self, customer: usize, facility: usize) -> Option<Tfn> {
        self.flows
            .iter()
            .find(|f| f.customer == customer && f.facility == facility)
            .map(|f| f.amount)
    }

    /// Graphviz drawing: open facilities filled black, customer-to-facility
    /// arcs labeled with their flows, self-service flows left out. When customers and
    /// facilities are equally many they share nodes `1..n`.
    pub fn to_dot(&self, title: &str) -> String {
        let shared = self.customers == self.facilities;
        let cnode = |i: usize| if shared { format!("{}", i + 1) } else { format!("c{}", i + 1) };
        let fnode = |j: usize| if shared { format!("{}", j + 1) } else { format!("f{}", j + 1) };
        let mut out = String::new();
        writeln!(out, "digraph network {{").unwrap();
        writeln!(out, "  label=\"{}\";", title.replace('"', "\\\"")).unwrap();
        writeln!(out, "  node [shape=circle];").unwrap();
        if !shared {
            for i in 0..self.customers {
                writeln!(out, "  \"{}\";", cnode(i)).unwrap();
            }
        }
        for j in 0..self.facilities {
            if self.open.contains(&j) {
                writeln!(out, "  \"{}\" [style=filled, fillcolor=black, fontcolor=white];", fnode(j)).unwrap();
            } else {
                writeln!(out, "  \"{}\";", fnode(j)).unwrap();
            }
        }
        for f in &self.flows {
            if shared && f.customer == f.facility {
                continue;
            }
            writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                cnode(f.customer),
                fnode(f.facility),
                label(&f.amount)
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }
}

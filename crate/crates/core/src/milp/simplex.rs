//! Dense two-phase primal simplex.
//!
//! Variables are mapped to nonnegative tableau columns (shifted, mirrored,
//! split or substituted when fixed), finite upper bounds become extra `<=`
//! rows, and every row is normalized to a nonnegative right-hand side before
//! slack and artificial columns are appended. Pricing is most-negative
//! reduced cost; after a run of degenerate pivots the solver falls back to
//! Bland's rule until the objective moves again.

use super::{LinearProgram, MilpError, MilpSolution, Relation, Status};

const PIVOT_TOL: f64 = 1e-9;
const OPT_TOL: f64 = 1e-9;
const ZERO_TOL: f64 = 1e-12;
/// Relative objective gain that counts as progress.
const PROGRESS_TOL: f64 = 1e-9;
/// Slack in the first pass of the ratio test.
const RATIO_SLACK: f64 = 1e-9;
/// Pivots smaller than this share of the largest candidate are avoided.
const PIVOT_SHARE: f64 = 0.1;
/// Consecutive non-improving pivots before switching to Bland's rule.
const STALL_LIMIT: usize = 50;

#[derive(Debug, Clone, Copy)]
enum ColumnMap {
    Fixed(f64),
    /// `x = base + col`
    Shift { col: usize, base: f64 },
    /// `x = base - col`
    Mirror { col: usize, base: f64 },
    /// `x = pos - neg`
    Split { pos: usize, neg: usize },
}

struct StdRow {
    coeffs: Vec<(usize, f64)>,
    relation: Relation,
    rhs: f64,
}

#[derive(Debug, PartialEq)]
enum Outcome {
    Optimal,
    Unbounded,
}

struct Tableau {
    rows: usize,
    width: usize,
    /// Row-major `rows × width`; the last column is the right-hand side.
    a: Vec<f64>,
    /// Reduced costs, last entry is minus the objective value.
    d: Vec<f64>,
    basis: Vec<usize>,
    artificial: Vec<bool>,
    iterations: usize,
    max_iterations: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> f64 {
        self.a[i * self.width + self.width - 1]
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.width + j]
    }

    fn pivot(&mut self, r: usize, q: usize) {
        let w = self.width;
        let piv = self.a[r * w + q];
        let row: Vec<f64> = self.a[r * w..(r + 1) * w].iter().map(|v| v / piv).collect();
        let nz: Vec<usize> = (0..w).filter(|&j| row[j] != 0.0).collect();
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let f = self.a[i * w + q];
            if f == 0.0 {
                continue;
            }
            let dst = &mut self.a[i * w..(i + 1) * w];
            for &j in &nz {
                dst[j] -= f * row[j];
            }
            dst[q] = 0.0;
            let b = &mut dst[w - 1];
            if b.abs() < ZERO_TOL {
                *b = 0.0;
            }
        }
        let f = self.d[q];
        if f != 0.0 {
            for &j in &nz {
                self.d[j] -= f * row[j];
            }
            self.d[q] = 0.0;
        }
        self.a[r * w..(r + 1) * w].copy_from_slice(&row);
        self.a[r * w + q] = 1.0;
        self.basis[r] = q;
    }

    /// Sets the reduced-cost row for column costs `cost`.
    fn price(&mut self, cost: &[f64]) {
        let w = self.width;
        self.d = cost.to_vec();
        self.d.push(0.0);
        for i in 0..self.rows {
            let cb = cost[self.basis[i]];
            if cb == 0.0 {
                continue;
            }
            for j in 0..w {
                self.d[j] -= cb * self.a[i * w + j];
            }
        }
        for i in 0..self.rows {
            self.d[self.basis[i]] = 0.0;
        }
    }

    fn run(&mut self, allow_artificial: bool) -> Result<Outcome, MilpError> {
        let w = self.width;
        let mut stall = 0usize;
        loop {
            if self.iterations >= self.max_iterations {
                return Err(MilpError::IterationLimit(self.max_iterations));
            }
            let bland = stall >= STALL_LIMIT;
            let candidates = (0..w - 1).filter(|&j| (allow_artificial || !self.artificial[j]) && self.d[j] < -OPT_TOL);
            let entering = if bland {
                candidates.min()
            } else {
                candidates.fold(None, |best: Option<usize>, j| match best {
                    Some(b) if self.d[b] <= self.d[j] => Some(b),
                    _ => Some(j),
                })
            };
            let Some(q) = entering else {
                return Ok(Outcome::Optimal);
            };
            // Two-pass ratio test: find the step length with a little
            // slack, then pick a large pivot among the rows reaching it.
            let mut bound = f64::INFINITY;
            for i in 0..self.rows {
                let aiq = self.at(i, q);
                if aiq > PIVOT_TOL {
                    bound = bound.min((self.rhs(i).max(0.0) + RATIO_SLACK) / aiq);
                }
            }
            let ties: Vec<usize> = (0..self.rows)
                .filter(|&i| {
                    let aiq = self.at(i, q);
                    aiq > PIVOT_TOL && self.rhs(i).max(0.0) / aiq <= bound
                })
                .collect();
            let largest = ties.iter().map(|&i| self.at(i, q)).fold(0.0, f64::max);
            let leave = ties
                .into_iter()
                .filter(|&i| self.at(i, q) >= PIVOT_SHARE * largest)
                .min_by(|&i, &k| {
                    if bland {
                        self.basis[i].cmp(&self.basis[k])
                    } else {
                        self.at(k, q)
                            .total_cmp(&self.at(i, q))
                            .then(self.basis[i].cmp(&self.basis[k]))
                    }
                })
                .map(|i| (i, self.rhs(i).max(0.0) / self.at(i, q)));
            let Some((r, ratio)) = leave else {
                return Ok(Outcome::Unbounded);
            };
            let gain = ratio * -self.d[q];
            if gain > PROGRESS_TOL * (1.0 + self.d[w - 1].abs()) {
                stall = 0;
            } else {
                stall += 1;
            }
            log::trace!("pivot {}: row {r} column {q}, objective {}", self.iterations, -self.d[w - 1]);
            self.pivot(r, q);
            self.iterations += 1;
        }
    }
}

pub fn solve_lp(lp: &LinearProgram) -> Result<MilpSolution, MilpError> {
    lp.validate()?;
    solve_validated(lp, &lp.lower, &lp.upper)
}

/// Solves `lp` with its variable bounds replaced by `lower`/`upper`.
pub fn solve_lp_with_bounds(lp: &LinearProgram, lower: &[f64], upper: &[f64]) -> Result<MilpSolution, MilpError> {
    lp.validate()?;
    if lower.len() != lp.num_vars() || upper.len() != lp.num_vars() {
        return Err(MilpError::MalformedProgram("bound override has the wrong length".into()));
    }
    solve_validated(lp, lower, upper)
}

pub(crate) fn solve_validated(lp: &LinearProgram, lower: &[f64], upper: &[f64]) -> Result<MilpSolution, MilpError> {
    let n = lp.num_vars();
    let infeasible = || Ok(MilpSolution::without_point(Status::Infeasible, 1));
    if (0..n).any(|j| lower[j] > upper[j]) {
        return infeasible();
    }

    // Column mapping.
    let mut maps = Vec::with_capacity(n);
    let mut ncols = 0usize;
    let mut bound_rows: Vec<StdRow> = Vec::new();
    for j in 0..n {
        let (l, u) = (lower[j], upper[j]);
        let map = if l == u {
            ColumnMap::Fixed(l)
        } else if l.is_finite() {
            let col = ncols;
            ncols += 1;
            if u.is_finite() {
                bound_rows.push(StdRow {
                    coeffs: vec![(col, 1.0)],
                    relation: Relation::Le,
                    rhs: u - l,
                });
            }
            ColumnMap::Shift { col, base: l }
        } else if u.is_finite() {
            ncols += 1;
            ColumnMap::Mirror { col: ncols - 1, base: u }
        } else {
            ncols += 2;
            ColumnMap::Split {
                pos: ncols - 2,
                neg: ncols - 1,
            }
        };
        maps.push(map);
    }

    let to_std = |coeffs: &[(usize, f64)]| -> (Vec<(usize, f64)>, f64) {
        let mut out: Vec<(usize, f64)> = Vec::with_capacity(coeffs.len());
        let mut shift = 0.0;
        for &(v, c) in coeffs {
            match maps[v] {
                ColumnMap::Fixed(x) => shift += c * x,
                ColumnMap::Shift { col, base } => {
                    out.push((col, c));
                    shift += c * base;
                }
                ColumnMap::Mirror { col, base } => {
                    out.push((col, -c));
                    shift += c * base;
                }
                ColumnMap::Split { pos, neg } => {
                    out.push((pos, c));
                    out.push((neg, -c));
                }
            }
        }
        (out, shift)
    };

    let original_rows = lp.rows.len();
    let mut std_rows: Vec<StdRow> = lp
        .rows
        .iter()
        .map(|row| {
            let (coeffs, shift) = to_std(&row.coeffs);
            StdRow {
                coeffs,
                relation: row.relation,
                rhs: row.rhs - shift,
            }
        })
        .collect();
    std_rows.extend(bound_rows);

    let mut cost = vec![0.0; ncols];
    let (obj, _) = to_std(&lp.objective);
    for (c, v) in obj {
        cost[c] += v;
    }

    // Normalize to rhs >= 0 and lay out slack / artificial columns.
    let m = std_rows.len();
    let mut sign = vec![1.0; m];
    for (k, row) in std_rows.iter_mut().enumerate() {
        if row.rhs < 0.0 {
            sign[k] = -1.0;
            row.rhs = -row.rhs;
            for (_, c) in row.coeffs.iter_mut() {
                *c = -*c;
            }
            row.relation = match row.relation {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
    }
    let slack_count = std_rows.iter().filter(|r| r.relation != Relation::Eq).count();
    let art_count = std_rows.iter().filter(|r| r.relation != Relation::Le).count();
    let total = ncols + slack_count + art_count;
    let width = total + 1;
    let mut a = vec![0.0; m * width];
    let mut basis = vec![0usize; m];
    let mut unit_col = vec![0usize; m];
    let mut artificial = vec![false; total];
    let mut next_slack = ncols;
    let mut next_art = ncols + slack_count;
    for (k, row) in std_rows.iter().enumerate() {
        let base = k * width;
        for &(c, v) in &row.coeffs {
            a[base + c] += v;
        }
        a[base + total] = row.rhs;
        match row.relation {
            Relation::Le => {
                a[base + next_slack] = 1.0;
                basis[k] = next_slack;
                unit_col[k] = next_slack;
                next_slack += 1;
            }
            Relation::Ge => {
                a[base + next_slack] = -1.0;
                next_slack += 1;
                a[base + next_art] = 1.0;
                artificial[next_art] = true;
                basis[k] = next_art;
                unit_col[k] = next_art;
                next_art += 1;
            }
            Relation::Eq => {
                a[base + next_art] = 1.0;
                artificial[next_art] = true;
                basis[k] = next_art;
                unit_col[k] = next_art;
                next_art += 1;
            }
        }
    }

    let mut t = Tableau {
        rows: m,
        width,
        a,
        d: Vec::new(),
        basis,
        artificial,
        iterations: 0,
        max_iterations: 50 * (m + total) + 1000,
    };

    // Phase 1.
    if art_count > 0 {
        let phase1: Vec<f64> = (0..total).map(|j| if t.artificial[j] { 1.0 } else { 0.0 }).collect();
        t.price(&phase1);
        t.run(true)?;
        let infeas = -t.d[total];
        let scale = 1.0 + std_rows.iter().map(|r| r.rhs).fold(0.0, f64::max);
        if infeas > 1e-9 * scale {
            return infeasible();
        }
        // Drive remaining artificials out of the basis; rows with no other
        // nonzero are redundant and keep their (zero) artificial.
        for i in 0..m {
            if !t.artificial[t.basis[i]] {
                continue;
            }
            let mut best: Option<(usize, f64)> = None;
            for j in 0..total {
                let v = t.at(i, j).abs();
                if !t.artificial[j] && v > PIVOT_TOL && best.is_none_or(|(_, b)| v > b) {
                    best = Some((j, v));
                }
            }
            if let Some((q, _)) = best {
                t.pivot(i, q);
            }
        }
    }

    // Phase 2.
    let mut phase2 = cost.clone();
    phase2.resize(total, 0.0);
    t.price(&phase2);
    if t.run(false)? == Outcome::Unbounded {
        return Ok(MilpSolution::without_point(Status::Unbounded, 1));
    }

    let mut col_value = vec![0.0; total];
    for i in 0..m {
        col_value[t.basis[i]] = t.rhs(i).max(0.0);
    }
    let point: Vec<f64> = maps
        .iter()
        .map(|map| match *map {
            ColumnMap::Fixed(x) => x,
            ColumnMap::Shift { col, base } => base + col_value[col],
            ColumnMap::Mirror { col, base } => base - col_value[col],
            ColumnMap::Split { pos, neg } => col_value[pos] - col_value[neg],
        })
        .collect();

    let duals = (0..original_rows)
        .map(|k| {
            let w: f64 = (0..m).map(|i| phase2[t.basis[i]] * t.at(i, unit_col[k])).sum();
            sign[k] * w
        })
        .collect();

    Ok(MilpSolution {
        status: Status::Optimal,
        objective: lp.objective_value(&point),
        point,
        node_count: 1,
        duals,
    })
}

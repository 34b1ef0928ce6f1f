use std::cmp::Ordering;
use std::collections::BinaryHeap;

use log::debug;

use super::simplex::solve_validated;
use super::{LinearProgram, MilpError, MilpSolution, Status, INT_TOL};

/// Anything that can solve a mixed 0-1 program to global optimality.
///
/// The in-repo [`BranchAndBound`] is the default; an external solver can be
/// plugged in by implementing this trait.
pub trait MilpBackend: Send + Sync {
    fn solve(&self, lp: &LinearProgram, binaries: &[usize]) -> Result<MilpSolution, MilpError>;
}

/// Best-first branch-and-bound on binary variables.
///
/// Branches on the most fractional binary (lowest index on ties) and always
/// expands the open node with the smallest bound, ties going to the older
/// node. A node is pruned when its bound is within `abs_gap + rel_gap·|z*|`
/// of the incumbent `z*`.
#[derive(Debug, Clone)]
pub struct BranchAndBound {
    pub int_tol: f64,
    pub abs_gap: f64,
    pub rel_gap: f64,
    pub max_nodes: usize,
}

impl Default for BranchAndBound {
    fn default() -> Self {
        BranchAndBound {
            int_tol: INT_TOL,
            abs_gap: 1e-9,
            rel_gap: 1e-10,
            max_nodes: 1_000_000,
        }
    }
}

struct Node {
    id: usize,
    bound: f64,
    lower: Vec<f64>,
    upper: Vec<f64>,
    point: Vec<f64>,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Node {}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Node {
    // Reversed so that the max-heap pops the smallest (bound, id).
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .bound
            .total_cmp(&self.bound)
            .then_with(|| other.id.cmp(&self.id))
    }
}

impl BranchAndBound {
    fn prunes(&self, bound: f64, incumbent: Option<f64>) -> bool {
        match incumbent {
            Some(z) => bound >= z - (self.abs_gap + self.rel_gap * z.abs()),
            None => false,
        }
    }

    fn most_fractional(&self, point: &[f64], binaries: &[usize]) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for &b in binaries {
            let frac = (point[b] - point[b].round()).abs();
            if frac > self.int_tol && best.is_none_or(|(_, f)| frac > f) {
                best = Some((b, frac));
            }
        }
        best.map(|(b, _)| b)
    }

    pub fn solve(&self, lp: &LinearProgram, binaries: &[usize]) -> Result<MilpSolution, MilpError> {
        lp.validate()?;
        let mut lower = lp.lower.clone();
        let mut upper = lp.upper.clone();
        for &b in binaries {
            if b >= lp.num_vars() {
                return Err(MilpError::MalformedProgram(format!("binary index {b} out of range")));
            }
            lower[b] = lower[b].max(0.0).ceil();
            upper[b] = upper[b].min(1.0).floor();
        }

        let mut nodes = 0usize;
        let mut next_id = 0usize;
        let mut open = BinaryHeap::new();
        let mut incumbent: Option<(f64, Vec<f64>)> = None;

        let root = solve_validated(lp, &lower, &upper)?;
        nodes += 1;
        debug!("node 0: {:?} bound {}", root.status, root.objective);
        match root.status {
            Status::Optimal => {}
            status => return Ok(MilpSolution::without_point(status, nodes)),
        }
        open.push(Node {
            id: next_id,
            bound: root.objective,
            lower,
            upper,
            point: root.point,
        });
        next_id += 1;

        while let Some(node) = open.pop() {
            if self.prunes(node.bound, incumbent.as_ref().map(|(z, _)| *z)) {
                // Every remaining node has a bound at least as large.
                break;
            }
            let Some(var) = self.most_fractional(&node.point, binaries) else {
                // Re-solve with the binaries pinned so the incumbent is an
                // exact vertex rather than a rounded near-integral point.
                let mut lower = node.lower.clone();
                let mut upper = node.upper.clone();
                for &b in binaries {
                    let v = node.point[b].round();
                    lower[b] = v;
                    upper[b] = v;
                }
                let polished = solve_validated(lp, &lower, &upper)?;
                let point = if polished.status == Status::Optimal {
                    polished.point
                } else {
                    let mut point = node.point;
                    for &b in binaries {
                        point[b] = point[b].round();
                    }
                    point
                };
                let z = lp.objective_value(&point);
                debug!("node {}: integral, objective {}", node.id, z);
                if incumbent.as_ref().is_none_or(|(best, _)| z < *best) {
                    incumbent = Some((z, point));
                }
                continue;
            };
            for value in [0.0, 1.0] {
                if nodes >= self.max_nodes {
                    return Err(MilpError::NodeLimit(self.max_nodes));
                }
                let mut lower = node.lower.clone();
                let mut upper = node.upper.clone();
                lower[var] = value;
                upper[var] = value;
                let id = next_id;
                next_id += 1;
                let sol = solve_validated(lp, &lower, &upper)?;
                nodes += 1;
                debug!(
                    "node {id}: parent {} sets x{var} = {value}: {:?} bound {}",
                    node.id, sol.status, sol.objective
                );
                if sol.status != Status::Optimal {
                    continue;
                }
                if self.prunes(sol.objective, incumbent.as_ref().map(|(z, _)| *z)) {
                    continue;
                }
                open.push(Node {
                    id,
                    bound: sol.objective,
                    lower,
                    upper,
                    point: sol.point,
                });
            }
        }

        Ok(match incumbent {
            Some((objective, point)) => MilpSolution {
                status: Status::Optimal,
                point,
                objective,
                node_count: nodes,
                duals: Vec::new(),
            },
            None => MilpSolution::without_point(Status::Infeasible, nodes),
        })
    }
}

impl MilpBackend for BranchAndBound {
    fn solve(&self, lp: &LinearProgram, binaries: &[usize]) -> Result<MilpSolution, MilpError> {
        BranchAndBound::solve(self, lp, binaries)
    }
}

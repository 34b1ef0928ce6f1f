//! Weighted-sum, lexicographic and epsilon-constraint scalarizations on a
//! model whose efficient θ triples are (1, 2, 3) and (0, 3, 3).

use fuzzy_minimax::fuzzy::{Component, Tfn};
use fuzzy_minimax::milp::BranchAndBound;
use fuzzy_minimax::model::{FuzzyLinearExpression as Expr, FuzzyMinimaxModel, VariableKind};
use fuzzy_minimax::pareto::{epsilon_constraint_enumerate, lexicographic, weighted_sum};
use fuzzy_minimax::reformulate::reformulate;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut model = FuzzyMinimaxModel::new();
    let y = model.add_variable("y", VariableKind::CrispBinary)?;
    model.set_minimax_rows(
        vec![
            Expr::constant(Tfn::new(1.0, 2.0, 3.0)?).term(Tfn::new(-3.0, -2.0, -1.0)?, y),
            Expr::new().term(Tfn::new(0.0, 3.0, 3.0)?, y),
        ],
        None,
    )?;
    let milp = reformulate(&model)?;
    let bb = BranchAndBound::default();

    let ws = weighted_sum(&milp, [1.0, 2.0, 1.0], &bb)?;
    println!("{}: {:?}", ws.method, ws.theta);
    let lex = lexicographic(&milp, [Component::Lo, Component::Mid, Component::Hi], &bb)?;
    println!("{}: {:?}", lex.method, lex.theta);

    let set = epsilon_constraint_enumerate(&milp, (2, 2), &bb)?;
    println!("epsilon grid: {} efficient triples", set.len());
    for p in &set.points {
        println!("  {}: {:?}", p.method, p.theta);
    }
    Ok(())
}

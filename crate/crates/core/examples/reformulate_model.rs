//! Builds a small fuzzy minimax model and prints its crisp three-objective
//! program in LP format.

use fuzzy_minimax::fuzzy::Tfn;
use fuzzy_minimax::model::{FuzzyLinearExpression as Expr, FuzzyMinimaxModel, FuzzyRelation, VariableKind};
use fuzzy_minimax::reformulate::reformulate;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut model = FuzzyMinimaxModel::new();
    let x = model.add_variable("x", VariableKind::FuzzyNonnegative)?;
    let y = model.add_variable("y", VariableKind::CrispBinary)?;

    // x must cover (2, 3, 4) unless y is switched on.
    model.add_constraint(
        Expr::new().term(Tfn::crisp(-1.0), x).term(Tfn::crisp(-4.0), y),
        FuzzyRelation::LessOrApprox,
        Tfn::new(-4.0, -3.0, -2.0)?,
    )?;
    model.set_minimax_rows(
        vec![
            Expr::new().term(Tfn::new(1.0, 2.0, 3.0)?, x),
            Expr::constant(Tfn::new(1.0, 1.0, 2.0)?).term(Tfn::new(4.0, 5.0, 7.0)?, y),
        ],
        None,
    )?;

    let milp = reformulate(&model)?;
    println!("{} crisp columns, {} rows", milp.num_vars(), milp.rows().len());
    print!("{}", milp.to_lp_text());
    Ok(())
}

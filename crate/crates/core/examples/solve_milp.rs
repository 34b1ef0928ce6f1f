//! Solves a small 0-1 knapsack-style program with the built-in
//! branch-and-bound.

use fuzzy_minimax::milp::{solve_milp, LinearProgram, Relation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let values = [10.0, 13.0, 7.0, 8.0];
    let weights = [5.0, 7.0, 3.0, 4.0];

    let mut lp = LinearProgram::new();
    let items: Vec<usize> = (0..values.len()).map(|i| lp.add_var(format!("take{i}"), 0.0, 1.0)).collect();
    let spare = lp.add_var("spare", 0.0, 2.0);
    lp.add_row(
        "capacity",
        items.iter().zip(weights).map(|(&v, w)| (v, w)).chain([(spare, 1.0)]).collect(),
        Relation::Le,
        12.0,
    );
    // Maximize value, written as minimizing its negative.
    lp.set_objective(items.iter().zip(values).map(|(&v, c)| (v, -c)).collect());

    let sol = solve_milp(&lp, &items)?;
    println!("status {:?}, value {}, nodes {}", sol.status, -sol.objective, sol.node_count);
    for &i in &items {
        println!("  take{i} = {}", sol.point[i]);
    }
    Ok(())
}

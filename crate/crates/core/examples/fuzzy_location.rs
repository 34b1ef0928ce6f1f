//! Fuzzy facility location: efficient θ triples of the bundled example and
//! the DOT network of the first one.
//!
//! Pass a grid size as the first argument (default 3) to trade run time for
//! coverage.

use fuzzy_minimax::ccflp::{build_fuzzy_model, extract_network, CcflpInstance, Variant};
use fuzzy_minimax::milp::BranchAndBound;
use fuzzy_minimax::pareto::{epsilon_constraint_enumerate, THETA_TOL};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let steps: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(3);
    let instance = CcflpInstance::from_json(include_str!("../data/example1.json"))?;
    let fuzzy = build_fuzzy_model(&instance, Variant::Derived);
    let milp = fuzzy.reformulate()?;
    println!("{} columns, {} rows", milp.num_vars(), milp.rows().len());

    let set = epsilon_constraint_enumerate(&milp, (steps, steps), &BranchAndBound::default())?;
    for p in &set.points {
        println!("{}: theta ({:.2}, {:.2}, {:.2})", p.method, p.theta[0], p.theta[1], p.theta[2]);
    }
    if let Some(first) = set.points.first() {
        let net = extract_network(&fuzzy, &milp, &first.decision, THETA_TOL)?;
        print!("{}", net.to_dot(&first.method));
    }
    Ok(())
}

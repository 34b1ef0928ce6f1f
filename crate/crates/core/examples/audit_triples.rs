//! Compares reported θ triples and checks each one for attainability under
//! both capacity variants.

use fuzzy_minimax::ccflp::{build_fuzzy_model, CcflpInstance, Variant};
use fuzzy_minimax::fuzzy::Tfn;
use fuzzy_minimax::milp::BranchAndBound;
use fuzzy_minimax::pareto::audit_theta;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let triples = [
        Tfn::new(1399.70, 2629.27, 3463.01)?,
        Tfn::new(804.08, 2734.90, 3580.96)?,
        Tfn::new(1403.01, 2575.95, 3542.52)?,
    ];
    for (i, a) in triples.iter().enumerate() {
        for b in &triples[i + 1..] {
            println!("{a} vs {b}: {:?}", a.compare(b));
        }
    }

    let instance = CcflpInstance::from_json(include_str!("../data/example1.json"))?;
    let bb = BranchAndBound::default();
    for variant in [Variant::Derived, Variant::Literal] {
        let milp = build_fuzzy_model(&instance, variant).reformulate()?;
        for t in &triples {
            let audit = audit_theta(&milp, t.components(), 1e-2, &bb)?;
            println!("{variant} {t:.2}: feasible {}, min excess {:.4}", audit.feasible, audit.min_excess);
        }
    }
    Ok(())
}

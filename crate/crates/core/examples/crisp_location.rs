//! Crisp capacitated facility location on the bundled six-by-six example,
//! checked against enumeration of every open set.

use fuzzy_minimax::ccflp::{best_open_set_by_enumeration, build_crisp_model, CcflpInstance};
use fuzzy_minimax::fuzzy::Component;
use fuzzy_minimax::milp::solve_milp;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let instance = CcflpInstance::from_json(include_str!("../data/example1.json"))?;
    for selector in Component::ALL {
        let model = build_crisp_model(&instance, selector);
        let sol = solve_milp(&model.lp, &model.binaries)?;
        let net = model.network(&sol.point);
        let open: Vec<usize> = net.open.iter().map(|j| j + 1).collect();
        let (best, best_open) = best_open_set_by_enumeration(&instance, selector)?.expect("feasible");
        let best_open: Vec<usize> = best_open.iter().map(|j| j + 1).collect();
        println!(
            "{selector}: objective {:.4}, open {open:?} (enumeration {best:.4}, open {best_open:?})",
            sol.objective
        );
    }
    Ok(())
}

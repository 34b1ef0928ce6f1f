pub mod ccflp;
pub mod cli;
pub mod fuzzy;
pub mod milp;
pub mod model;
pub mod pareto;
pub mod reformulate;

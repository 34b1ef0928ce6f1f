//! Triangular fuzzy number arithmetic, ordering and the minimal upper bound.

use fuzzy_minimax::fuzzy::{theta_mub, Tfn};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = Tfn::new(-2.0, 1.0, 3.0)?;
    let b = Tfn::new(1.0, 2.0, 4.0)?;

    println!("a       = {a}");
    println!("b       = {b}");
    println!("a + b   = {}", a.add(&b));
    println!("-2 * a  = {}", a.scale(-2.0));
    println!("a * b   = {}", a.mul(&b)?);
    for alpha in [0.0, 0.5, 1.0] {
        let cut = a.alpha_level(alpha)?;
        println!("a at alpha {alpha}: [{}, {}]", cut.lower, cut.upper);
    }
    println!("a vs b  = {:?}", a.compare(&b));

    let set = [a, b, Tfn::new(0.0, 0.5, 5.0)?];
    println!("theta of {{a, b, (0, 0.5, 5)}} = {}", theta_mub(&set)?);
    Ok(())
}

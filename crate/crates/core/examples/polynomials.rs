//! Exact polynomial arithmetic and derivations over Q[x1, x2].

use rinehart::{parse_poly, Derivation, Poly};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = parse_poly("x1^2*x2 - 1/3*x2 + 4", 2)?;
    let g = parse_poly("x1 + x2^2", 2)?;
    println!("f      = {f}");
    println!("g      = {g}");
    println!("f * g  = {}", &f * &g);
    println!("f^2    = {}", f.pow(2));

    // The Euler vector field x1 d/dx1 + x2 d/dx2 scales each monomial by its degree.
    let euler = Derivation::new(2, vec![Poly::var(2, 0)?, Poly::var(2, 1)?])?;
    println!("E(f)   = {}", euler.apply(&f)?);

    // Leibniz rule, checked exactly.
    let lhs = euler.apply(&(&f * &g))?;
    let rhs = &(&euler.apply(&f)? * &g) + &(&f * &euler.apply(&g)?);
    println!("E(fg) = E(f) g + f E(g): {}", lhs == rhs);

    let rotation = Derivation::new(2, vec![Poly::var(2, 1)?, -&Poly::var(2, 0)?])?;
    let bracket = euler.commutator(&rotation)?;
    let parts: Vec<String> = bracket.components().iter().map(ToString::to_string).collect();
    println!("[E, R] = ({})", parts.join(", "));
    Ok(())
}

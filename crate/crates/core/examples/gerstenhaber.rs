//! The Gerstenhaber bracket on multivector fields and the generators that
//! produce it.

use rinehart::gerstenhaber::{generator_square, is_generator};
use rinehart::RightConnection;
use rinehart::{gerstenhaber_bracket, parse_poly, Blade, CheckConfig, Generator, LieRinehartAlgebra, Multivector};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Vector fields on the plane, with the coordinate frame d/dx1, d/dx2.
    let alg = LieRinehartAlgebra::coordinate(2);
    let (m, n) = (alg.nvars(), alg.rank());
    let u = Multivector::term(m, n, Blade::single(0), parse_poly("x2^2", 2)?);
    let v = Multivector::term(m, n, Blade::full(2), parse_poly("x1*x2", 2)?);
    println!("u = {u}");
    println!("v = {v}");
    println!("[u, v] = {}", gerstenhaber_bracket(&alg, &u, &v)?);

    // Every choice of r_i = D(e_i) gives a generator of the bracket.
    let config = CheckConfig::default().with_trials(8);
    let r = RightConnection::new(vec![parse_poly("x2", 2)?, parse_poly("0", 2)?]);
    for (label, d) in [
        ("divergence", Generator::new(RightConnection::zero(&alg))),
        ("twisted", Generator::new(r)),
    ] {
        let verdict = match is_generator(&alg, &d, &config) {
            None => "generates the bracket".to_string(),
            Some(w) => format!("fails: {w}"),
        };
        let square = generator_square(&alg, &d, &config);
        println!("{label:>10}: {verdict}; D^2 = 0 on samples: {}", square.is_exact);
        if let Some((u, sq)) = square.witness() {
            println!("{:>10}  D(D({u})) = {sq}", "");
        }
    }
    Ok(())
}

//! Connections on the top exterior power, their curvature, and the
//! covariant derivative of forms with values in it.

use rinehart::connections::{covariant_derivative, curvature_top, is_flat};
use rinehart::correspondences::{check_intertwining, generator_from_right, right_from_top};
use rinehart::{parse_poly, AltForm, Blade, CheckConfig, LieRinehartAlgebra, TopConnection};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let alg = LieRinehartAlgebra::coordinate(2);
    let config = CheckConfig::default().with_trials(8);

    for gamma in [["x2", "x1"], ["x2", "0"]] {
        let nabla = TopConnection::new(vec![parse_poly(gamma[0], 2)?, parse_poly(gamma[1], 2)?]);
        println!("gamma = {nabla}");
        println!("  curvature R_12 = {}", curvature_top(&alg, &nabla)?[0][1]);
        println!("  flat: {}", is_flat(&alg, &nabla)?);

        // d applied twice to a degree 0 form is the curvature acting on it.
        let f = AltForm::zero(2, 2, 0).with_value(Blade::EMPTY, parse_poly("x1 + 1", 2)?)?;
        let dd = covariant_derivative(&alg, &nabla, &covariant_derivative(&alg, &nabla, &f)?)?;
        println!("  d(d f) = {dd}");

        // The generator with the matching right connection intertwines with d.
        let d = generator_from_right(&right_from_top(&alg, &nabla)?);
        println!(
            "  r = {:?}",
            d.right_connection()
                .values()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
        );
        let ok = check_intertwining(&alg, &d, &nabla, &config)?.is_none();
        println!("  intertwining holds on samples: {ok}");
    }
    Ok(())
}

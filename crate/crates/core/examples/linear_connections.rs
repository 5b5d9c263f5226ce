//! Connections on L: torsion, the Koszul generator of a connection, and a
//! torsion-free connection realising a prescribed top connection.

use rinehart::connections::{induced_top_connection, is_torsion_free, phi_map};
use rinehart::correspondences::{koszul_generator, top_from_right, torsionfree_lift};
use rinehart::{parse_poly, LElement, LeftConnection, LieRinehartAlgebra, Poly, TopConnection};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Two-dimensional non-abelian Lie algebra, [e1, e2] = e1.
    let alg = LieRinehartAlgebra::abelian(0, 2)?.with_bracket(0, 1, LElement::basis(0, 2, 0))?;

    let half = LeftConnection::half_structure(&alg);
    println!("c/2 torsion free: {}", is_torsion_free(&alg, &half)?);
    let d = koszul_generator(&alg, &half)?;
    println!("Koszul generator r = {:?}", strings(d.right_connection().values()));
    println!("induced top connection {}", induced_top_connection(&alg, &half)?);
    println!(
        "agrees with the generator's: {}",
        top_from_right(&alg, d.right_connection())? == induced_top_connection(&alg, &half)?
    );

    let e1 = alg.basis_element(0);
    for (k, row) in phi_map(&alg, &half, &e1)?.matrix().iter().enumerate() {
        println!("Phi(e1) row {}: {:?}", k + 1, strings(row));
    }

    // Any top connection lifts to a torsion-free connection on L.
    let target = TopConnection::new(vec![parse_poly("2", 0)?, parse_poly("-1/2", 0)?]);
    let lift = torsionfree_lift(&alg, &target)?;
    println!("lift of {target}:");
    for (i, row) in lift.table().iter().enumerate() {
        for (j, col) in row.iter().enumerate() {
            println!("  nabla_e{} e{} = {:?}", i + 1, j + 1, strings(col));
        }
    }
    println!("torsion free: {}", is_torsion_free(&alg, &lift)?);
    println!("induces the target: {}", induced_top_connection(&alg, &lift)? == target);
    Ok(())
}

fn strings(ps: &[Poly]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

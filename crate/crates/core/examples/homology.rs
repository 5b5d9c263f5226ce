//! Betti numbers of (Lambda L, D) for Lie algebras over Q.

use rinehart::homology::euler_characteristic;
use rinehart::{cli, homology_dims, rinehart_complex};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["abelian-dim2", "nonabelian-dim2", "heisenberg-dim3", "sl2"] {
        let input = cli::load(name)?;
        let complex = rinehart_complex(&input.algebra, &input.generator())?;
        let betti = homology_dims(&complex)?;
        println!(
            "{name:<16} dims {:?}  betti {betti:?}  euler {}",
            complex.dims,
            euler_characteristic(&betti)
        );
    }
    // A curved generator does not square to zero, so there is no complex.
    let curved = cli::load("nonabelian-dim2-curved")?;
    match rinehart_complex(&curved.algebra, &curved.generator()) {
        Ok(_) => println!("unexpected complex"),
        Err(e) => println!("nonabelian-dim2-curved: {e}"),
    }
    Ok(())
}

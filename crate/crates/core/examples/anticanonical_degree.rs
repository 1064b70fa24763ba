// Exact anticanonical polytopes and degrees.

use torifan::catalog;
use torifan::polytope::{anticanonical_degree, anticanonical_polytope};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f2 = catalog::lookup("F2")?.fan;
    let p = anticanonical_polytope(&f2)?;
    println!("F2 polygon vertices: {:?}", p.vertex_strings());
    println!("F2 (-K)^2 = {}", anticanonical_degree(&f2)?);

    for name in ["X3_0", "X4_0", "X4_1", "X5_1", "P1xW7"] {
        let f = catalog::lookup(name)?.fan;
        let p = anticanonical_polytope(&f)?;
        println!(
            "{name}: {} vertices, {} facets, (-K)^3 = {}",
            p.vertices.len(),
            p.facets().len(),
            anticanonical_degree(&f)?
        );
    }

    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

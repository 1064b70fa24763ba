// Isomorphism search and canonical keys under a change of lattice basis.

use torifan::catalog;
use torifan::isomorphism::{canonical_key, find_isomorphism};
use torifan::{IntMatrix, UniMatrix};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let x = catalog::lookup("X4_1")?.fan;
    let flip = UniMatrix::new(IntMatrix::from_rows(&[vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, 1]]))?;
    let shear = UniMatrix::new(IntMatrix::from_rows(&[vec![1, 2, 0], vec![0, 1, 0], vec![1, 1, 1]]))?;
    let y = x.transform(&shear.compose(&flip));

    let iso = find_isomorphism(&x, &y).expect("re-based fans are isomorphic");
    assert!(iso.verify(&x, &y));
    println!("witness matrix:");
    let m = iso.matrix.matrix();
    for i in 0..m.rows() {
        println!("  {:?}", m.row(i));
    }
    println!("ray permutation: {:?}", iso.ray_permutation);
    assert_eq!(canonical_key(&x), canonical_key(&y));
    println!("key: {}", String::from_utf8(canonical_key(&x))?);

    let f1 = catalog::lookup("F1")?.fan;
    let f2 = catalog::lookup("F2")?.fan;
    println!("F1 ~ F2: {}", find_isomorphism(&f1, &f2).is_some());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

// Weakened Fano 3-folds among surface bundles over P1, then the same
// search filtered by the Fano predicate instead.

use torifan::classify::{enumerate_bundles, enumerate_weakened_threefolds, DEFAULT_TWIST_BOUND};
use torifan::isomorphism::canonical_key;
use torifan::catalog;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let report = enumerate_weakened_threefolds(DEFAULT_TWIST_BOUND);
    print!("{}", report.table());
    assert_eq!(report.count, 15);
    assert!(report.is_bijective());

    let fano = enumerate_bundles(DEFAULT_TWIST_BOUND, |v| v.is_fano);
    let p1_cubed = String::from_utf8(canonical_key(&catalog::p1_cubed()))?;
    println!("Fano bundles: {} classes, P1xP1xP1 among them: {}", fano.len(), fano.contains_key(&p1_cubed));
    assert!(report.keys().iter().all(|k| !fano.contains_key(k)));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

// The weakened Fano predicate on a few 3-folds: two weakened ones, a Fano
// one, and a weak Fano one with a divisor contracted to a point.

use torifan::catalog;
use torifan::contraction::{is_weakened_fano, zero_two_witness, ContractionKind};
use torifan::Fan;

fn show(name: &str, f: &Fan) -> Result<(), Box<dyn std::error::Error>> {
    let v = is_weakened_fano(f)?;
    println!(
        "{name}: weak Fano {}, Fano {}, weakened {}",
        v.is_weak_fano, v.is_fano, v.is_weakened
    );
    for c in &v.crepant_contractions {
        println!("  {}  {:?}", c.relation, c.kind);
        if let ContractionKind::ZeroTwo { .. } = c.kind {
            let w = zero_two_witness(f, &c.relation).expect("zero-two relations have a witness");
            assert!(w.verify(f));
            println!("  normal form: y- = (0, {}, -1)", w.a);
        }
    }
    Ok(())
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    show("P1xF2", &catalog::lookup("P1xF2")?.fan)?;
    show("X4_1", &catalog::lookup("X4_1")?.fan)?;
    show("P1xP1xP1", &catalog::p1_cubed())?;
    show("P(O+O(3)) over P2", &catalog::p2_bundle_o3())?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

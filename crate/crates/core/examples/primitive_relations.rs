// Primitive collections and relations of F2 and of a 3-fold from the
// catalog, with degrees and Mori cone extremality.

use torifan::catalog;
use torifan::primitive::{extremal_flags, primitive_collections, relation_lattice};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["F2", "X4_1"] {
        let f = catalog::lookup(name)?.fan;
        let rels = primitive_collections(&f)?;
        let flags = extremal_flags(&rels);
        println!("{name}: {} rays, Picard number {}", f.num_rays(), f.picard_number());
        for (r, extremal) in rels.iter().zip(flags) {
            assert!(r.holds_in(&f));
            assert_eq!(r.degree, r.cls.iter().sum::<i64>());
            println!("  {r}{}", if extremal { "  [extremal]" } else { "" });
        }
        let lattice = relation_lattice(&f);
        println!("  relation lattice rank {}", lattice.rank);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

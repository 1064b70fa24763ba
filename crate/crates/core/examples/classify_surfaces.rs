// Blow-up closure of P2, P1xP1 and F2 inside the weak Fano surfaces.

use torifan::classify::enumerate_weak_del_pezzo;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let report = enumerate_weak_del_pezzo();
    print!("{}", report.table());
    assert_eq!(report.count, 16);
    assert!(report.is_bijective());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

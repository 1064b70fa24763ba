// Every named fan with its expected invariants, recomputed, plus a JSON
// round trip.

use torifan::catalog;
use torifan::polytope::anticanonical_degree;
use torifan::primitive::is_fano;
use torifan::Fan;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for n in catalog::all() {
        let e = &n.expected;
        let degree = anticanonical_degree(&n.fan)?;
        assert_eq!(Some(degree), e.anticanonical_degree);
        assert_eq!(is_fano(&n.fan)?, e.is_fano);
        let json = n.fan.to_json();
        assert_eq!(Fan::from_json(&json)?.to_json(), json);
        println!(
            "{:<9} d={} rays={:>2} rho={} (-K)^d={:>2} fano={:<5} fiber={}",
            n.name,
            n.fan.dim(),
            n.fan.num_rays(),
            n.fan.picard_number(),
            degree,
            e.is_fano,
            e.bundle_fiber.unwrap_or("-")
        );
    }
    println!("{}", catalog::lookup("X3_0")?.fan.to_json());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

// Validating fans read from JSON: a good one, then the same fan with a
// maximal cone removed.

use torifan::Fan;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p2 = Fan::from_json(r#"{"dim":2,"rays":[[1,0],[0,1],[-1,-1]],"max_cones":[[0,1],[1,2],[0,2]]}"#)?;
    let report = p2.validate();
    println!("P2: {}", report.summary());
    assert!(report.is_valid());

    let holed = Fan::from_json(r#"{"dim":2,"rays":[[1,0],[0,1],[-1,-1]],"max_cones":[[0,1],[1,2]]}"#)?;
    let report = holed.validate();
    println!("P2 without a cone: {}", report.summary());
    for o in &report.offending {
        println!("  {:?} cones {:?} rays {:?}", o.reason, o.cones, o.rays);
    }
    assert!(!report.is_complete);

    // (2,0) is not primitive
    let bad = Fan::from_json(r#"{"dim":2,"rays":[[2,0],[0,1],[-1,-1]],"max_cones":[[0,1],[1,2],[0,2]]}"#)?;
    println!("non-primitive ray: {}", bad.validate().summary());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

//! Brackets, stabilization and closed forms for a few catalogue types.

use fatpoint::geometry::{standard_k_config, KConfigType};
use fatpoint::waldschmidt::{verify_stabilization, WaldschmidtReport};

pub fn run_example() -> fatpoint::Result<()> {
    let t: KConfigType = "2,3,4".parse()?;
    let pts = standard_k_config(&t);
    let report = WaldschmidtReport::compute(&pts, Some(&t), 3, Some((6, 17, 1)));
    println!("{}", serde_json::to_string_pretty(&report.to_json())?);
    assert!(report.consistent());

    // 6X needs degree 17 and 12X degree 34
    let s = verify_stabilization(&pts, 6, 17, 2);
    println!("(2,3,4) stabilizes at 17/6 for m <= 2: {}", s.passed());

    // a wrong guess fails at m = 1
    let wrong = verify_stabilization(&pts, 6, 16, 1);
    println!("(2,3,4) at 16/6: {}", wrong.passed());
    Ok(())
}

fn main() -> fatpoint::Result<()> {
    run_example()
}

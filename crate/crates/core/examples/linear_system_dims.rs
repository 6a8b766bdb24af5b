//! Dimensions of `[I_Z]_d` and explicit bases.

use fatpoint::geometry::{FatPointScheme, ProjPoint};
use fatpoint::linsys::{dim_linear_system, system_basis, LinearSystemQuery};

pub fn run_example() -> fatpoint::Result<()> {
    // three collinear double points: the line appears twice in every conic
    // through them, so the expected count undercounts
    let pts = [
        ProjPoint::from_ints(1, 0, 0),
        ProjPoint::from_ints(1, 1, 0),
        ProjPoint::from_ints(1, 2, 0),
    ];
    let z = FatPointScheme::uniform(&pts, 2)?;
    for d in 1..=4 {
        let q = LinearSystemQuery::new(z.clone(), d);
        let r = dim_linear_system(&q);
        println!(
            "{z}, degree {d}: dim {}, expected {}, superabundance {} ({:?})",
            r.dimension, r.expected_dimension, r.superabundance, r.method
        );
    }
    for c in system_basis(&LinearSystemQuery::new(z, 2)) {
        println!("  conic: {c}");
    }

    let json = r#"{"points": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"], ["1", "1", "1"], ["1", "2", "1/2"]],
                   "multiplicities": [1, 1, 1, 1, 1]}"#;
    let five = FatPointScheme::from_json_str(json)?;
    let conics = system_basis(&LinearSystemQuery::new(five, 2));
    println!("the conic through five points: {}", conics[0]);
    Ok(())
}

fn main() -> fatpoint::Result<()> {
    run_example()
}

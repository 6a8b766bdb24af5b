//! Witness curves for catalogue rows, audited point by point.

use fatpoint::geometry::{build_recipe, standard_k_config, KConfigType};

pub fn run_example() -> fatpoint::Result<()> {
    for input in ["1,3", "1,2,6", "1,4,5", "1,5,6", "1,3,5", "2,3,4", "3,4,5"] {
        let t: KConfigType = input.parse()?;
        let recipe = build_recipe(&t)?;
        let audit = recipe.audit(&standard_k_config(&t));
        print!("{t}: {recipe}");
        println!(
            "  audit {}: multiplicities {:?}",
            if audit.passed() { "passed" } else { "FAILED" },
            audit.per_point
        );
    }
    Ok(())
}

fn main() -> fatpoint::Result<()> {
    run_example()
}

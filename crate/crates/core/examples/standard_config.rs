//! Standard k-configurations: points `[1 : j : s - i]` on the lines
//! `x2 = (s - i) x0`.

use fatpoint::geometry::{standard_parts, validate_k_config, KConfigType};

pub fn run_example() -> fatpoint::Result<()> {
    for input in ["1,2,6", "2,3,4", "(1, 5, 6)"] {
        let t: KConfigType = input.parse()?;
        let parts = standard_parts(&t);
        println!(
            "type {t}: {} points, valid {}",
            t.point_count(),
            validate_k_config(&t, &parts)
        );
        for part in &parts {
            let pts: Vec<String> = part.points.iter().map(|p| p.to_string()).collect();
            println!("  {}: {}", part.line, pts.join(" "));
        }
    }
    Ok(())
}

fn main() -> fatpoint::Result<()> {
    run_example()
}

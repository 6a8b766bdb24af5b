//! A seeded generic configuration next to the standard one of the same
//! type. Both satisfy the k-configuration axioms; only the standard one has
//! catalogue values, except when `d1 >= s`, where every configuration has
//! Waldschmidt constant `s`.

use fatpoint::geometry::{generic_parts, standard_parts, validate_k_config, KConfigType, Part};
use fatpoint::waldschmidt::{bracket, closed_form};

fn show(label: &str, t: &KConfigType, parts: &[Part]) {
    println!("{label} (valid {}):", validate_k_config(t, parts));
    for part in parts {
        let pts: Vec<String> = part.points.iter().map(|p| p.to_string()).collect();
        println!("  {:<24} {}", part.line.to_string(), pts.join(" "));
    }
}

pub fn run_example() -> fatpoint::Result<()> {
    let t: KConfigType = "3,4,5".parse()?;
    let std_parts = standard_parts(&t);
    let gen_parts = generic_parts(&t, 2024)?;
    show("standard", &t, &std_parts);
    show("generic, seed 2024", &t, &gen_parts);

    println!("closed form: {}", closed_form(&t));
    for (label, parts) in [("standard", &std_parts), ("generic", &gen_parts)] {
        let pts: Vec<_> = parts.iter().flat_map(|p| p.points.clone()).collect();
        let b = bracket(&pts, &[1, 2]);
        println!("{label}: {} <= w <= {}", b.lower, b.upper.expect("found"));
    }
    Ok(())
}

fn main() -> fatpoint::Result<()> {
    run_example()
}

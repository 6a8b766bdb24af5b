//! Proving `[I_{8X}]_21 = 0` for the standard (1,5,6) configuration by
//! peeling off forced components, then replaying the proof.

use fatpoint::bezout::{
    certificate_from_json, certificate_to_json, emptiness_certificate, verify_certificate,
};
use fatpoint::geometry::{
    build_recipe, standard_k_config, CurveComponent, FatPointScheme, KConfigType,
};

pub fn run_example() -> fatpoint::Result<()> {
    let t: KConfigType = "1,5,6".parse()?;
    let z = FatPointScheme::uniform(&standard_k_config(&t), 8)?;
    // the witness curve's components are good first guesses
    let hints: Vec<CurveComponent> = build_recipe(&t)?
        .components
        .into_iter()
        .map(|c| CurveComponent {
            multiplicity: 1,
            ..c
        })
        .collect();
    let cert = match emptiness_certificate(&z, 21, &hints) {
        Ok(c) => c,
        Err(inc) => panic!(
            "no certificate: residual dimension {:?}",
            inc.residual_dimension
        ),
    };
    for (i, s) in cert.steps.iter().enumerate() {
        println!(
            "{:>2}. remove {} x{}",
            i + 1,
            s.component,
            s.forced_multiplicity
        );
    }
    println!("terminal: {}", cert.terminal);
    println!("replay: {}", verify_certificate(&cert));

    let json = certificate_to_json(&cert);
    let mut tampered = json.clone();
    tampered["initial"]["degree"] = 22.into();
    let bad = certificate_from_json(&tampered)?;
    println!("tampered replay: {}", verify_certificate(&bad));
    Ok(())
}

fn main() -> fatpoint::Result<()> {
    run_example()
}

//! Initial degrees of symbolic powers and the ratios `alpha / t`.

use fatpoint::geometry::{standard_k_config, KConfigType};
use fatpoint::waldschmidt::wc_sequence;

pub fn run_example() -> fatpoint::Result<()> {
    let t: KConfigType = "1,2,6".parse()?;
    let pts = standard_k_config(&t);
    println!("standard {t}");
    for e in wc_sequence(&pts, 6, 40) {
        let a = e.alpha.value().expect("below the cap");
        println!(
            "  alpha(I^({})) = {a:>2}   ratio {}",
            e.t,
            e.ratio.expect("found")
        );
    }
    Ok(())
}

fn main() -> fatpoint::Result<()> {
    run_example()
}

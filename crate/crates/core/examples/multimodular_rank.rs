//! Exact rank three ways: Bareiss, several primes, and a lifted kernel.

use fatpoint::exactalg::{certified_kernel, rank, rank_multimodular, ExactMatrix};
use fatpoint::geometry::{standard_k_config, FatPointScheme, KConfigType};
use fatpoint::linsys::interpolation_matrix;

pub fn run_example() -> fatpoint::Result<()> {
    let t: KConfigType = "2,3,4".parse()?;
    let z = FatPointScheme::uniform(&standard_k_config(&t), 2)?;
    for d in [4, 5, 6] {
        let (rows, cols, data) = interpolation_matrix(&z, d);
        let m = ExactMatrix::from_integers(rows, cols, data)?;
        let exact = rank(&m);
        let modular = rank_multimodular(&m, 3)?;
        let k = certified_kernel(&m, 7)?;
        println!(
            "degree {d}: {rows}x{cols}, Bareiss rank {exact}, modular rank {modular}, lifted kernel of {} vectors from {} primes",
            k.basis.len(),
            k.primes_used
        );
    }

    // singular over Q and modulo every prime tried
    let m = ExactMatrix::from_i64(3, 3, &[1, 2, 3, 4, 5, 6, 7, 8, 9])?;
    println!(
        "[[1,2,3],[4,5,6],[7,8,9]]: rank {}, modular {}",
        rank(&m),
        rank_multimodular(&m, 2)?
    );
    Ok(())
}

fn main() -> fatpoint::Result<()> {
    run_example()
}

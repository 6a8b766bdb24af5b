//! A small reproduction of the catalogue: every type with `b <= 3`,
//! `c <= 7`, stabilization at `m = 1`.

use fatpoint::configs::reproduce_table;

pub fn run_example() -> fatpoint::Result<()> {
    let report = reproduce_table(3, 7, 1);
    print!("{}", report.to_markdown());
    println!("rows covered: {}", report.rows_covered().len());
    assert_eq!(report.failures(), 0);
    Ok(())
}

fn main() -> fatpoint::Result<()> {
    run_example()
}

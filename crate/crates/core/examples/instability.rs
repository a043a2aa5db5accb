//! Forward recurrence versus the stable build on the same kernel.

use voltconv::cli::instability_reports;

fn main() -> voltconv::Result<()> {
    let (naive, stable) = instability_reports(10, 50, 1)?;
    println!("naive  max error {:.2e}", naive.max_abs);
    println!("stable max error {:.2e}", stable.max_abs);
    // error grows along the first row
    for n in [10, 20, 30, 40, 50] {
        println!("naive error at (0, {n}): {:.2e}", naive.max_where(|k, c| k == 0 && c == n));
    }
    Ok(())
}

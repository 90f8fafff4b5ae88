//! Closed-form distance bounds, and the square vs disjoint-repair
//! comparison table written as CSV.
//!
//! `cargo run --example bounds -- 5 fig.csv` writes the r=5 table.

use locrep::bounds::{
    bound_general, bound_locality_r, bound_lrc, bound_rdc, bound_square, compare_table, table_csv,
};

fn main() -> locrep::Result<()> {
    let mut args = std::env::args().skip(1);
    let r: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(5);
    let out = args.next();

    let (n, m) = ((r + 1) * (r + 1), r + 4);
    println!("n={n}, M={m}, r={r}");
    for report in [
        bound_general(n, m, 1, 2)?,
        bound_locality_r(n, m, 1, r)?,
        bound_lrc(n, m, 1, r, 3)?,
        bound_rdc(n, m, r, 3)?,
        bound_square(n, m, r)?,
    ] {
        println!("  {:<10} d <= {}", report.theorem.name(), report.value);
    }

    let csv = table_csv(&compare_table(r)?);
    match out {
        Some(path) => std::fs::write(&path, csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}

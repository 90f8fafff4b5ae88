//! Build a square code, check its grid relations and measure its distance.
//!
//! `cargo run --release --example square_code -- 3 6`

use locrep::square::{GridIndex, SquareCode};

fn main() -> locrep::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<usize>().ok());
    let r = args.next().flatten().unwrap_or(2);
    let m = args.next().flatten().unwrap_or(r + 1);

    let sc = SquareCode::build(r, m, None)?;
    let f = sc.code().field();
    println!("square code r={r}: n={}, M={m}, over GF(2^{})", sc.len(), f.degree());
    println!("grid relations hold: {}", sc.verify_grid_relations());

    println!("inner betas:");
    for i in 1..=r {
        let row: Vec<String> = (1..=r).map(|j| f.to_hex(sc.beta(GridIndex::new(i, j)))).collect();
        println!("  {}", row.join(" "));
    }

    let report = sc.code().min_distance_witness(locrep::code::DEFAULT_SEARCH_CAP)?;
    println!(
        "d = {} (designed {}), deficient set {:?}",
        report.distance,
        sc.designed_distance()?,
        report.deficient_set.labels()
    );
    Ok(())
}

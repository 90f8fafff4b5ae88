//! Erase symbols of a square codeword, plan a local repair and run it.
//!
//! `cargo run --example repair -- 1,2,5`, labels are 1-based.

use locrep::coords::CoordSet;
use locrep::io::{codeword_to_json, plan_to_json};
use locrep::repair::{execute_repair, plan_repair, ErasurePattern};
use locrep::square::SquareCode;
use locrep::FieldElement;

fn main() -> locrep::Result<()> {
    let labels: Vec<usize> = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "1,2".into())
        .split(',')
        .map(|s| s.trim().parse().unwrap_or(0))
        .collect();

    let sc = SquareCode::build(2, 4, None)?;
    let code = sc.code();
    let f = code.field();
    let msg: Vec<FieldElement> = (1..=4).map(|k| f.monomial(k)).collect();
    let word = code.encode(&msg)?;

    let failed = CoordSet::from_labels(&labels, code.len())?;
    let erased: Vec<Option<FieldElement>> = word
        .iter()
        .enumerate()
        .map(|(i, &s)| (!failed.contains(i)).then_some(s))
        .collect();
    println!("received: {}", codeword_to_json(f, &erased));

    let plan = match plan_repair(code, &ErasurePattern::new(failed, code.len())?, 2) {
        Ok(plan) => plan,
        Err(e) => {
            eprintln!("{e}");
            return Ok(());
        }
    };
    print!("plan: {}", plan_to_json(&plan));
    let repaired = execute_repair(&erased, &plan)?;
    let shown: Vec<_> = repaired.iter().copied().map(Some).collect();
    println!("repaired: {}", codeword_to_json(f, &shown));
    println!("exact: {}", repaired == word);
    Ok(())
}

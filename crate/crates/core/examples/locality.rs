//! Locality with repair tolerance, checked exhaustively.

use locrep::code::{repetition_code, single_parity_code};
use locrep::field::FieldSpec;
use locrep::regset::{minimal_regsets, verify_locality};
use locrep::repair::repair_tolerance;
use locrep::square::SquareCode;

fn main() -> locrep::Result<()> {
    let sc = SquareCode::build(3, 6, None)?;
    let code = sc.code();
    // coordinate (1,1): its row and column sets, plus anything else of size <= 4
    for set in minimal_regsets(code, 0, 4) {
        println!("regenerates 1: {:?}", set.members().labels());
    }
    println!("square r=3: locality 3 with δ=3: {}", verify_locality(code, 3, 3)?);
    println!("square r=3: locality 3 with δ=4: {}", verify_locality(code, 3, 4)?);
    println!("square r=3: repair tolerance {}", repair_tolerance(code, 3)?);

    let f = FieldSpec::with_degree(4)?;
    println!("repetition n=3: tolerance {}", repair_tolerance(&repetition_code(f.clone(), 3)?, 1)?);
    println!("single parity M=3: tolerance {}", repair_tolerance(&single_parity_code(f, 3)?, 3)?);
    Ok(())
}

//! Φ(x), ρ and minimizing witness sequences for a square code and a
//! repetition code.

use locrep::code::repetition_code;
use locrep::field::FieldSpec;
use locrep::regset::{PhiProfile, PhiSearch};
use locrep::square::SquareCode;

fn show(name: &str, profile: &PhiProfile) {
    println!("{name}: Φ = {:?}, ρ = {}, size cap {}", profile.phi, profile.rho, profile.size_cap);
    for (x, seq) in profile.witnesses.iter().enumerate().skip(1) {
        let sets: Vec<String> = seq
            .items()
            .iter()
            .map(|r| format!("{}:{:?}", r.target() + 1, r.members().labels()))
            .collect();
        println!("  x={x}: {}", sets.join(" then "));
    }
}

fn main() -> locrep::Result<()> {
    for m in [3, 4] {
        let sc = SquareCode::build(2, m, None)?;
        show(&format!("square r=2 M={m}"), &PhiSearch::new(sc.code()).profile(4)?);
    }
    let rep = repetition_code(FieldSpec::with_degree(4)?, 3)?;
    show("repetition n=3", &PhiSearch::new(&rep).profile(3)?);
    Ok(())
}

//! GF(2^m) arithmetic in the polynomial basis.
//!
//! Run with `cargo run --example field_arithmetic -- 9`.

use locrep::field::{is_irreducible, FieldElement, FieldSpec};

fn main() -> locrep::Result<()> {
    let m: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let f = FieldSpec::with_degree(m)?;
    println!("GF(2^{m}) modulo {:#x} (irreducible: {})", f.modulus(), is_irreducible(f.modulus()));

    let z = f.monomial(1);
    let a = f.add(f.monomial(m - 1), FieldElement::ONE);
    println!("z = {}, a = z^{} + 1 = {}", f.to_hex(z), m - 1, f.to_hex(a));
    println!("a * z     = {}", f.to_hex(f.mul(a, z)));
    println!("a^-1      = {}", f.to_hex(f.inv(a)?));
    println!("a^(2^m)   = {} (Frobenius fixes every element)", f.to_hex(f.frobenius(a, m)));

    let powers: Vec<_> = (0..m).map(|k| f.monomial(k)).collect();
    println!("1, z, ..., z^{} independent over GF(2): {}", m - 1, f.linearly_independent(&powers));
    Ok(())
}

//! Arithmetic in binary extension fields GF(2^m).
//!
//! Elements use the polynomial basis: bit `k` of the packed word is the
//! coefficient of `z^k`. The field is defined by a monic irreducible
//! modulus of degree `m`, stored with its leading bit. Degrees up to 63
//! are supported, so both elements and moduli fit in a `u64`.
//!
//! Small fields (m ≤ 16) get log/exp tables built from a primitive
//! element; larger fields multiply by shift-and-add with reduction.

use std::fmt;
use std::sync::Arc;

use crate::error::{domain, usage, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 63;

const TABLE_DEGREE_LIMIT: u32 = 16;

/// An element of GF(2^m), packed as polynomial-basis coefficients.
///
/// An element does not carry its field; all arithmetic goes through the
/// owning [`FieldSpec`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Raw coefficient bits. Callers outside a field context should prefer
    /// [`FieldSpec::element`], which range-checks.
    pub const fn from_bits_unchecked(bits: u64) -> Self {
        FieldElement(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..64).rev() {
            if self.0 >> k & 1 == 1 {
                if !first {
                    write!(f, "+")?;
                }
                first = false;
                match k {
                    0 => write!(f, "1")?,
                    1 => write!(f, "z")?,
                    _ => write!(f, "z^{k}")?,
                }
            }
        }
        Ok(())
    }
}

/// Binary field operation selector for [`FieldSpec::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    /// Inverse of the first operand; the second is ignored.
    Inv,
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Defining data of GF(2^m): the degree and the reduction modulus.
#[derive(Clone)]
pub struct FieldSpec {
    degree: u32,
    modulus: u64,
    tables: Option<Arc<Tables>>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("degree", &self.degree)
            .field("modulus", &format_args!("{:#x}", self.modulus))
            .finish()
    }
}

impl FieldSpec {
    /// Builds GF(2^m) from an explicit modulus (bit `m` must be set).
    ///
    /// The modulus is rejected unless it is monic of degree exactly `m` and
    /// irreducible over GF(2).
    pub fn new(degree: u32, modulus: u64) -> Result<Self> {
        if degree == 0 || degree > MAX_DEGREE {
            return domain(format!("field degree must be in 1..={MAX_DEGREE}, got {degree}"));
        }
        if poly_degree(modulus) != Some(degree) {
            return domain(format!(
                "modulus {modulus:#x} is not monic of degree {degree}"
            ));
        }
        if !is_irreducible(modulus) {
            return domain(format!("modulus {modulus:#x} is reducible over GF(2)"));
        }
        Ok(Self::build(degree, modulus))
    }

    /// GF(2^m) with the smallest irreducible monic modulus of degree `m`,
    /// ordering polynomials by their packed integer value.
    pub fn with_degree(degree: u32) -> Result<Self> {
        if degree == 0 || degree > MAX_DEGREE {
            return domain(format!("field degree must be in 1..={MAX_DEGREE}, got {degree}"));
        }
        let lo = 1u64 << degree;
        let modulus = (lo..=lo | (lo - 1))
            .find(|&p| is_irreducible(p))
            .expect("an irreducible polynomial exists in every degree");
        Ok(Self::build(degree, modulus))
    }

    fn build(degree: u32, modulus: u64) -> Self {
        let mut spec = FieldSpec {
            degree,
            modulus,
            tables: None,
        };
        if degree <= TABLE_DEGREE_LIMIT {
            spec.tables = Some(Arc::new(spec.build_tables()));
        }
        spec
    }

    fn build_tables(&self) -> Tables {
        let order = (1usize << self.degree) - 1;
        for g in 1u64.. {
            let mut exp = Vec::with_capacity(2 * order);
            let mut x = 1u64;
            let mut primitive = true;
            for k in 0..order {
                if k > 0 && x == 1 {
                    primitive = false;
                    break;
                }
                exp.push(x as u32);
                x = self.mul_slow(x, g);
            }
            if !primitive || x != 1 {
                continue;
            }
            let mut log = vec![0u32; order + 1];
            for (k, &v) in exp.iter().enumerate() {
                log[v as usize] = k as u32;
            }
            let head: Vec<u32> = exp.clone();
            exp.extend(head);
            return Tables { exp, log };
        }
        unreachable!("GF(2^m)* is cyclic")
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        poly_mulmod(a, b, self.modulus, self.degree)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Modulus with its leading coefficient, bit `m`, included.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Number of field elements, 2^m.
    pub fn order(&self) -> u128 {
        1u128 << self.degree
    }

    fn mask(&self) -> u64 {
        (1u64 << self.degree) - 1
    }

    /// Wraps raw coefficient bits, checking they fit in `m` bits.
    pub fn element(&self, bits: u64) -> Result<FieldElement> {
        if bits & !self.mask() != 0 {
            return usage(format!(
                "value {bits:#x} does not fit in GF(2^{})",
                self.degree
            ));
        }
        Ok(FieldElement(bits))
    }

    /// `z^k` reduced modulo the field polynomial.
    pub fn monomial(&self, k: u32) -> FieldElement {
        let mut acc = FieldElement::ONE;
        let z = FieldElement(poly_mod(2, self.modulus));
        for _ in 0..k {
            acc = self.mul(acc, z);
        }
        acc
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.0 & !self.mask() == 0
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(a.0 ^ b.0)
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let idx = t.log[a.0 as usize] + t.log[b.0 as usize];
                FieldElement(t.exp[idx as usize] as u64)
            }
            None => FieldElement(self.mul_slow(a.0, b.0)),
        }
    }

    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return domain("inversion of zero");
        }
        if let Some(t) = &self.tables {
            let order = (1u32 << self.degree) - 1;
            let l = t.log[a.0 as usize];
            return Ok(FieldElement(t.exp[((order - l) % order) as usize] as u64));
        }
        // a^(2^m - 2) = a^2 * a^4 * ... * a^(2^(m-1))
        let mut acc = FieldElement::ONE;
        let mut p = a;
        for _ in 1..self.degree {
            p = self.square(p);
            acc = self.mul(acc, p);
        }
        Ok(acc)
    }

    /// `a^e` by square-and-multiply.
    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// The `k`-th Frobenius power `a^(2^k)`.
    pub fn frobenius(&self, a: FieldElement, k: u32) -> FieldElement {
        let mut x = a;
        for _ in 0..k % self.degree {
            x = self.square(x);
        }
        x
    }

    /// Single dispatch over add, mul and inverse-of-`a`.
    pub fn arith(&self, a: FieldElement, b: FieldElement, op: FieldOp) -> Result<FieldElement> {
        if !self.contains(a) || !self.contains(b) {
            return usage("operand outside the field");
        }
        match op {
            FieldOp::Add => Ok(self.add(a, b)),
            FieldOp::Mul => Ok(self.mul(a, b)),
            FieldOp::Inv => self.inv(a),
        }
    }

    /// Whether the given elements are linearly independent over GF(2).
    ///
    /// More than `m` elements can never be independent, so that case
    /// returns `false` without elimination.
    pub fn linearly_independent(&self, elems: &[FieldElement]) -> bool {
        if elems.len() > self.degree as usize {
            return false;
        }
        gf2_rank(elems.iter().map(|e| e.0)) == elems.len()
    }

    /// Number of bytes in the hex encoding of an element.
    pub fn element_bytes(&self) -> usize {
        (self.degree as usize).div_ceil(8)
    }

    /// Little-endian hex encoding of an element (two digits per byte).
    pub fn to_hex(&self, a: FieldElement) -> String {
        encode_hex_le(a.0, self.element_bytes())
    }

    pub fn from_hex(&self, s: &str) -> Result<FieldElement> {
        self.element(decode_hex_le(s)?)
    }
}

/// Rank over GF(2) of a collection of packed bit-vectors.
pub fn gf2_rank(rows: impl IntoIterator<Item = u64>) -> usize {
    // basis[b] holds a vector whose highest set bit is b
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for mut v in rows {
        while v != 0 {
            let top = 63 - v.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = v;
                rank += 1;
                break;
            }
            v ^= basis[top];
        }
    }
    rank
}

pub(crate) fn encode_hex_le(mut value: u64, bytes: usize) -> String {
    let mut s = String::with_capacity(2 * bytes);
    for _ in 0..bytes {
        s.push_str(&format!("{:02x}", value & 0xff));
        value >>= 8;
    }
    s
}

pub(crate) fn decode_hex_le(s: &str) -> Result<u64> {
    if s.is_empty() || !s.len().is_multiple_of(2) || s.len() > 16 {
        return usage(format!("bad hex symbol {s:?}: need 1..=8 little-endian bytes"));
    }
    let mut value = 0u64;
    for (i, chunk) in s.as_bytes().chunks(2).enumerate() {
        let byte = std::str::from_utf8(chunk)
            .ok()
            .and_then(|c| u8::from_str_radix(c, 16).ok())
            .ok_or_else(|| crate::Error::Usage(format!("bad hex symbol {s:?}")))?;
        value |= (byte as u64) << (8 * i);
    }
    Ok(value)
}

fn poly_degree(p: u64) -> Option<u32> {
    if p == 0 {
        None
    } else {
        Some(63 - p.leading_zeros())
    }
}

/// Remainder of `a` divided by `b` over GF(2). `b` must be nonzero.
pub(crate) fn poly_mod(mut a: u64, b: u64) -> u64 {
    let db = poly_degree(b).expect("nonzero divisor");
    while let Some(da) = poly_degree(a) {
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

/// `a * b mod modulus` where `a, b` are already reduced and the modulus
/// has degree `degree`. Works for any modulus, irreducible or not.
fn poly_mulmod(mut a: u64, mut b: u64, modulus: u64, degree: u32) -> u64 {
    let top = 1u64 << (degree - 1);
    let mut acc = 0u64;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        let carry = a & top != 0;
        a <<= 1;
        if carry {
            a ^= modulus;
        }
    }
    acc
}

fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = poly_mod(a, b);
        a = b;
        b = r;
    }
    a
}

/// Irreducibility over GF(2) of a polynomial of degree ≥ 1.
///
/// Degrees up to 32 use trial division by every polynomial of degree at
/// most half the input's. Larger degrees use Rabin's test, since trial
/// division there needs up to 2^32 divisions.
pub fn is_irreducible(p: u64) -> bool {
    match poly_degree(p) {
        None | Some(0) => false,
        Some(d) if d <= 32 => is_irreducible_trial(p),
        Some(_) => is_irreducible_rabin(p),
    }
}

pub(crate) fn is_irreducible_trial(p: u64) -> bool {
    let Some(d) = poly_degree(p) else {
        return false;
    };
    if d == 0 {
        return false;
    }
    for k in 1..=d / 2 {
        for q in (1u64 << k)..(1u64 << (k + 1)) {
            if poly_mod(p, q) == 0 {
                return false;
            }
        }
    }
    true
}

pub(crate) fn is_irreducible_rabin(p: u64) -> bool {
    let Some(d) = poly_degree(p) else {
        return false;
    };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let x = 2u64;
    // x^(2^k) mod p
    let frob = |k: u32| {
        let mut v = x;
        for _ in 0..k {
            v = poly_mulmod(v, v, p, d);
        }
        v
    };
    if frob(d) != x {
        return false;
    }
    prime_factors(d).into_iter().all(|q| {
        let h = frob(d / q) ^ x;
        poly_gcd(p, h) == 1
    })
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            out.push(f);
            while n.is_multiple_of(f) {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf16() -> FieldSpec {
        FieldSpec::new(4, 0b10011).unwrap()
    }

    #[test]
    fn default_modulus_degree_four() {
        assert_eq!(FieldSpec::with_degree(4).unwrap().modulus(), 0b10011);
        assert_eq!(FieldSpec::with_degree(2).unwrap().modulus(), 0b111);
        assert_eq!(FieldSpec::with_degree(1).unwrap().modulus(), 0b10);
    }

    #[test]
    fn z_cubed_times_z() {
        let f = gf16();
        let z = f.element(0b10).unwrap();
        let z3 = f.element(0b1000).unwrap();
        assert_eq!(f.mul(z3, z), f.element(0b11).unwrap());
    }

    #[test]
    fn frobenius_of_z() {
        let f = gf16();
        let z = f.monomial(1);
        assert_eq!(f.frobenius(z, 2), f.element(0b11).unwrap());
        assert_eq!(f.frobenius(z, 0), z);
        assert_eq!(f.frobenius(z, 4), z);
    }

    #[test]
    fn inverse_of_zero_is_domain_error() {
        let f = gf16();
        assert!(matches!(
            f.arith(FieldElement::ZERO, FieldElement::ONE, FieldOp::Inv),
            Err(crate::Error::Domain(_))
        ));
    }

    #[test]
    fn rejects_reducible_and_wrong_degree() {
        assert!(FieldSpec::new(4, 0b10001).is_err());
        assert!(FieldSpec::new(4, 0b1011).is_err());
        assert!(FieldSpec::new(0, 1).is_err());
        // x^4+x^3+x^2+x+1 is irreducible but not primitive
        let f = FieldSpec::new(4, 0b11111).unwrap();
        for a in 1..16 {
            let a = f.element(a).unwrap();
            assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
        }
    }

    #[test]
    fn independence_examples() {
        let f = gf16();
        let m = |k| f.monomial(k);
        assert!(f.linearly_independent(&[m(0), m(1), m(2), m(3)]));
        assert!(!f.linearly_independent(&[m(1), m(1), m(2)]));
        let one_plus_z = f.add(m(0), m(1));
        assert!(!f.linearly_independent(&[m(0), m(1), one_plus_z]));
        assert!(!f.linearly_independent(&[m(0), m(1), m(2), m(3), one_plus_z]));
    }

    #[test]
    fn irreducibility_tests_agree() {
        for p in 2u64..(1 << 13) {
            assert_eq!(is_irreducible_trial(p), is_irreducible_rabin(p), "{p:#b}");
        }
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // number of monic irreducibles of degree d over GF(2)
        let expected = [2, 1, 2, 3, 6, 9, 18, 30, 56, 99];
        for (i, &want) in expected.iter().enumerate() {
            let d = i as u32 + 1;
            let count = ((1u64 << d)..(1u64 << (d + 1)))
                .filter(|&p| is_irreducible(p))
                .count();
            assert_eq!(count, want, "degree {d}");
        }
    }

    #[test]
    fn table_and_slow_paths_agree() {
        let f = FieldSpec::with_degree(9).unwrap();
        for a in (0..512).step_by(7) {
            for b in (0..512).step_by(5) {
                let want = poly_mulmod(a, b, f.modulus(), 9);
                let got = f.mul(FieldElement(a), FieldElement(b));
                assert_eq!(got.bits(), want);
            }
        }
    }

    #[test]
    fn large_degree_inverse() {
        let f = FieldSpec::with_degree(49).unwrap();
        let a = f.element(0x1_2345_6789_abcd).unwrap();
        assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
        assert_eq!(f.frobenius(a, 49), a);
    }

    #[test]
    fn hex_round_trip() {
        let f = FieldSpec::with_degree(9).unwrap();
        let a = f.element(0x1ff).unwrap();
        assert_eq!(f.to_hex(a), "ff01");
        assert_eq!(f.from_hex("ff01").unwrap(), a);
        assert!(f.from_hex("ff03").is_err());
        assert!(f.from_hex("f").is_err());
        assert!(f.from_hex("zz").is_err());
    }
}

//! Closed-form upper bounds on minimum distance.
//!
//! Every bound has the shape `n - ⌈M/α⌉ + 1 - ρ'` where `ρ'` is a lower
//! bound on `ρ` that the code family guarantees. The evaluators here are
//! pure functions of the parameters; they never look at a concrete code.
//! All arithmetic is exact integer arithmetic.

use serde::Serialize;

use crate::error::{domain, usage, Result};

/// Which distance bound a report comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    /// `n - ⌈M/α⌉ + 1 - ρ` for any code, with `ρ` given.
    General,
    /// Codes where every coordinate has a regenerating set of size `≤ r + 1`.
    LocalityR,
    /// `(n, r, δ, α)` locally repairable codes.
    Lrc,
    /// Linear scalar codes with `δ - 1` pairwise-disjoint local repair sets.
    Rdc,
    /// Square codes of side `r + 1`.
    Square,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::General => "general",
            Theorem::LocalityR => "locality_r",
            Theorem::Lrc => "lrc",
            Theorem::Rdc => "rdc",
            Theorem::Square => "square",
        }
    }
}

impl std::str::FromStr for Theorem {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "general" => Theorem::General,
            "locality_r" => Theorem::LocalityR,
            "lrc" | "lrc_r_delta" => Theorem::Lrc,
            "rdc" => Theorem::Rdc,
            "square" => Theorem::Square,
            other => return usage(format!("unknown theorem {other:?}")),
        })
    }
}

/// Parameters a bound was evaluated at.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BoundParams {
    pub n: usize,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<usize>,
}

/// Intermediate quantities behind a bound.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Intermediate {
    /// `ρ` as supplied to the general bound.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<usize>,
    /// Lower bound on `ρ` implied by the code family.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho_lower: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
}

/// An evaluated bound: `d ≤ value`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub theorem: Theorem,
    #[serde(flatten)]
    pub params: BoundParams,
    /// Raw formula value; may be below 1 for parameters no code attains.
    pub value: i64,
    #[serde(flatten)]
    pub intermediate: Intermediate,
}

pub(crate) fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

fn positive(name: &str, v: usize) -> Result<()> {
    if v == 0 {
        return usage(format!("{name} must be positive"));
    }
    Ok(())
}

fn raw(n: usize, m: usize, alpha: usize, rho: usize) -> i64 {
    n as i64 - ceil_div(m, alpha) as i64 + 1 - rho as i64
}

/// `d ≤ n - ⌈M/α⌉ + 1 - ρ`.
pub fn bound_general(n: usize, m: usize, alpha: usize, rho: usize) -> Result<BoundReport> {
    positive("n", n)?;
    positive("M", m)?;
    positive("alpha", alpha)?;
    Ok(BoundReport {
        theorem: Theorem::General,
        params: BoundParams {
            n,
            m,
            alpha: Some(alpha),
            ..Default::default()
        },
        value: raw(n, m, alpha, rho),
        intermediate: Intermediate {
            rho: Some(rho),
            ..Default::default()
        },
    })
}

/// `d ≤ n - ⌈M/α⌉ - ⌈M/(rα)⌉ + 2`, from `ρ ≥ ⌈M/(rα)⌉ - 1`.
pub fn bound_locality_r(n: usize, m: usize, alpha: usize, r: usize) -> Result<BoundReport> {
    positive("n", n)?;
    positive("M", m)?;
    positive("alpha", alpha)?;
    positive("r", r)?;
    let rho_lower = ceil_div(m, r * alpha) - 1;
    Ok(BoundReport {
        theorem: Theorem::LocalityR,
        params: BoundParams {
            n,
            m,
            alpha: Some(alpha),
            r: Some(r),
            delta: None,
        },
        value: raw(n, m, alpha, rho_lower),
        intermediate: Intermediate {
            rho_lower: Some(rho_lower),
            ..Default::default()
        },
    })
}

/// `d ≤ n - ⌈M/α⌉ + 1 - (⌈M/(rα)⌉ - 1)(δ - 1)`.
pub fn bound_lrc(n: usize, m: usize, alpha: usize, r: usize, delta: usize) -> Result<BoundReport> {
    positive("n", n)?;
    positive("M", m)?;
    positive("alpha", alpha)?;
    positive("r", r)?;
    if delta < 2 {
        return usage(format!("delta must be >= 2, got {delta}"));
    }
    let rho_lower = (ceil_div(m, r * alpha) - 1) * (delta - 1);
    Ok(BoundReport {
        theorem: Theorem::Lrc,
        params: BoundParams {
            n,
            m,
            alpha: Some(alpha),
            r: Some(r),
            delta: Some(delta),
        },
        value: raw(n, m, alpha, rho_lower),
        intermediate: Intermediate {
            rho_lower: Some(rho_lower),
            ..Default::default()
        },
    })
}

/// `μ = ⌈((M-1)(δ-1) + 1) / ((r-1)(δ-1) + 1)⌉ - 1`.
pub fn mu_value(m: usize, r: usize, delta: usize) -> Result<usize> {
    positive("M", m)?;
    if r < 2 {
        return domain(format!(
            "the disjoint-repair-set bound needs r >= 2, got r = {r}"
        ));
    }
    if delta < 2 {
        return usage(format!("delta must be >= 2, got {delta}"));
    }
    let num = (m - 1) * (delta - 1) + 1;
    let den = (r - 1) * (delta - 1) + 1;
    Ok(ceil_div(num, den) - 1)
}

/// `d ≤ n - M + 1 - μ` for linear codes (α = 1) with `δ - 1` local repair
/// sets per coordinate that pairwise meet only in that coordinate.
pub fn bound_rdc(n: usize, m: usize, r: usize, delta: usize) -> Result<BoundReport> {
    positive("n", n)?;
    let mu = mu_value(m, r, delta)?;
    Ok(BoundReport {
        theorem: Theorem::Rdc,
        params: BoundParams {
            n,
            m,
            alpha: None,
            r: Some(r),
            delta: Some(delta),
        },
        value: raw(n, m, 1, mu),
        intermediate: Intermediate {
            mu: Some(mu),
            ..Default::default()
        },
    })
}

/// `g(x) = xr - ⌊x²/4⌋` on `0 ≤ x ≤ 2r + 1`: the size of the union of the
/// first `x` row/column repair sets in alternating order, minus `x`.
pub fn g_function(x: usize, r: usize) -> Result<usize> {
    if x > 2 * r + 1 {
        return domain(format!("g(x) is defined for 0 <= x <= {}, got x = {x}", 2 * r + 1));
    }
    Ok(x * r - x * x / 4)
}

/// `s = max{x : g(x) < M}` for square-code parameters `r + 1 ≤ M ≤ r²`.
pub fn s_value(m: usize, r: usize) -> Result<usize> {
    if r < 2 || m < r + 1 || m > r * r {
        return domain(format!(
            "square-code parameters need r >= 2 and r+1 <= M <= r^2, got r = {r}, M = {m}"
        ));
    }
    let mut s = 0;
    for x in 0..=2 * r + 1 {
        if g_function(x, r)? < m {
            s = x;
        }
    }
    Ok(s)
}

/// `d ≤ n - M + 1 - s` for square codes, `n = (r+1)²`.
pub fn bound_square(n: usize, m: usize, r: usize) -> Result<BoundReport> {
    if n != (r + 1) * (r + 1) {
        return domain(format!(
            "square codes with r = {r} have n = {}, got n = {n}",
            (r + 1) * (r + 1)
        ));
    }
    let s = s_value(m, r)?;
    Ok(BoundReport {
        theorem: Theorem::Square,
        params: BoundParams {
            n,
            m,
            alpha: None,
            r: Some(r),
            delta: None,
        },
        value: raw(n, m, 1, s),
        intermediate: Intermediate {
            s: Some(s),
            ..Default::default()
        },
    })
}

/// One row of the square-vs-disjoint-repair comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CompareRow {
    #[serde(rename = "M")]
    pub m: usize,
    pub bound_square: i64,
    pub bound_rdc: i64,
}

/// Both bounds for every square-code dimension `M = r+1 ..= r²`, with the
/// disjoint-repair bound taken at `δ = 3`.
pub fn compare_table(r: usize) -> Result<Vec<CompareRow>> {
    if r < 2 {
        return domain(format!("comparison table needs r >= 2, got {r}"));
    }
    let n = (r + 1) * (r + 1);
    (r + 1..=r * r)
        .map(|m| {
            Ok(CompareRow {
                m,
                bound_square: bound_square(n, m, r)?.value,
                bound_rdc: bound_rdc(n, m, r, 3)?.value,
            })
        })
        .collect()
}

/// CSV rendering with header `M,bound_square,bound_rdc`.
pub fn table_csv(rows: &[CompareRow]) -> String {
    let mut out = String::from("M,bound_square,bound_rdc\n");
    for row in rows {
        out.push_str(&format!("{},{},{}\n", row.m, row.bound_square, row.bound_rdc));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn general_examples() {
        assert_eq!(bound_general(9, 3, 1, 1).unwrap().value, 6);
        assert_eq!(bound_general(9, 4, 1, 2).unwrap().value, 4);
        for n in 1..20 {
            assert_eq!(bound_general(n, 1, 1, 0).unwrap().value, n as i64);
        }
        assert!(matches!(bound_general(0, 1, 1, 0), Err(crate::Error::Usage(_))));
        assert!(bound_general(3, 1, 0, 0).is_err());
    }

    #[test]
    fn locality_examples() {
        assert_eq!(bound_locality_r(10, 6, 1, 3).unwrap().value, 4);
        assert_eq!(bound_locality_r(9, 4, 1, 2).unwrap().value, 5);
        // r ≥ M collapses to the Singleton bound
        for m in 1..8 {
            assert_eq!(
                bound_locality_r(12, m, 1, m + 2).unwrap().value,
                12 - m as i64 + 1
            );
        }
    }

    #[test]
    fn lrc_examples() {
        assert_eq!(bound_lrc(16, 6, 1, 3, 3).unwrap().value, 9);
        assert_eq!(bound_lrc(14, 6, 1, 3, 2).unwrap().value, 8);
        assert!(bound_lrc(14, 6, 1, 3, 1).is_err());
    }

    #[test]
    fn rdc_examples() {
        assert_eq!(mu_value(6, 3, 3).unwrap(), 2);
        assert_eq!(mu_value(5, 5, 2).unwrap(), 0);
        let b = bound_rdc(36, 9, 5, 3).unwrap();
        assert_eq!(b.intermediate.mu, Some(1));
        assert_eq!(b.value, 27);
        assert!(matches!(bound_rdc(36, 9, 1, 3), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn g_and_s_examples() {
        assert_eq!(g_function(0, 4).unwrap(), 0);
        assert_eq!(g_function(2, 5).unwrap(), 9);
        assert_eq!(g_function(7, 5).unwrap(), 23);
        assert!(g_function(12, 5).is_err());
        assert_eq!(s_value(3, 2).unwrap(), 1);
        assert_eq!(s_value(4, 2).unwrap(), 2);
        assert_eq!(s_value(25, 5).unwrap(), 8);
        for r in 2..10 {
            assert_eq!(s_value(r + 1, r).unwrap(), 1);
        }
        assert!(s_value(2, 2).is_err());
        assert!(s_value(5, 2).is_err());
    }

    #[test]
    fn square_examples() {
        assert_eq!(bound_square(9, 3, 2).unwrap().value, 6);
        assert_eq!(bound_square(9, 4, 2).unwrap().value, 4);
        assert_eq!(bound_square(36, 25, 5).unwrap().value, 4);
        assert!(matches!(bound_square(10, 3, 2), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn table_shape() {
        let t = compare_table(5).unwrap();
        assert_eq!(t.len(), 20);
        assert_eq!(t[0].m, 6);
        let t2 = compare_table(2).unwrap();
        assert_eq!(t2[0], CompareRow { m: 3, bound_square: 6, bound_rdc: bound_rdc(9, 3, 2, 3).unwrap().value });
        let csv = table_csv(&t2);
        assert!(csv.starts_with("M,bound_square,bound_rdc\n3,6,"));
    }

    #[test]
    fn theorem_names_round_trip() {
        for t in [Theorem::General, Theorem::LocalityR, Theorem::Lrc, Theorem::Rdc, Theorem::Square] {
            assert_eq!(t.name().parse::<Theorem>().unwrap(), t);
        }
        assert!("singleton".parse::<Theorem>().is_err());
    }
}

//! The square code: `(r+1)²` coordinates on a grid where every row and
//! every column of generator columns sums to zero.
//!
//! The construction picks `r²` field elements that are linearly
//! independent over GF(2) for the inner `r × r` block, fills the last row
//! and column so all row and column sums vanish, and uses
//! `(β, β^2, β^4, …, β^(2^(M-1)))` as the generator column of each grid
//! point. Frobenius is additive, so the zero sums carry over to the
//! columns, and the Moore-matrix structure gives full rank on any set of
//! grid points whose β values are independent.

use crate::bounds::s_value;
use crate::code::{CodeMetadata, LinearCode, DEFAULT_SEARCH_CAP};
use crate::coords::CoordSet;
use crate::error::{domain, usage, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::regset::RegeneratingSet;

/// Grid position, 1-based: row `i` and column `j` in `1..=r+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridIndex {
    pub i: usize,
    pub j: usize,
}

impl GridIndex {
    pub fn new(i: usize, j: usize) -> Self {
        GridIndex { i, j }
    }

    /// 0-based coordinate `(i-1)(r+1) + (j-1)`.
    pub fn coord(self, r: usize) -> usize {
        (self.i - 1) * (r + 1) + (self.j - 1)
    }

    pub fn from_coord(coord: usize, r: usize) -> Self {
        GridIndex {
            i: coord / (r + 1) + 1,
            j: coord % (r + 1) + 1,
        }
    }

    fn check(self, r: usize) -> Result<()> {
        if self.i == 0 || self.j == 0 || self.i > r + 1 || self.j > r + 1 {
            return usage(format!(
                "grid index ({}, {}) outside 1..={}",
                self.i,
                self.j,
                r + 1
            ));
        }
        Ok(())
    }
}

/// Coordinates of grid row `i` (1-based).
pub fn row_set(r: usize, i: usize) -> CoordSet {
    (1..=r + 1).map(|j| GridIndex::new(i, j).coord(r)).collect()
}

/// Coordinates of grid column `j` (1-based).
pub fn col_set(r: usize, j: usize) -> CoordSet {
    (1..=r + 1).map(|i| GridIndex::new(i, j).coord(r)).collect()
}

/// A constructed square code.
#[derive(Clone, Debug)]
pub struct SquareCode {
    r: usize,
    code: LinearCode,
    betas: Vec<Vec<FieldElement>>,
}

impl SquareCode {
    /// Builds the square code with side `r + 1` and dimension `m`.
    ///
    /// The inner block uses `β_{i,j} = z^((i-1)r + (j-1))`. Without an
    /// explicit field the smallest admissible one, GF(2^(r²)) with its
    /// default modulus, is used.
    pub fn build(r: usize, m: usize, field: Option<FieldSpec>) -> Result<Self> {
        if r < 2 {
            return domain(format!("square codes need r >= 2, got {r}"));
        }
        if m < r + 1 || m > r * r {
            return domain(format!(
                "square-code dimension must satisfy {} <= M <= {}, got {m}",
                r + 1,
                r * r
            ));
        }
        let field = match field {
            Some(f) => f,
            None => {
                if r * r > crate::field::MAX_DEGREE as usize {
                    return domain(format!(
                        "r = {r} needs a field of degree {} but at most {} is supported",
                        r * r,
                        crate::field::MAX_DEGREE
                    ));
                }
                FieldSpec::with_degree((r * r) as u32)?
            }
        };
        if (field.degree() as usize) < r * r {
            return domain(format!(
                "field degree {} is below r^2 = {}",
                field.degree(),
                r * r
            ));
        }

        let mut betas: Vec<Vec<FieldElement>> = (0..r)
            .map(|i| {
                let mut row: Vec<_> = (0..r).map(|j| field.monomial((i * r + j) as u32)).collect();
                row.push(FieldElement::ZERO);
                row
            })
            .collect();
        // in characteristic 2, -Σ = Σ
        let mut last: Vec<_> = (0..r)
            .map(|j| betas.iter().fold(FieldElement::ZERO, |acc, row| field.add(acc, row[j])))
            .collect();
        last.push(FieldElement::ZERO);
        betas.push(last);
        for row in betas.iter_mut() {
            row[r] = row[..r]
                .iter()
                .fold(FieldElement::ZERO, |acc, &b| field.add(acc, b));
        }

        let columns: Vec<Vec<FieldElement>> = betas
            .iter()
            .flatten()
            .map(|&b| (0..m).map(|k| field.frobenius(b, k as u32)).collect())
            .collect();
        let code = LinearCode::new(field, m, columns)?.with_metadata(CodeMetadata {
            family: "square".into(),
            r,
            dimension: m,
        });
        Ok(SquareCode { r, code, betas })
    }

    /// Reinterprets a code as a square code of side `r + 1`, recovering the
    /// β values from the first generator row. Fails unless the columns have
    /// the Frobenius-power shape and the grid relations hold.
    pub fn from_code(code: LinearCode, r: usize) -> Result<Self> {
        let side = r + 1;
        if code.len() != side * side {
            return usage(format!(
                "a square code with r = {r} has length {}, got {}",
                side * side,
                code.len()
            ));
        }
        let f = code.field().clone();
        for (c, col) in code.columns().iter().enumerate() {
            let b = col[0];
            if (0..col.len()).any(|k| col[k] != f.frobenius(b, k as u32)) {
                return usage(format!(
                    "column {} is not a Frobenius-power column",
                    c + 1
                ));
            }
        }
        let betas = (0..side)
            .map(|i| (0..side).map(|j| code.column(i * side + j)[0]).collect())
            .collect();
        let sc = SquareCode { r, code, betas };
        if !sc.verify_grid_relations() {
            return usage("grid row or column sums are nonzero");
        }
        Ok(sc)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn dimension(&self) -> usize {
        self.code.dimension()
    }

    pub fn len(&self) -> usize {
        self.code.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn into_code(self) -> LinearCode {
        self.code
    }

    /// β at a 1-based grid position.
    pub fn beta(&self, idx: GridIndex) -> FieldElement {
        self.betas[idx.i - 1][idx.j - 1]
    }

    pub fn betas(&self) -> &[Vec<FieldElement>] {
        &self.betas
    }

    /// Every grid row and column of generator columns sums to zero.
    pub fn verify_grid_relations(&self) -> bool {
        grid_relations_hold(&self.code, self.r)
    }

    /// The row and column repair sets of a grid point.
    pub fn grid_regsets(&self, idx: GridIndex) -> Result<(RegeneratingSet, RegeneratingSet)> {
        idx.check(self.r)?;
        let c = idx.coord(self.r);
        let row = RegeneratingSet::validated(&self.code, c, row_set(self.r, idx.i))?;
        let col = RegeneratingSet::validated(&self.code, c, col_set(self.r, idx.j))?;
        Ok((row, col))
    }

    /// Checks that the columns in `x` have full rank `M` whenever `x` has at
    /// least `M` points, at most `r` in every row, and misses some row
    /// entirely.
    pub fn check_rank_lemma(&self, x: CoordSet) -> Result<RankLemma> {
        self.code.check_set(x)?;
        let r = self.r;
        let m = self.dimension();
        let per_row: Vec<usize> = (1..=r + 1)
            .map(|i| x.intersection(row_set(r, i)).len())
            .collect();
        let hypotheses = x.len() >= m
            && per_row.iter().all(|&k| k <= r)
            && per_row.contains(&0);
        if !hypotheses {
            return Ok(RankLemma::HypothesesUnmet);
        }
        Ok(if self.code.entropy(x)? == m {
            RankLemma::Holds
        } else {
            RankLemma::Violated
        })
    }

    /// `n - M + 1 - s`, the distance the construction attains.
    pub fn designed_distance(&self) -> Result<usize> {
        let s = s_value(self.dimension(), self.r)?;
        Ok(self.len() - self.dimension() + 1 - s)
    }

    /// Brute-force distance compared with `n - M + 1 - s`.
    pub fn verify_optimal_distance(&self) -> Result<bool> {
        self.verify_optimal_distance_capped(DEFAULT_SEARCH_CAP)
    }

    pub fn verify_optimal_distance_capped(&self, cap: usize) -> Result<bool> {
        let d = self.code.min_distance_capped(cap)?;
        Ok(d == self.designed_distance()?)
    }
}

/// Outcome of [`SquareCode::check_rank_lemma`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankLemma {
    Holds,
    Violated,
    HypothesesUnmet,
}

/// Whether every grid row and column of `code`'s generator columns sums to
/// zero, reading the coordinates row by row on an `(r+1) × (r+1)` grid.
pub fn grid_relations_hold(code: &LinearCode, r: usize) -> bool {
    let side = r + 1;
    if code.len() != side * side {
        return false;
    }
    let f = code.field();
    let sums_to_zero = |set: CoordSet| {
        (0..code.dimension()).all(|k| {
            set.iter()
                .fold(FieldElement::ZERO, |acc, c| f.add(acc, code.column(c)[k]))
                .is_zero()
        })
    };
    (1..=side).all(|i| sums_to_zero(row_set(r, i)) && sums_to_zero(col_set(r, i)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::gf2_rank;
    use crate::regset::{minimal_regsets, verify_locality};

    #[test]
    fn r2_m3_betas() {
        let sc = SquareCode::build(2, 3, None).unwrap();
        let f = sc.code().field();
        assert_eq!(f.degree(), 4);
        let b = |i, j| sc.beta(GridIndex::new(i, j)).bits();
        assert_eq!((b(1, 1), b(1, 2), b(2, 1), b(2, 2)), (1, 0b10, 0b100, 0b1000));
        assert_eq!(b(1, 3), 0b11);
        assert_eq!(sc.len(), 9);
        assert!(sc.verify_grid_relations());
    }

    #[test]
    fn parameter_checks() {
        assert!(SquareCode::build(1, 2, None).is_err());
        assert!(SquareCode::build(2, 2, None).is_err());
        assert!(SquareCode::build(2, 5, None).is_err());
        let small = FieldSpec::with_degree(3).unwrap();
        assert!(matches!(
            SquareCode::build(2, 3, Some(small)),
            Err(crate::Error::Domain(_))
        ));
        assert!(SquareCode::build(8, 10, None).is_err());
    }

    #[test]
    fn perturbed_column_breaks_relations() {
        let sc = SquareCode::build(2, 3, None).unwrap();
        let code = sc.code();
        let mut cols = code.columns().to_vec();
        cols[0][0] = code.field().add(cols[0][0], code.field().monomial(3));
        let perturbed = LinearCode::new(code.field().clone(), 3, cols).unwrap();
        assert!(!grid_relations_hold(&perturbed, 2));
    }

    #[test]
    fn first_row_sums_to_zero() {
        let sc = SquareCode::build(2, 3, None).unwrap();
        let f = sc.code().field();
        for k in 0..3 {
            let s = row_set(2, 1)
                .iter()
                .fold(FieldElement::ZERO, |acc, c| f.add(acc, sc.code().column(c)[k]));
            assert!(s.is_zero());
        }
    }

    #[test]
    fn grid_regsets_of_corner() {
        let sc = SquareCode::build(2, 3, None).unwrap();
        let (row, col) = sc.grid_regsets(GridIndex::new(1, 1)).unwrap();
        assert_eq!(row.members().labels(), vec![1, 2, 3]);
        assert_eq!(col.members().labels(), vec![1, 4, 7]);
        assert_eq!(row.members().intersection(col.members()), CoordSet::single(0));
        assert!(sc.grid_regsets(GridIndex::new(4, 1)).is_err());
    }

    #[test]
    fn minimal_sets_include_row_and_column() {
        let sc = SquareCode::build(2, 3, None).unwrap();
        let sets: Vec<CoordSet> = minimal_regsets(sc.code(), 0, 3)
            .iter()
            .map(|s| s.members())
            .collect();
        assert!(sets.contains(&row_set(2, 1)));
        assert!(sets.contains(&col_set(2, 1)));
    }

    #[test]
    fn rank_lemma_cases() {
        let sc = SquareCode::build(2, 3, None).unwrap();
        let g = |i, j| GridIndex::new(i, j).coord(2);
        let x: CoordSet = [g(1, 1), g(1, 2), g(2, 1), g(2, 3)].into_iter().collect();
        assert_eq!(sc.check_rank_lemma(x).unwrap(), RankLemma::Holds);
        let all_rows: CoordSet = [g(1, 1), g(2, 1), g(3, 1)].into_iter().collect();
        assert_eq!(sc.check_rank_lemma(all_rows).unwrap(), RankLemma::HypothesesUnmet);
        assert_eq!(
            sc.check_rank_lemma(CoordSet::EMPTY).unwrap(),
            RankLemma::HypothesesUnmet
        );
    }

    #[test]
    fn row_spaces_direct_sum() {
        for r in 2..=5 {
            let sc = SquareCode::build(r, r + 1, None).unwrap();
            for skip in 0..=r {
                let bits = sc
                    .betas()
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != skip)
                    .flat_map(|(_, row)| row[..r].iter().map(|b| b.bits()));
                assert_eq!(gf2_rank(bits), r * r, "r={r} skip row {skip}");
            }
        }
    }

    #[test]
    fn r2_distances_are_optimal() {
        let sc3 = SquareCode::build(2, 3, None).unwrap();
        assert_eq!(sc3.code().min_distance().unwrap(), 6);
        assert!(sc3.verify_optimal_distance().unwrap());
        let sc4 = SquareCode::build(2, 4, None).unwrap();
        assert_eq!(sc4.code().min_distance().unwrap(), 4);
        assert!(sc4.verify_optimal_distance().unwrap());
    }

    #[test]
    fn locality_two_erasures() {
        let sc = SquareCode::build(2, 4, None).unwrap();
        assert!(verify_locality(sc.code(), 2, 3).unwrap());
    }

    #[test]
    fn from_code_round_trip() {
        let sc = SquareCode::build(2, 4, None).unwrap();
        let again = SquareCode::from_code(sc.code().clone(), 2).unwrap();
        assert_eq!(again.betas(), sc.betas());
        assert!(SquareCode::from_code(sc.into_code(), 3).is_err());
    }

    #[test]
    fn optimal_check_refuses_large() {
        let sc = SquareCode::build(2, 3, None).unwrap();
        assert!(matches!(
            sc.verify_optimal_distance_capped(8),
            Err(crate::Error::TooLarge { .. })
        ));
    }
}

//! Linear scalar codes given by generator columns, the entropy-as-rank
//! oracle, and exhaustive minimum-distance search.
//!
//! Coordinate `i` of a codeword is the inner product of the message with
//! generator column `i`. For such codes the joint entropy of a coordinate
//! subset, in units of one field symbol, is the rank of its columns.

use crate::coords::{k_subsets, CoordSet, MAX_LENGTH};
use crate::error::{usage, Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::linalg::{matrix_rank, Echelon};

/// Default limit on code length for exhaustive subset scans.
pub const DEFAULT_SEARCH_CAP: usize = 24;

/// Source of joint entropies `H(Y_E)` for coordinate subsets.
///
/// Everything that reasons about regenerating sets goes through this
/// trait, so it only relies on entropy values and not on linearity.
pub trait EntropyOracle {
    /// Code length `n`.
    fn length(&self) -> usize;

    /// File size `M`, i.e. `H(Y_[n])`.
    fn file_size(&self) -> usize;

    /// Symbols per coordinate.
    fn alpha(&self) -> usize {
        1
    }

    /// `H(Y_E)`. Callers guarantee `set ⊆ [n]`.
    fn joint_entropy(&self, set: CoordSet) -> usize;

    /// Locality declared by the code's construction, if any.
    fn declared_locality(&self) -> Option<usize> {
        None
    }
}

/// Construction metadata carried alongside a generator matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeMetadata {
    pub family: String,
    pub r: usize,
    pub dimension: usize,
}

/// A linear code over GF(2^m) of length `n` and dimension `M`.
#[derive(Clone, Debug)]
pub struct LinearCode {
    field: FieldSpec,
    dimension: usize,
    columns: Vec<Vec<FieldElement>>,
    alpha: usize,
    metadata: Option<CodeMetadata>,
}

impl LinearCode {
    /// Builds a code from its generator columns.
    ///
    /// Columns must all have length `dimension`, hold elements of `field`,
    /// and together have full rank `dimension`.
    pub fn new(
        field: FieldSpec,
        dimension: usize,
        columns: Vec<Vec<FieldElement>>,
    ) -> Result<Self> {
        let n = columns.len();
        if n > MAX_LENGTH {
            return Err(Error::TooLarge {
                what: "code length",
                actual: n,
                limit: MAX_LENGTH,
            });
        }
        if dimension == 0 || dimension > n {
            return usage(format!("need 1 <= M <= n, got M={dimension}, n={n}"));
        }
        if columns.iter().flatten().any(|&e| !field.contains(e)) {
            return usage(format!(
                "generator entry outside GF(2^{})",
                field.degree()
            ));
        }
        let rank = matrix_rank(&field, dimension, &columns)?;
        if rank != dimension {
            return usage(format!(
                "generator matrix has rank {rank}, expected full rank {dimension}"
            ));
        }
        Ok(LinearCode {
            field,
            dimension,
            columns,
            alpha: 1,
            metadata: None,
        })
    }

    pub fn with_metadata(mut self, metadata: CodeMetadata) -> Self {
        self.metadata = Some(metadata);
        self
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Code length `n`.
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Dimension `M` (file size in field symbols).
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn metadata(&self) -> Option<&CodeMetadata> {
        self.metadata.as_ref()
    }

    pub fn columns(&self) -> &[Vec<FieldElement>] {
        &self.columns
    }

    pub fn column(&self, i: usize) -> &[FieldElement] {
        &self.columns[i]
    }

    pub fn all(&self) -> CoordSet {
        CoordSet::full(self.len())
    }

    pub(crate) fn check_set(&self, set: CoordSet) -> Result<()> {
        if !set.is_subset(self.all()) {
            return usage(format!(
                "coordinate set {:?} not contained in 1..={}",
                set.labels(),
                self.len()
            ));
        }
        Ok(())
    }

    /// Rank of the columns indexed by `set`; `set` must lie within `[n]`.
    pub(crate) fn rank_of(&self, set: CoordSet) -> usize {
        let mut ech = Echelon::new(&self.field, self.dimension);
        self.rank_with(&mut ech, set)
    }

    fn rank_with(&self, ech: &mut Echelon<'_>, set: CoordSet) -> usize {
        ech.clear();
        for i in set.iter() {
            ech.insert(&self.columns[i]);
            if ech.rank() == self.dimension {
                break;
            }
        }
        ech.rank()
    }

    /// Joint entropy of the coordinates in `set`, as the rank of their columns.
    pub fn entropy(&self, set: CoordSet) -> Result<usize> {
        self.check_set(set)?;
        Ok(self.rank_of(set))
    }

    /// Whether the message survives erasing the coordinates in `failed`.
    pub fn erasure_decodable(&self, failed: CoordSet) -> Result<bool> {
        self.check_set(failed)?;
        Ok(self.rank_of(self.all().difference(failed)) == self.dimension)
    }

    /// Codeword for `message`: symbol `i` is `⟨message, column i⟩`.
    pub fn encode(&self, message: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if message.len() != self.dimension {
            return usage(format!(
                "message has {} symbols, code dimension is {}",
                message.len(),
                self.dimension
            ));
        }
        if message.iter().any(|&e| !self.field.contains(e)) {
            return usage("message symbol outside the field");
        }
        let f = &self.field;
        Ok(self
            .columns
            .iter()
            .map(|col| {
                col.iter()
                    .zip(message)
                    .fold(FieldElement::ZERO, |acc, (&g, &x)| f.add(acc, f.mul(g, x)))
            })
            .collect())
    }

    /// Minimum distance with the default search cap.
    pub fn min_distance(&self) -> Result<usize> {
        self.min_distance_capped(DEFAULT_SEARCH_CAP)
    }

    pub fn min_distance_capped(&self, cap: usize) -> Result<usize> {
        Ok(self.min_distance_witness(cap)?.distance)
    }

    /// Exhaustive minimum distance `d = n - max{|E| : H(Y_E) < M}`.
    ///
    /// Subset sizes are scanned from `n - 1` downward and the scan stops at
    /// the first size class holding a rank-deficient subset. Within a size
    /// class subsets are visited in increasing mask order, so the witness
    /// is deterministic.
    pub fn min_distance_witness(&self, cap: usize) -> Result<DistanceReport> {
        let n = self.len();
        if n > cap {
            return Err(Error::TooLarge {
                what: "code length for exhaustive distance search",
                actual: n,
                limit: cap,
            });
        }
        let mut ech = Echelon::new(&self.field, self.dimension);
        // every (M-1)-subset is deficient, so the scan ends by k = M-1
        for k in (self.dimension - 1..n).rev() {
            for set in k_subsets(n, k) {
                if self.rank_with(&mut ech, set) < self.dimension {
                    return Ok(DistanceReport {
                        distance: n - k,
                        deficient_set: set,
                    });
                }
            }
        }
        unreachable!("(M-1)-subsets always have rank below M")
    }
}

/// Result of an exhaustive distance search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DistanceReport {
    pub distance: usize,
    /// A largest coordinate set whose entropy is below `M`.
    pub deficient_set: CoordSet,
}

impl EntropyOracle for LinearCode {
    fn length(&self) -> usize {
        self.len()
    }

    fn file_size(&self) -> usize {
        self.dimension
    }

    fn alpha(&self) -> usize {
        self.alpha
    }

    fn joint_entropy(&self, set: CoordSet) -> usize {
        debug_assert!(set.is_subset(self.all()));
        self.rank_of(set)
    }

    fn declared_locality(&self) -> Option<usize> {
        self.metadata.as_ref().map(|m| m.r)
    }
}

/// Repetition code of length `n` over `field`: every column is `[1]`.
pub fn repetition_code(field: FieldSpec, n: usize) -> Result<LinearCode> {
    LinearCode::new(field, 1, vec![vec![FieldElement::ONE]; n])
}

/// Single-parity code of length `M + 1`: unit columns plus their sum.
pub fn single_parity_code(field: FieldSpec, dimension: usize) -> Result<LinearCode> {
    let mut cols: Vec<Vec<FieldElement>> = (0..dimension)
        .map(|i| {
            let mut c = vec![FieldElement::ZERO; dimension];
            c[i] = FieldElement::ONE;
            c
        })
        .collect();
    cols.push(vec![FieldElement::ONE; dimension]);
    LinearCode::new(field, dimension, cols)
}

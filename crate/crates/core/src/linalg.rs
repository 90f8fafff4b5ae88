//! Exact linear algebra over GF(2^m): rank and span membership of column
//! vectors, by Gaussian elimination with field inversion for pivots.

use crate::error::{usage, Result};
use crate::field::{FieldElement, FieldSpec};

/// Incrementally built echelon basis of a span of vectors of fixed length.
///
/// Each stored vector has a distinct pivot position, its first nonzero
/// entry, normalised to one. Inserting a vector reduces it against the
/// stored ones and keeps the remainder if it is nonzero.
#[derive(Clone, Debug)]
pub struct Echelon<'f> {
    field: &'f FieldSpec,
    len: usize,
    rows: Vec<(usize, Vec<FieldElement>)>,
    scratch: Vec<FieldElement>,
}

impl<'f> Echelon<'f> {
    pub fn new(field: &'f FieldSpec, len: usize) -> Self {
        Echelon {
            field,
            len,
            rows: Vec::with_capacity(len),
            scratch: vec![FieldElement::ZERO; len],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn clear(&mut self) {
        self.rows.clear();
    }

    fn reduce_into_scratch(&mut self, v: &[FieldElement]) {
        let f = self.field;
        self.scratch.copy_from_slice(v);
        for (pivot, row) in &self.rows {
            let c = self.scratch[*pivot];
            if c.is_zero() {
                continue;
            }
            for (s, &r) in self.scratch[*pivot..].iter_mut().zip(&row[*pivot..]) {
                *s = f.add(*s, f.mul(c, r));
            }
        }
    }

    /// Adds `v` to the basis. Returns `true` if it increased the rank.
    pub fn insert(&mut self, v: &[FieldElement]) -> bool {
        debug_assert_eq!(v.len(), self.len);
        self.reduce_into_scratch(v);
        let Some(pivot) = self.scratch.iter().position(|e| !e.is_zero()) else {
            return false;
        };
        let inv = self
            .field
            .inv(self.scratch[pivot])
            .expect("pivot is nonzero");
        let mut row = self.scratch.clone();
        for e in &mut row[pivot..] {
            *e = self.field.mul(*e, inv);
        }
        self.rows.push((pivot, row));
        true
    }

    /// Whether `v` lies in the current span.
    pub fn contains(&mut self, v: &[FieldElement]) -> bool {
        self.reduce_into_scratch(v);
        self.scratch.iter().all(|e| e.is_zero())
    }
}

/// Rank of the matrix with the given columns, each of length `rows`.
pub fn matrix_rank(field: &FieldSpec, rows: usize, cols: &[Vec<FieldElement>]) -> Result<usize> {
    if let Some(bad) = cols.iter().position(|c| c.len() != rows) {
        return usage(format!(
            "ragged matrix: column {bad} has length {}, expected {rows}",
            cols[bad].len()
        ));
    }
    let mut ech = Echelon::new(field, rows);
    for c in cols {
        ech.insert(c);
        if ech.rank() == rows {
            break;
        }
    }
    Ok(ech.rank())
}

/// Solves `Σ x_j · cols[j] = target` for `x`.
///
/// Returns `None` if `target` is outside the span of `cols`. When the
/// columns are dependent the free variables are set to zero, which picks
/// the unique solution supported on the first pivot columns.
pub fn solve_in_span(
    field: &FieldSpec,
    cols: &[&[FieldElement]],
    target: &[FieldElement],
) -> Option<Vec<FieldElement>> {
    let rows = target.len();
    let k = cols.len();
    // augmented matrix, row-major: rows × (k + 1)
    let mut a: Vec<Vec<FieldElement>> = (0..rows)
        .map(|i| {
            let mut r: Vec<FieldElement> = cols.iter().map(|c| c[i]).collect();
            r.push(target[i]);
            r
        })
        .collect();

    let mut pivots = Vec::new();
    let mut prow = 0;
    for col in 0..k {
        let Some(sel) = (prow..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(prow, sel);
        let inv = field.inv(a[prow][col]).expect("nonzero pivot");
        for e in &mut a[prow] {
            *e = field.mul(*e, inv);
        }
        let pivot_row = a[prow].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == prow || row[col].is_zero() {
                continue;
            }
            let c = row[col];
            for (e, &p) in row.iter_mut().zip(&pivot_row) {
                *e = field.add(*e, field.mul(c, p));
            }
        }
        pivots.push(col);
        prow += 1;
        if prow == rows {
            break;
        }
    }
    if a[prow..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    let mut x = vec![FieldElement::ZERO; k];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = a[r][k];
    }
    Some(x)
}

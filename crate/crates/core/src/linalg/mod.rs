//! Sparse exact linear algebra over `Q` and prime fields.
//!
//! Both engines use the same column reduction: each incoming column is
//! reduced against the basis collected so far by repeatedly cancelling its
//! lowest (largest row index) entry. Over `Q` the reduction is fraction-free
//! on integer columns; over `F_p` it runs on a dense working column so that
//! columns can be generated on demand and dropped after elimination.

pub mod exact;
pub mod modular;
pub mod primes;

use serde::Serialize;

use crate::scalar::{axpy, SparseVector, Q};

pub use exact::ExactSolver;
pub use modular::{rank_mod_p, rank_mod_p_streamed};
pub use primes::{is_prime, PrimeSource};

/// Sparse matrix stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<T> {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, T)>>,
}

impl<T: Clone> SparseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, columns: vec![Vec::new(); cols] }
    }

    /// Columns must be sorted by row, zero-free and in range.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, T)>>) -> Self {
        debug_assert!(columns.iter().all(|c| c.windows(2).all(|w| w[0].0 < w[1].0)));
        debug_assert!(columns.iter().flatten().all(|(r, _)| *r < rows));
        Self { rows, cols: columns.len(), columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, T)] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vec<(usize, T)>] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&T> {
        let col = &self.columns[c];
        col.binary_search_by_key(&r, |(i, _)| *i).ok().map(|k| &col[k].1)
    }

    /// Vertical concatenation.
    pub fn stack(blocks: &[SparseMatrix<T>]) -> Self {
        let cols = blocks.first().map_or(0, |b| b.cols);
        assert!(blocks.iter().all(|b| b.cols == cols), "stacked blocks must share columns");
        let mut columns = vec![Vec::new(); cols];
        let mut offset = 0;
        for b in blocks {
            for (j, col) in b.columns.iter().enumerate() {
                columns[j].extend(col.iter().map(|(r, v)| (r + offset, v.clone())));
            }
            offset += b.rows;
        }
        Self { rows: offset, cols, columns }
    }
}

impl SparseMatrix<Q> {
    pub fn identity(n: usize) -> Self {
        Self::from_columns(n, (0..n).map(|i| vec![(i, crate::scalar::one())]).collect())
    }

    /// `M v`.
    pub fn mul_vec(&self, v: &[(usize, Q)]) -> SparseVector {
        let mut out = SparseVector::new();
        for (j, c) in v {
            axpy(&mut out, c, &self.columns[*j]);
        }
        out
    }

    /// Multiplies every entry by a nonzero scalar.
    pub fn scaled(&self, s: &Q) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            columns: self.columns.iter().map(|c| c.iter().map(|(r, v)| (*r, v * s)).collect()).collect(),
        }
    }
}

/// Field over which a rank was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldTag {
    Rationals,
    Prime(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RankMethod {
    Exact,
    Modular,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankCertificate {
    pub rank: usize,
    pub field: FieldTag,
    pub method: RankMethod,
    pub primes_used: Vec<u64>,
}

/// Indices of the columns sorted by increasing fill, ties by index.
pub(crate) fn sparsest_first<T>(columns: &[Vec<(usize, T)>]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..columns.len()).collect();
    order.sort_by_key(|&j| (columns[j].len(), j));
    order
}

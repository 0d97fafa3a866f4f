//! Square bit matrices over GF(2).
//!
//! Rows are packed into `u64` words, least significant bit first, so that
//! elimination XORs whole words at a time. Adjacency matrices of graphs are
//! the main customer; they are symmetric, but `BitMatrix` itself does not
//! require symmetry so that products of adjacency matrices can be formed.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(dim: usize) -> usize {
    dim.div_ceil(WORD)
}

/// A `dim x dim` matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    dim: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(dim: usize) -> Self {
        let stride = words_for(dim);
        BitMatrix {
            dim,
            stride,
            words: vec![0; dim * stride],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, true);
        }
        m
    }

    /// All-ones matrix.
    pub fn ones(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, true);
            }
        }
        m
    }

    /// Builds a matrix from rows of booleans. All rows must have length `rows.len()`.
    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self> {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: row.len(),
                });
            }
            for (j, &bit) in row.iter().enumerate() {
                m.set(i, j, bit);
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.dim && j < self.dim);
        (self.words[i * self.stride + j / WORD] >> (j % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        debug_assert!(i < self.dim && j < self.dim);
        let w = &mut self.words[i * self.stride + j / WORD];
        let bit = 1u64 << (j % WORD);
        if value {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize, j: usize) {
        debug_assert!(i < self.dim && j < self.dim);
        self.words[i * self.stride + j / WORD] ^= 1u64 << (j % WORD);
    }

    /// Packed words of row `i`.
    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.words[i * self.stride..(i + 1) * self.stride]
    }

    /// Number of set bits in row `i`.
    pub fn row_weight(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (i + 1..self.dim).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    /// Returns `P M P^T` where `perm[new] = old`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.dim);
        let mut m = Self::zeros(self.dim);
        for (i, &pi) in perm.iter().enumerate() {
            for (j, &pj) in perm.iter().enumerate() {
                if self.get(pi, pj) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Principal submatrix on the given indices, in the order given.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Self {
        let mut m = Self::zeros(indices.len());
        for (i, &a) in indices.iter().enumerate() {
            for (j, &b) in indices.iter().enumerate() {
                if self.get(a, b) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// GF(2) rank. Works on a copy; `self` is untouched.
    pub fn rank(&self) -> usize {
        if self.dim == 0 {
            return 0;
        }
        let mut rows = self.words.clone();
        let stride = self.stride;
        let mut rank = 0;
        for col in 0..self.dim {
            let (w, bit) = (col / WORD, 1u64 << (col % WORD));
            // lowest-index remaining row with a set bit in this column
            let Some(pivot) = (rank..self.dim).find(|&r| rows[r * stride + w] & bit != 0) else {
                continue;
            };
            if pivot != rank {
                for k in 0..stride {
                    rows.swap(pivot * stride + k, rank * stride + k);
                }
            }
            for r in rank + 1..self.dim {
                if rows[r * stride + w] & bit != 0 {
                    for k in w..stride {
                        let p = rows[rank * stride + k];
                        rows[r * stride + k] ^= p;
                    }
                }
            }
            rank += 1;
            if rank == self.dim {
                break;
            }
        }
        rank
    }

    pub fn nullity(&self) -> usize {
        self.dim - self.rank()
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let mut out = Self::zeros(self.dim);
        let stride = self.stride;
        for i in 0..self.dim {
            for k in 0..self.dim {
                if self.get(i, k) {
                    let src = &other.words[k * stride..(k + 1) * stride];
                    let dst = &mut out.words[i * stride..(i + 1) * stride];
                    for (d, s) in dst.iter_mut().zip(src) {
                        *d ^= s;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Entrywise sum (XOR).
    pub fn add(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(BitMatrix {
            dim: self.dim,
            stride: self.stride,
            words,
        })
    }
}

/// Rank of a set of at most 64-column rows, destroying the slice.
///
/// Each row is reduced by the pivots of all earlier nonzero rows, with the
/// lowest set bit serving as pivot column.
#[inline]
pub fn rank_of_words(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let r = rows[i];
        if r == 0 {
            continue;
        }
        rank += 1;
        let low = r & r.wrapping_neg();
        for row in rows[i + 1..].iter_mut() {
            if *row & low != 0 {
                *row ^= r;
            }
        }
    }
    rank
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix({})", self.dim)?;
        for i in 0..self.dim {
            let line: String = (0..self.dim)
                .map(|j| if self.get(i, j) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

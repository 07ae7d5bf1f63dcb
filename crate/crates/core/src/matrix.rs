//! Square binary matrices, the block partition of an `n² × n²` matrix into
//! `n²` blocks of size `n × n`, and the structural predicates built on it.
//!
//! Every public index in this module is 1-based: row `i` and column `j` run
//! over `1..=side`, block coordinates `(s, t)` over `1..=n`.

use crate::error::{Error, Result};
use crate::permutation::Permutation;

const WORD: usize = 64;

/// Dense `side × side` matrix over `{0, 1}` stored as packed bit rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    side: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BinaryMatrix {
    pub fn zeros(side: usize) -> Self {
        let words_per_row = side.div_ceil(WORD);
        BinaryMatrix {
            side,
            words_per_row,
            bits: vec![0; words_per_row * side],
        }
    }

    pub fn ones(side: usize) -> Self {
        Self::from_fn(side, |_, _| true)
    }

    pub fn identity(side: usize) -> Self {
        Self::from_fn(side, |i, j| i == j)
    }

    /// Builds a matrix whose entry `(i, j)` is `f(i, j)`, both 1-based.
    pub fn from_fn(side: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(side);
        for i in 1..=side {
            for j in 1..=side {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Builds a matrix from rows of 0/1 values. Rows must all have the same
    /// length as the number of rows.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let side = rows.len();
        let mut m = Self::zeros(side);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != side {
                return Err(Error::SizeMismatch {
                    expected: side,
                    found: row.len(),
                });
            }
            for (j, &b) in row.iter().enumerate() {
                match b {
                    0 => {}
                    1 => m.set(i + 1, j + 1, true),
                    other => {
                        return Err(Error::InvalidArgument(format!(
                            "entry ({}, {}) is {other}, expected 0 or 1",
                            i + 1,
                            j + 1
                        )))
                    }
                }
            }
        }
        Ok(m)
    }

    /// A matrix with 1s exactly at the given 1-based positions.
    pub fn from_positions(side: usize, ones: &[(usize, usize)]) -> Result<Self> {
        let mut m = Self::zeros(side);
        for &(i, j) in ones {
            if i == 0 || j == 0 || i > side || j > side {
                return Err(Error::InvalidArgument(format!(
                    "position ({i}, {j}) outside a {side}x{side} matrix"
                )));
            }
            m.set(i, j, true);
        }
        Ok(m)
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(
            (1..=self.side).contains(&i) && (1..=self.side).contains(&j),
            "index ({i}, {j}) out of bounds for side {}",
            self.side
        );
        let (w, b) = self.locate(i - 1, j - 1);
        self.bits[w] >> b & 1 == 1
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, value: bool) {
        let (w, b) = self.locate(i - 1, j - 1);
        if value {
            self.bits[w] |= 1 << b;
        } else {
            self.bits[w] &= !(1 << b);
        }
    }

    fn locate(&self, r: usize, c: usize) -> (usize, usize) {
        (r * self.words_per_row + c / WORD, c % WORD)
    }

    fn row_words(&self, i: usize) -> &[u64] {
        let start = (i - 1) * self.words_per_row;
        &self.bits[start..start + self.words_per_row]
    }

    pub fn row_sum(&self, i: usize) -> usize {
        self.row_words(i)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn col_sum(&self, j: usize) -> usize {
        (1..=self.side).filter(|&i| self.get(i, j)).count()
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// 1-based positions of all 1 entries in row-major order.
    pub fn ones_positions(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.side {
            for j in 1..=self.side {
                if self.get(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (1..=self.side)
            .map(|i| (1..=self.side).map(|j| self.get(i, j) as u8).collect())
            .collect()
    }

    /// The order `n` of the block grid, i.e. `side = n²`.
    pub fn block_order(&self) -> Result<usize> {
        exact_sqrt(self.side).ok_or(Error::NotPerfectSquare { side: self.side })
    }

    /// The `n × n` sub-matrix `A_st`: global rows `(s-1)n+1 ..= sn` and global
    /// columns `(t-1)n+1 ..= tn`.
    pub fn block(&self, b: BlockIndex) -> Result<BinaryMatrix> {
        let n = b.n();
        if n.checked_mul(n) != Some(self.side) {
            return Err(Error::NotPerfectSquare { side: self.side });
        }
        let (r0, c0) = ((b.s() - 1) * n, (b.t() - 1) * n);
        Ok(BinaryMatrix::from_fn(n, |i, j| self.get(r0 + i, c0 + j)))
    }

    /// Inverse of taking all blocks: `blocks` lists `A_11, A_12, ..., A_nn`
    /// in row-major block order.
    pub fn from_blocks(n: usize, blocks: &[BinaryMatrix]) -> Result<BinaryMatrix> {
        if blocks.len() != n * n {
            return Err(Error::SizeMismatch {
                expected: n * n,
                found: blocks.len(),
            });
        }
        if let Some(bad) = blocks.iter().find(|b| b.side != n) {
            return Err(Error::SizeMismatch {
                expected: n,
                found: bad.side,
            });
        }
        Ok(BinaryMatrix::from_fn(n * n, |i, j| {
            let (s, k) = ((i - 1) / n, (i - 1) % n);
            let (t, l) = ((j - 1) / n, (j - 1) % n);
            blocks[s * n + t].get(k + 1, l + 1)
        }))
    }
}

impl std::fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BinaryMatrix({}x{})", self.side, self.side)?;
        for i in 1..=self.side {
            for j in 1..=self.side {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Coordinates `(s, t)` of one block in an `n × n` grid of blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockIndex {
    s: usize,
    t: usize,
    n: usize,
}

impl BlockIndex {
    pub fn new(s: usize, t: usize, n: usize) -> Result<Self> {
        if n == 0 || !(1..=n).contains(&s) || !(1..=n).contains(&t) {
            return Err(Error::InvalidArgument(format!(
                "block ({s}, {t}) outside a {n}x{n} block grid"
            )));
        }
        Ok(BlockIndex { s, t, n })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// All `n²` blocks in row-major order.
    pub fn all(n: usize) -> impl Iterator<Item = BlockIndex> {
        (1..=n).flat_map(move |s| (1..=n).map(move |t| BlockIndex { s, t, n }))
    }
}

/// An `n² × n²` binary matrix with exactly one 1 in every row, column and
/// block, stored as the column of the 1 in each row.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SPermutationMatrix {
    n: usize,
    column_of_row: Vec<u32>,
}

impl SPermutationMatrix {
    /// Validates that `column_of_row` (1-based columns) is a permutation of
    /// `1..=n²` hitting every block exactly once.
    pub fn new(n: usize, column_of_row: Vec<u32>) -> Result<Self> {
        let side = n * n;
        if column_of_row.len() != side {
            return Err(Error::SizeMismatch {
                expected: side,
                found: column_of_row.len(),
            });
        }
        Permutation::new(column_of_row.clone())
            .map_err(|e| Error::NotSPermutation(e.to_string()))?;
        let mut hit = vec![false; side];
        for (r, &c) in column_of_row.iter().enumerate() {
            let (s, t) = (r / n, (c as usize - 1) / n);
            if std::mem::replace(&mut hit[s * n + t], true) {
                return Err(Error::NotSPermutation(format!(
                    "block ({}, {}) contains more than one 1",
                    s + 1,
                    t + 1
                )));
            }
        }
        Ok(SPermutationMatrix { n, column_of_row })
    }

    pub(crate) fn new_unchecked(n: usize, column_of_row: Vec<u32>) -> Self {
        debug_assert!(Self::new(n, column_of_row.clone()).is_ok());
        SPermutationMatrix { n, column_of_row }
    }

    pub fn from_dense(m: &BinaryMatrix) -> Result<Self> {
        let n = m.block_order()?;
        let mut cols = Vec::with_capacity(m.side());
        for i in 1..=m.side() {
            let ones: Vec<usize> = (1..=m.side()).filter(|&j| m.get(i, j)).collect();
            match ones.as_slice() {
                [j] => cols.push(*j as u32),
                _ => {
                    return Err(Error::NotSPermutation(format!(
                        "row {i} contains {} ones",
                        ones.len()
                    )))
                }
            }
        }
        Self::new(n, cols)
    }

    pub fn to_dense(&self) -> BinaryMatrix {
        let mut m = BinaryMatrix::zeros(self.side());
        for (r, &c) in self.column_of_row.iter().enumerate() {
            m.set(r + 1, c as usize, true);
        }
        m
    }

    /// Block order `n`; the matrix itself is `n² × n²`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn side(&self) -> usize {
        self.n * self.n
    }

    pub fn column_of_row(&self) -> &[u32] {
        &self.column_of_row
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.column_of_row[i - 1] as usize == j
    }

    /// 1-based positions `(i, j)` of all 1 entries, ordered by row.
    pub fn ones_positions(&self) -> Vec<(usize, usize)> {
        self.column_of_row
            .iter()
            .enumerate()
            .map(|(r, &c)| (r + 1, c as usize))
            .collect()
    }

    /// Local position `(k, l)` of the single 1 inside block `(s, t)`.
    pub fn local_one(&self, s: usize, t: usize) -> (usize, usize) {
        let n = self.n;
        let band = (s - 1) * n..s * n;
        let cols = (t - 1) * n + 1..=t * n;
        for r in band {
            let c = self.column_of_row[r] as usize;
            if cols.contains(&c) {
                return (r - (s - 1) * n + 1, c - (t - 1) * n);
            }
        }
        unreachable!("validated S-permutation matrix lacks a 1 in block ({s}, {t})")
    }
}

fn exact_sqrt(x: usize) -> Option<usize> {
    let r = (x as f64).sqrt().round() as usize;
    (r.checked_mul(r) == Some(x)).then_some(r)
}

/// True iff every row sum and every column sum of `m` equals `k`.
pub fn is_lambda_matrix(m: &BinaryMatrix, k: usize) -> Result<bool> {
    if k == 0 || k > m.side() {
        return Err(Error::InvalidArgument(format!(
            "k = {k} outside 1..={}",
            m.side()
        )));
    }
    Ok((1..=m.side()).all(|i| m.row_sum(i) == k) && (1..=m.side()).all(|j| m.col_sum(j) == k))
}

pub fn block_view(m: &BinaryMatrix, b: BlockIndex) -> Result<BinaryMatrix> {
    m.block(b)
}

/// True iff every row, column and block of `m` holds exactly one 1.
pub fn is_s_permutation(m: &BinaryMatrix) -> Result<bool> {
    let n = m.block_order()?;
    Ok((1..=m.side()).all(|i| m.row_sum(i) == 1)
        && (1..=m.side()).all(|j| m.col_sum(j) == 1)
        && every_block_has_single_one(m, n))
}

/// Block condition alone: each of the `n²` blocks of the `n² × n²` matrix
/// `m` holds exactly one 1. Scans `m` in place without copying blocks.
pub(crate) fn every_block_has_single_one(m: &BinaryMatrix, n: usize) -> bool {
    BlockIndex::all(n).all(|b| {
        let (r0, c0) = ((b.s() - 1) * n, (b.t() - 1) * n);
        let mut ones = 0;
        for i in 1..=n {
            for j in 1..=n {
                ones += m.get(r0 + i, c0 + j) as usize;
            }
        }
        ones == 1
    })
}

/// True iff no position carries a 1 in both matrices.
pub fn are_disjoint_sigma(a: &SPermutationMatrix, b: &SPermutationMatrix) -> Result<bool> {
    if a.n != b.n {
        return Err(Error::SizeMismatch {
            expected: a.n,
            found: b.n,
        });
    }
    Ok(a.column_of_row
        .iter()
        .zip(&b.column_of_row)
        .all(|(x, y)| x != y))
}

/// The permutation matrix with `b_ij = 1` iff `p_i = j`.
pub fn permutation_to_matrix(p: &Permutation) -> BinaryMatrix {
    let mut m = BinaryMatrix::zeros(p.len());
    for (i, &v) in p.values().iter().enumerate() {
        m.set(i + 1, v as usize, true);
    }
    m
}

//! Generation of S-permutation matrices.
//!
//! A `Πₙ` matrix is a `2n × n` matrix whose rows are permutations of `1..=n`.
//! [`phi`] maps it to an S-permutation matrix block by block: block `(s, t)`
//! receives its single 1 at local row `p[s][t]` and local column
//! `p[n+t][s]`. Rows `1..=n` of `P` therefore fix the local rows used along
//! each band of blocks, rows `n+1..=2n` the local columns used down each
//! stack, which is exactly what keeps one 1 per global row and column. The
//! map is a bijection onto `Σ_{n²}`, so enumerating `Πₙ` and mapping every
//! element produces each S-permutation matrix once with no filtering.
//!
//! [`NaiveGenerator`] is the rejection baseline: all `(n²)!` permutation
//! matrices, keeping those whose blocks each hold a single 1.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::count::factorial;
use crate::error::{Error, Result};
use crate::guard::Guard;
use crate::matrix::{every_block_has_single_one, BinaryMatrix, SPermutationMatrix};
use crate::permutation::{factorial_u128, lex_unrank, next_lex, Permutation};

/// A `2n × n` matrix every row of which is a permutation of `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PiMatrix {
    n: usize,
    // row-major, 2n rows of n entries
    entries: Vec<u32>,
}

impl PiMatrix {
    pub fn new(n: usize, rows: Vec<Permutation>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        if rows.len() != 2 * n {
            return Err(Error::SizeMismatch {
                expected: 2 * n,
                found: rows.len(),
            });
        }
        let mut entries = Vec::with_capacity(2 * n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            entries.extend_from_slice(row.values());
        }
        Ok(PiMatrix { n, entries })
    }

    /// Builds from raw rows, validating each as a permutation of `1..=n`.
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.len() / 2;
        if !rows.len().is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "a Pi matrix has an even number of rows, got {}",
                rows.len()
            )));
        }
        let perms = rows
            .into_iter()
            .map(Permutation::new)
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, perms)
    }

    /// The matrix whose rows are all the identity `<1, ..., n>`; first in
    /// lexicographic order.
    pub fn first(n: usize) -> Self {
        assert!(n >= 1, "n must be at least 1");
        let row: Vec<u32> = (1..=n as u32).collect();
        PiMatrix {
            n,
            entries: row.repeat(2 * n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Row `i` (1-based, `1..=2n`).
    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[(i - 1) * self.n..i * self.n]
    }

    pub fn rows(&self) -> Vec<Permutation> {
        self.entries
            .chunks(self.n)
            .map(|r| Permutation::new_unchecked(r.to_vec()))
            .collect()
    }

    /// Entry `p_ij`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    /// The ordered pair `<p_{s,t}, p_{n+t,s}>`: local row and column of the 1
    /// that [`phi`] places in block `(s, t)`.
    pub fn block_pair(&self, s: usize, t: usize) -> (u32, u32) {
        (self.get(s, t), self.get(self.n + t, s))
    }

    /// Position in the lexicographic order of all `(n!)^{2n}` matrices.
    pub fn lex_rank(&self) -> BigUint {
        let radix = factorial(self.n);
        self.entries
            .chunks(self.n)
            .fold(BigUint::zero(), |acc, row| {
                acc * &radix + BigUint::from(Permutation::new_unchecked(row.to_vec()).lex_rank())
            })
    }

    pub fn from_lex_rank(n: usize, rank: &BigUint) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        if *rank >= pi_cardinality(n) {
            return Err(Error::InvalidArgument(format!(
                "rank {rank} out of range for Pi matrices of order {n}"
            )));
        }
        Ok(PiMatrix {
            n,
            entries: unrank_rows(n, 2 * n, rank),
        })
    }
}

/// `|Πₙ| = (n!)^{2n}`.
pub fn pi_cardinality(n: usize) -> BigUint {
    factorial(n).pow(2 * n as u32)
}

fn unrank_rows(n: usize, rows: usize, rank: &BigUint) -> Vec<u32> {
    let radix = factorial(n);
    let mut digits = Vec::with_capacity(rows);
    let mut rest = rank.clone();
    for _ in 0..rows {
        let (q, r) = rest.div_rem(&radix);
        digits.push(r.to_u128().expect("row rank below n! fits in u128"));
        rest = q;
    }
    digits
        .into_iter()
        .rev()
        .flat_map(|d| lex_unrank(n, d))
        .collect()
}

/// The bijection `Πₙ → Σ_{n²}`.
pub fn phi(p: &PiMatrix) -> SPermutationMatrix {
    let n = p.n;
    let mut column_of_row = vec![0u32; n * n];
    for s in 1..=n {
        for t in 1..=n {
            let (k, l) = p.block_pair(s, t);
            let row = (s - 1) * n + k as usize;
            let col = (t - 1) * n + l as usize;
            column_of_row[row - 1] = col as u32;
        }
    }
    SPermutationMatrix::new_unchecked(n, column_of_row)
}

/// The unique `P` with `phi(P) == a`.
pub fn phi_inverse(a: &SPermutationMatrix) -> PiMatrix {
    let n = a.n();
    let mut entries = vec![0u32; 2 * n * n];
    for (r, &c) in a.column_of_row().iter().enumerate() {
        let (s, k) = (r / n, r % n + 1);
        let c = c as usize - 1;
        let (t, l) = (c / n, c % n + 1);
        // p[s][t] = k, p[n+t][s] = l (0-based s, t here)
        entries[s * n + t] = k as u32;
        entries[(n + t) * n + s] = l as u32;
    }
    PiMatrix { n, entries }
}

/// True iff no block coordinate `(s, t)` gives the same ordered pair
/// `<c_{s,t}, c_{n+t,s}>` in both matrices.
pub fn are_disjoint_pi(c: &PiMatrix, d: &PiMatrix) -> Result<bool> {
    if c.n != d.n {
        return Err(Error::SizeMismatch {
            expected: c.n,
            found: d.n,
        });
    }
    let n = c.n;
    Ok((1..=n).all(|s| (1..=n).all(|t| c.block_pair(s, t) != d.block_pair(s, t))))
}

/// Lazy lexicographic stream over `Πₙ`, or over the shard of it whose first
/// row is fixed.
#[derive(Debug, Clone)]
pub struct PiEnumerator {
    n: usize,
    current: Vec<u32>,
    // rows before this index never change
    first_free_row: usize,
    done: bool,
}

impl PiEnumerator {
    fn bounded_rank(&self) -> (BigUint, BigUint) {
        // (rank within the free rows, size of the free space)
        let radix = factorial(self.n);
        let mut rank = BigUint::zero();
        for row in self.current.chunks(self.n).skip(self.first_free_row) {
            rank =
                rank * &radix + BigUint::from(Permutation::new_unchecked(row.to_vec()).lex_rank());
        }
        let free = 2 * self.n - self.first_free_row;
        (rank, radix.pow(free as u32))
    }

    /// Skips `count` matrices in `O(n³)` big-integer work rather than
    /// stepping through them.
    pub fn advance_by_big(&mut self, count: &BigUint) {
        if self.done || count.is_zero() {
            return;
        }
        let (rank, size) = self.bounded_rank();
        let target = rank + count;
        if target >= size {
            self.done = true;
            return;
        }
        let free = 2 * self.n - self.first_free_row;
        let tail = unrank_rows(self.n, free, &target);
        let start = self.first_free_row * self.n;
        self.current[start..].copy_from_slice(&tail);
    }

    /// Number of matrices this stream still has to yield.
    pub fn remaining(&self) -> BigUint {
        if self.done {
            return BigUint::zero();
        }
        let (rank, size) = self.bounded_rank();
        size - rank
    }

    fn step(&mut self) {
        let n = self.n;
        for row in (self.first_free_row..2 * n).rev() {
            if next_lex(&mut self.current[row * n..(row + 1) * n]) {
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for PiEnumerator {
    type Item = PiMatrix;

    fn next(&mut self) -> Option<PiMatrix> {
        if self.done {
            return None;
        }
        let out = PiMatrix {
            n: self.n,
            entries: self.current.clone(),
        };
        self.step();
        Some(out)
    }

    fn nth(&mut self, k: usize) -> Option<PiMatrix> {
        self.advance_by_big(&BigUint::from(k));
        self.next()
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        match self.remaining().to_usize() {
            Some(r) => (r, Some(r)),
            None => (usize::MAX, None),
        }
    }
}

/// Every `Πₙ` matrix exactly once, lexicographic over the concatenated rows.
pub fn enumerate_pi(n: usize) -> PiEnumerator {
    assert!(n >= 1, "n must be at least 1");
    PiEnumerator {
        n,
        current: PiMatrix::first(n).entries,
        first_free_row: 0,
        done: false,
    }
}

/// The `n!` shards of `Πₙ` keyed by first row, in lexicographic order of
/// that row. Concatenating them reproduces [`enumerate_pi`].
pub fn pi_shards(n: usize) -> Vec<PiEnumerator> {
    assert!(n >= 1, "n must be at least 1");
    let count = factorial_u128(n).expect("n! fits in 128 bits for shardable n");
    (0..count)
        .map(|r| {
            let mut current = lex_unrank(n, r);
            current.extend(PiMatrix::first(n).entries.into_iter().skip(n));
            PiEnumerator {
                n,
                current,
                first_free_row: 1,
                done: false,
            }
        })
        .collect()
}

/// `phi` applied to each element of a [`PiEnumerator`]; no candidate is
/// ever rejected.
#[derive(Debug, Clone)]
pub struct BijectiveGenerator {
    inner: PiEnumerator,
}

impl BijectiveGenerator {
    pub fn advance_by_big(&mut self, count: &BigUint) {
        self.inner.advance_by_big(count);
    }

    pub fn remaining(&self) -> BigUint {
        self.inner.remaining()
    }

    /// The `Πₙ` stream underneath, for emitting pre-images.
    pub fn into_pi(self) -> PiEnumerator {
        self.inner
    }
}

impl Iterator for BijectiveGenerator {
    type Item = SPermutationMatrix;

    fn next(&mut self) -> Option<SPermutationMatrix> {
        self.inner.next().map(|p| phi(&p))
    }

    fn nth(&mut self, k: usize) -> Option<SPermutationMatrix> {
        self.inner.nth(k).map(|p| phi(&p))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.inner.size_hint()
    }
}

pub fn generate_bijective(n: usize) -> BijectiveGenerator {
    BijectiveGenerator {
        inner: enumerate_pi(n),
    }
}

/// [`generate_bijective`] split by the first row of the pre-image.
pub fn generate_bijective_sharded(n: usize) -> Vec<BijectiveGenerator> {
    pi_shards(n)
        .into_iter()
        .map(|inner| BijectiveGenerator { inner })
        .collect()
}

/// Counts `Σ_{n²}` by running every shard of the bijective generator in
/// parallel and summing.
pub fn count_bijective_parallel(n: usize) -> BigUint {
    generate_bijective_sharded(n)
        .into_par_iter()
        .map(|g| g.count() as u64)
        .sum::<u64>()
        .into()
}

pub const NAIVE_LIMIT: usize = 3;

/// Rejection baseline: walks all `(n²)!` permutations of `1..=n²` in
/// lexicographic order, builds each permutation matrix and keeps those
/// whose every block holds a single 1.
#[derive(Debug, Clone)]
pub struct NaiveGenerator {
    n: usize,
    current: Vec<u32>,
    done: bool,
    candidates: u64,
    survivors: u64,
}

impl NaiveGenerator {
    /// Permutation matrices built and checked so far.
    pub fn candidates_examined(&self) -> u64 {
        self.candidates
    }

    pub fn survivors(&self) -> u64 {
        self.survivors
    }
}

impl Iterator for NaiveGenerator {
    type Item = SPermutationMatrix;

    fn next(&mut self) -> Option<SPermutationMatrix> {
        let side = self.n * self.n;
        while !self.done {
            self.candidates += 1;
            let mut dense = BinaryMatrix::zeros(side);
            for (i, &p) in self.current.iter().enumerate() {
                dense.set(i + 1, p as usize, true);
            }
            let keep = every_block_has_single_one(&dense, self.n);
            let out = keep.then(|| self.current.clone());
            if !next_lex(&mut self.current) {
                self.done = true;
            }
            if let Some(cols) = out {
                self.survivors += 1;
                return Some(SPermutationMatrix::new_unchecked(self.n, cols));
            }
        }
        None
    }
}

/// `(n²)!`, the number of candidates the naive generator examines.
pub fn naive_candidate_count(n: usize) -> BigUint {
    factorial(n * n)
}

pub fn generate_naive(n: usize, guard: Guard) -> Result<NaiveGenerator> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    guard.check("naive generation", n, NAIVE_LIMIT, || {
        naive_candidate_count(n)
    })?;
    Ok(NaiveGenerator {
        n,
        current: (1..=(n * n) as u32).collect(),
        done: false,
        candidates: 0,
        survivors: 0,
    })
}

/// `(n²)! / (n!)^{2n}`: candidates examined by the naive generator per
/// S-permutation matrix produced.
pub fn naive_overhead_ratio(n: usize) -> BigRational {
    BigRational::new(naive_candidate_count(n).into(), pi_cardinality(n).into())
}

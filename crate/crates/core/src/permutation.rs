//! Permutations of `1..=m` and their lexicographic successor / rank machinery.

use crate::error::{Error, Result};

/// A rearrangement `<p_1, ..., p_m>` of the integers `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<u32>,
}

impl Permutation {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        validate(&values)?;
        Ok(Permutation { values })
    }

    pub(crate) fn new_unchecked(values: Vec<u32>) -> Self {
        debug_assert!(validate(&values).is_ok());
        Permutation { values }
    }

    /// `<1, 2, ..., m>`, the lexicographically first permutation.
    pub fn identity(m: usize) -> Self {
        Permutation {
            values: (1..=m as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The entries `p_1..p_m` (1-based values, 0-based slice).
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// `p_i` for 1-based `i`.
    pub fn get(&self, i: usize) -> u32 {
        self.values[i - 1]
    }

    /// Position of this permutation in the lexicographic order of all `m!`
    /// permutations of `1..=m`, starting at 0.
    pub fn lex_rank(&self) -> u128 {
        lex_rank(&self.values)
    }

    /// Inverse of [`Permutation::lex_rank`].
    pub fn from_lex_rank(m: usize, rank: u128) -> Result<Self> {
        let total = factorial_u128(m)
            .ok_or_else(|| Error::InvalidArgument(format!("{m}! does not fit in 128 bits")))?;
        if rank >= total {
            return Err(Error::InvalidArgument(format!(
                "rank {rank} out of range for permutations of length {m}"
            )));
        }
        Ok(Permutation {
            values: lex_unrank(m, rank),
        })
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("<")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(">")
    }
}

fn validate(values: &[u32]) -> Result<()> {
    let m = values.len();
    let mut seen = vec![false; m];
    for &v in values {
        let v = v as usize;
        if v == 0 || v > m {
            return Err(Error::InvalidPermutation {
                len: m,
                reason: format!("value {v} out of range"),
            });
        }
        if std::mem::replace(&mut seen[v - 1], true) {
            return Err(Error::InvalidPermutation {
                len: m,
                reason: format!("value {v} repeated"),
            });
        }
    }
    Ok(())
}

/// Rearranges `values` into its lexicographic successor. Returns `false` and
/// leaves the slice sorted ascending when `values` was the last permutation.
pub(crate) fn next_lex<T: Ord>(values: &mut [T]) -> bool {
    let len = values.len();
    if len < 2 {
        return false;
    }
    let mut i = len - 1;
    while i > 0 && values[i - 1] >= values[i] {
        i -= 1;
    }
    if i == 0 {
        values.reverse();
        return false;
    }
    let mut j = len - 1;
    while values[j] <= values[i - 1] {
        j -= 1;
    }
    values.swap(i - 1, j);
    values[i..].reverse();
    true
}

pub(crate) fn factorial_u128(m: usize) -> Option<u128> {
    (1..=m as u128).try_fold(1u128, |acc, x| acc.checked_mul(x))
}

fn lex_rank(values: &[u32]) -> u128 {
    let m = values.len();
    let mut rank = 0u128;
    for i in 0..m {
        let smaller_after = values[i + 1..].iter().filter(|&&v| v < values[i]).count();
        rank = rank * (m - i) as u128 + smaller_after as u128;
    }
    rank
}

pub(crate) fn lex_unrank(m: usize, mut rank: u128) -> Vec<u32> {
    // factorial number system digits, most significant first
    let mut digits = vec![0usize; m];
    for i in (0..m).rev() {
        let base = (m - i) as u128;
        digits[i] = (rank % base) as usize;
        rank /= base;
    }
    let mut pool: Vec<u32> = (1..=m as u32).collect();
    digits.into_iter().map(|d| pool.remove(d)).collect()
}

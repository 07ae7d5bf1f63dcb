//! Exact counts of `Λₙᵏ`-matrices (`n × n` binary matrices with `k` ones in
//! every row and column) and of `n² × n²` matrices with `k` ones in every
//! row, column and block.
//!
//! λ(n,2) has four independent routes (a partition sum and three
//! recursions); λ(n,3) has an explicit alternating sum. The backtracking
//! counters at the bottom of the module are the oracles for all of them.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::guard::Guard;

/// Exact nonnegative count.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn new(value: BigUint) -> Self {
        BigCount(value)
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_inner(self) -> BigUint {
        self.0
    }

    pub fn to_u128(&self) -> Option<u128> {
        self.0.to_u128()
    }

    /// Converts a signed or rational total, failing unless it is a
    /// nonnegative integer.
    fn from_rational(total: &BigRational, what: &str) -> Result<Self> {
        if !total.is_integer() {
            return Err(Error::Internal(format!(
                "{what}: exact total {total} is not an integer"
            )));
        }
        Self::from_bigint(total.to_integer(), what)
    }

    fn from_bigint(value: BigInt, what: &str) -> Result<Self> {
        match value.sign() {
            Sign::Minus => Err(Error::Internal(format!("{what}: negative total {value}"))),
            _ => Ok(BigCount(value.magnitude().clone())),
        }
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<u128> for BigCount {
    fn from(v: u128) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl PartialEq<u64> for BigCount {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, x| acc * x)
}

fn factorial_int(n: usize) -> BigInt {
    BigInt::from(factorial(n))
}

/// λ(n,1) = n!
pub fn lambda_k1(n: usize) -> BigCount {
    BigCount(factorial(n))
}

/// Solutions of `2x₂ + 3x₃ + ⋯ + n·xₙ = n` in nonnegative integers, each as
/// the vector `[x₂, …, xₙ]`, in lexicographic order.
pub fn k2_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(r: usize, n: usize, rem: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if r > n {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for x in 0..=rem / r {
            cur.push(x);
            rec(r + 1, n, rem - r * x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n >= 2 {
        rec(2, n, n, &mut Vec::with_capacity(n - 1), &mut out);
    }
    out
}

/// The summands `(n!)² / ∏ x_r!·(2r)^{x_r}` of the partition-sum formula for
/// λ(n,2), paired with their solution vectors `[x₂, …, xₙ]`.
pub fn lambda_k2_sum_terms(n: usize) -> Vec<(Vec<usize>, BigRational)> {
    let numerator = factorial_int(n).pow(2u32);
    k2_partitions(n)
        .into_iter()
        .map(|xs| {
            let denominator = xs.iter().enumerate().fold(BigInt::one(), |acc, (idx, &x)| {
                let r = idx + 2;
                acc * factorial_int(x) * BigInt::from(2 * r).pow(x as u32)
            });
            let term = BigRational::new(numerator.clone(), denominator);
            (xs, term)
        })
        .collect()
}

/// λ(n,2) as the sum over all solutions of `2x₂ + ⋯ + n·xₙ = n`.
pub fn lambda_k2_sum(n: usize) -> Result<BigCount> {
    let total = lambda_k2_sum_terms(n)
        .into_iter()
        .fold(BigRational::zero(), |acc, (_, t)| acc + t);
    BigCount::from_rational(&total, "partition sum for lambda(n,2)")
}

/// λ(n,2) by the three-term recursion
/// `λ(n) = ½·n(n−1)²·[(2n−3)λ(n−2) + (n−2)²λ(n−3)]`, `n ≥ 4`,
/// seeded with λ(1)=0, λ(2)=1, λ(3)=6.
pub fn lambda_k2_anand(n: usize) -> BigCount {
    if n == 0 {
        return BigCount::default();
    }
    let mut table: Vec<BigUint> = vec![BigUint::zero(), 0u32.into(), 1u32.into(), 6u32.into()];
    for m in 4..=n {
        let m_big = BigUint::from(m);
        let bracket = BigUint::from(2 * m - 3) * &table[m - 2]
            + BigUint::from((m - 2) * (m - 2)) * &table[m - 3];
        let twice = &m_big * BigUint::from((m - 1) * (m - 1)) * bracket;
        let (half, rem) = twice.div_rem(&BigUint::from(2u32));
        debug_assert!(rem.is_zero());
        table.push(half);
    }
    BigCount(table.swap_remove(n))
}

/// λ(n,2) by `λ(n) = (n−1)n·λ(n−1) + ((n−1)²n/2)·λ(n−2)`, `n ≥ 3`,
/// seeded with λ(1)=0, λ(2)=1.
pub fn lambda_k2_good(n: usize) -> BigCount {
    if n == 0 {
        return BigCount::default();
    }
    let mut table: Vec<BigUint> = vec![BigUint::zero(), 0u32.into(), 1u32.into()];
    for m in 3..=n {
        // (m-1)m is even, so the halving is exact
        let coeff = (m - 1) * (m - 1) * m / 2;
        let next =
            BigUint::from((m - 1) * m) * &table[m - 1] + BigUint::from(coeff) * &table[m - 2];
        table.push(next);
    }
    BigCount(table.swap_remove(n))
}

/// The auxiliary sequence π(m) carried alongside λ(m,2) by the coupled
/// recursion in [`lambda_k2_system`]. Index 0 is unused.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiSequence {
    values: Vec<BigCount>,
}

impl PiSequence {
    /// π(m) for `1 ≤ m ≤ self.max_index()`.
    pub fn get(&self, m: usize) -> Option<&BigCount> {
        if m == 0 {
            None
        } else {
            self.values.get(m)
        }
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }
}

/// λ(m,2) for `m = 1..=n` and π(m) for `m = 1..=max(n, 4)` from the coupled
/// system
///
/// ```text
/// λ(m+1) = m(2m−1)·λ(m) + m²·λ(m−1) − π(m+1),                              m ≥ 2
/// π(m+1) = m²(m−1)²/4 · [8(m−2)(m−3)·λ(m−2) + (m−2)²·λ(m−3) − 4π(m−1)],  m ≥ 4
/// ```
///
/// with λ(1)=0, λ(2)=1, π(1)=π(2)=π(3)=0, π(4)=9. The returned λ vector is
/// indexed from 1 (slot 0 holds 0).
pub fn lambda_k2_system_table(n: usize) -> Result<(Vec<BigCount>, PiSequence)> {
    let top = n.max(4);
    let mut lam: Vec<BigInt> = vec![BigInt::zero(); top + 1];
    let mut pi: Vec<BigInt> = vec![BigInt::zero(); top + 1];
    lam[2] = BigInt::one();
    pi[4] = BigInt::from(9);
    for m in 2..top {
        if m >= 4 {
            // m(m-1) is even, so m²(m-1)²/4 is an integer
            let half = BigInt::from(m * (m - 1) / 2);
            let bracket = BigInt::from(8 * (m - 2) * (m - 3)) * &lam[m - 2]
                + BigInt::from((m - 2) * (m - 2)) * &lam[m - 3]
                - BigInt::from(4) * &pi[m - 1];
            pi[m + 1] = &half * &half * bracket;
        }
        lam[m + 1] = BigInt::from(m * (2 * m - 1)) * &lam[m] + BigInt::from(m * m) * &lam[m - 1]
            - &pi[m + 1];
    }
    let convert = |v: Vec<BigInt>, what: &str| -> Result<Vec<BigCount>> {
        v.into_iter()
            .map(|x| BigCount::from_bigint(x, what))
            .collect()
    };
    let mut lam = convert(lam, "lambda(n,2) coupled system")?;
    lam.truncate(n + 1);
    let pi = PiSequence {
        values: convert(pi, "pi sequence")?,
    };
    Ok((lam, pi))
}

/// λ(n,2) via the coupled λ/π recursion; see [`lambda_k2_system_table`].
pub fn lambda_k2_system(n: usize) -> Result<BigCount> {
    let (mut lam, _) = lambda_k2_system_table(n)?;
    Ok(lam.swap_remove(n))
}

/// λ(n,3) as the exact alternating sum over all `α + β + γ = n`:
///
/// ```text
/// λ(n,3) = (n!²/6ⁿ) Σ (−1)^β (β+3γ)! 2^α 3^β / (α! β! γ!² 6^γ)
/// ```
pub fn lambda_k3_explicit(n: usize) -> Result<BigCount> {
    let mut sum = BigRational::zero();
    for alpha in 0..=n {
        for beta in 0..=n - alpha {
            let gamma = n - alpha - beta;
            let mut num = factorial_int(beta + 3 * gamma)
                * BigInt::from(2).pow(alpha as u32)
                * BigInt::from(3).pow(beta as u32);
            if beta % 2 == 1 {
                num = -num;
            }
            let den = factorial_int(alpha)
                * factorial_int(beta)
                * factorial_int(gamma).pow(2u32)
                * BigInt::from(6).pow(gamma as u32);
            sum += BigRational::new(num, den);
        }
    }
    let total = sum * BigRational::new(factorial_int(n).pow(2u32), BigInt::from(6).pow(n as u32));
    if total.is_negative() {
        return Err(Error::Internal(format!(
            "explicit lambda(n,3) sum is negative: {total}"
        )));
    }
    BigCount::from_rational(&total, "explicit lambda(n,3) sum")
}

/// μ(n,1) = (n!)^{2n}, the number of `n² × n²` S-permutation matrices.
pub fn mu_k1(n: usize) -> BigCount {
    BigCount(factorial(n).pow(2 * n as u32))
}

pub const LAMBDA_BRUTE_LIMIT: usize = 7;
pub const MU_BRUTE_LIMIT: usize = 2;

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Upper bound on the leaves visited by [`lambda_brute`]: `C(n,k)^n`.
pub fn lambda_brute_estimate(n: usize, k: usize) -> BigUint {
    binomial(n, k).pow(n as u32)
}

/// Upper bound on the leaves visited by [`mu_brute`]: `C(n²,k)^{n²}`.
pub fn mu_brute_estimate(n: usize, k: usize) -> BigUint {
    binomial(n * n, k).pow((n * n) as u32)
}

/// All `width`-bit masks with exactly `k` bits set, ascending.
fn masks_with_popcount(width: usize, k: usize) -> Vec<u64> {
    fn rec(start: usize, width: usize, left: usize, cur: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(cur);
            return;
        }
        for j in start..=width - left {
            rec(j + 1, width, left - 1, cur | 1 << j, out);
        }
    }
    let mut out = Vec::new();
    rec(0, width, k, 0, &mut out);
    out.sort_unstable();
    out
}

fn check_k(n: usize, k: usize, side: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if k == 0 || k > side {
        return Err(Error::InvalidArgument(format!(
            "k = {k} outside 1..={side}"
        )));
    }
    if side > 64 {
        return Err(Error::InvalidArgument(format!(
            "side {side} exceeds the 64-column limit of the backtracking counter"
        )));
    }
    Ok(())
}

/// Counts `Λₙᵏ`-matrices one by one: rows are chosen as `k`-subsets of the
/// columns, pruning any column whose sum would exceed `k` or could no longer
/// reach `k` in the rows left.
pub fn lambda_brute(n: usize, k: usize, guard: Guard) -> Result<BigCount> {
    check_k(n, k, n)?;
    guard.check("brute-force lambda count", n, LAMBDA_BRUTE_LIMIT, || {
        lambda_brute_estimate(n, k)
    })?;

    struct Search {
        n: usize,
        k: u32,
        rows: Vec<u64>,
        col_sums: Vec<u32>,
    }

    impl Search {
        fn go(&mut self, row: usize) -> u128 {
            if row == self.n {
                return 1;
            }
            let rows_left_after = (self.n - row - 1) as u32;
            let mut total = 0;
            for idx in 0..self.rows.len() {
                let mask = self.rows[idx];
                let fits = (0..self.n).all(|j| {
                    let s = self.col_sums[j] + (mask >> j & 1) as u32;
                    s <= self.k && self.k - s <= rows_left_after
                });
                if !fits {
                    continue;
                }
                for j in 0..self.n {
                    self.col_sums[j] += (mask >> j & 1) as u32;
                }
                total += self.go(row + 1);
                for j in 0..self.n {
                    self.col_sums[j] -= (mask >> j & 1) as u32;
                }
            }
            total
        }
    }

    let mut search = Search {
        n,
        k: k as u32,
        rows: masks_with_popcount(n, k),
        col_sums: vec![0; n],
    };
    Ok(BigCount::from(search.go(0)))
}

/// Counts `n² × n²` binary matrices with `k` ones in every row, every column
/// and every `n × n` block, by row-wise backtracking.
pub fn mu_brute(n: usize, k: usize, guard: Guard) -> Result<BigCount> {
    let side = n * n;
    check_k(n, k, side)?;
    guard.check("brute-force mu count", n, MU_BRUTE_LIMIT, || {
        mu_brute_estimate(n, k)
    })?;

    struct Search {
        n: usize,
        side: usize,
        k: u32,
        rows: Vec<u64>,
        col_sums: Vec<u32>,
        band_sums: Vec<u32>,
    }

    impl Search {
        fn block_count(&self, mask: u64, t: usize) -> u32 {
            let block = ((1u64 << self.n) - 1) << (t * self.n);
            (mask & block).count_ones()
        }

        fn go(&mut self, row: usize) -> u128 {
            if row == self.side {
                return 1;
            }
            let rows_left_after = (self.side - row - 1) as u32;
            let band_rows_left_after = (self.n - 1 - row % self.n) as u32;
            let band_capacity = band_rows_left_after * self.n as u32;
            let mut total = 0;
            for idx in 0..self.rows.len() {
                let mask = self.rows[idx];
                let cols_ok = (0..self.side).all(|j| {
                    let s = self.col_sums[j] + (mask >> j & 1) as u32;
                    s <= self.k && self.k - s <= rows_left_after
                });
                let blocks_ok = cols_ok
                    && (0..self.n).all(|t| {
                        let s = self.band_sums[t] + self.block_count(mask, t);
                        s <= self.k && self.k - s <= band_capacity
                    });
                if !blocks_ok {
                    continue;
                }
                let saved = self.band_sums.clone();
                for j in 0..self.side {
                    self.col_sums[j] += (mask >> j & 1) as u32;
                }
                for t in 0..self.n {
                    self.band_sums[t] += self.block_count(mask, t);
                }
                if band_rows_left_after == 0 {
                    // band complete; capacity check above forced every block to k
                    self.band_sums.iter_mut().for_each(|s| *s = 0);
                }
                total += self.go(row + 1);
                for j in 0..self.side {
                    self.col_sums[j] -= (mask >> j & 1) as u32;
                }
                self.band_sums = saved;
            }
            total
        }
    }

    let mut search = Search {
        n,
        side,
        k: k as u32,
        rows: masks_with_popcount(side, k),
        col_sums: vec![0; side],
        band_sums: vec![0; n],
    };
    Ok(BigCount::from(search.go(0)))
}

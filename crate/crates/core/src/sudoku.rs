//! Sudoku matrices as weighted sums of pairwise disjoint S-permutation
//! matrices: a grid `P` over `1..=n²` is valid exactly when
//! `P = 1·A₁ + 2·A₂ + ⋯ + n²·A_{n²}` for S-permutation matrices `A_v` no two
//! of which share a 1. `A_v` is the indicator of digit `v`.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Region, Result};
use crate::generate::{generate_bijective, pi_cardinality};
use crate::guard::Guard;
use crate::matrix::{are_disjoint_sigma, SPermutationMatrix};

/// An `n² × n²` grid over `1..=n²` whose rows, columns and blocks each hold
/// every value once.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SudokuMatrix {
    n: usize,
    // row-major, n⁴ cells
    cells: Vec<u32>,
}

impl SudokuMatrix {
    /// Validates `rows` as an `n² × n²` Sudoku grid.
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = check_shape(&rows)?;
        let cells: Vec<u32> = rows.into_iter().flatten().collect();
        if let Some(err) = first_violation(n, &cells) {
            return Err(err);
        }
        Ok(SudokuMatrix { n, cells })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn side(&self) -> usize {
        self.n * self.n
    }

    /// Cell `(i, j)`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.cells[(i - 1) * self.side() + (j - 1)]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.cells
            .chunks(self.side())
            .map(<[u32]>::to_vec)
            .collect()
    }
}

/// Returns the block order `n` when `rows` is `n² × n²` with entries in
/// `1..=n²`.
fn check_shape(rows: &[Vec<u32>]) -> Result<usize> {
    let side = rows.len();
    let n = (side as f64).sqrt().round() as usize;
    if n * n != side || side == 0 {
        return Err(Error::NotPerfectSquare { side });
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != side {
            return Err(Error::SizeMismatch {
                expected: side,
                found: row.len(),
            });
        }
        if let Some((j, v)) = row
            .iter()
            .enumerate()
            .find(|(_, &v)| v == 0 || v as usize > side)
        {
            return Err(Error::InvalidArgument(format!(
                "cell ({}, {}) holds {v}, outside 1..={side}",
                i + 1,
                j + 1
            )));
        }
    }
    Ok(n)
}

fn first_violation(n: usize, cells: &[u32]) -> Option<Error> {
    let side = n * n;
    let check = |region: Region, index: usize, members: &mut dyn Iterator<Item = u32>| {
        let mut counts = vec![0usize; side + 1];
        for v in members {
            counts[v as usize] += 1;
        }
        (1..=side).find(|&v| counts[v] != 1).map(|value| {
            // report a repeated value in preference to the missing one it displaces
            let value = (1..=side).find(|&v| counts[v] > 1).unwrap_or(value);
            Error::SudokuViolation {
                region,
                index,
                value,
                count: counts[value],
            }
        })
    };
    for i in 0..side {
        if let Some(e) = check(
            Region::Row,
            i + 1,
            &mut (0..side).map(|j| cells[i * side + j]),
        ) {
            return Some(e);
        }
    }
    for j in 0..side {
        if let Some(e) = check(
            Region::Column,
            j + 1,
            &mut (0..side).map(|i| cells[i * side + j]),
        ) {
            return Some(e);
        }
    }
    for b in 0..side {
        let (r0, c0) = ((b / n) * n, (b % n) * n);
        let mut members = (0..side).map(|x| cells[(r0 + x / n) * side + c0 + x % n]);
        if let Some(e) = check(Region::Block, b + 1, &mut members) {
            return Some(e);
        }
    }
    None
}

/// True iff `rows` satisfies every row, column and block constraint.
/// Entries outside `1..=n²` or a non-square shape are errors, not `false`.
pub fn is_sudoku(rows: &[Vec<u32>]) -> Result<bool> {
    let n = check_shape(rows)?;
    let cells: Vec<u32> = rows.iter().flatten().copied().collect();
    Ok(first_violation(n, &cells).is_none())
}

/// Validates a grid and reports the first violated constraint, if any.
pub fn validate(rows: &[Vec<u32>]) -> Result<()> {
    SudokuMatrix::new(rows.to_vec()).map(|_| ())
}

/// `1·A₁ + 2·A₂ + ⋯ + n²·A_{n²}` for a family of pairwise disjoint
/// S-permutation matrices of one order.
pub fn compose(parts: &[SPermutationMatrix]) -> Result<SudokuMatrix> {
    let n = parts
        .first()
        .map(SPermutationMatrix::n)
        .ok_or_else(|| Error::InvalidArgument("no parts given".into()))?;
    let side = n * n;
    if parts.len() != side {
        return Err(Error::SizeMismatch {
            expected: side,
            found: parts.len(),
        });
    }
    if let Some(bad) = parts.iter().find(|p| p.n() != n) {
        return Err(Error::SizeMismatch {
            expected: n,
            found: bad.n(),
        });
    }
    for a in 0..side {
        for b in a + 1..side {
            if !are_disjoint_sigma(&parts[a], &parts[b])? {
                let row = (0..side)
                    .find(|&r| parts[a].column_of_row()[r] == parts[b].column_of_row()[r])
                    .expect("non-disjoint pair shares a row");
                return Err(Error::NotDisjoint {
                    first: a + 1,
                    second: b + 1,
                    row: row + 1,
                    col: parts[a].column_of_row()[row] as usize,
                });
            }
        }
    }
    let mut cells = vec![0u32; side * side];
    for (v, part) in parts.iter().enumerate() {
        for (r, &c) in part.column_of_row().iter().enumerate() {
            cells[r * side + c as usize - 1] = v as u32 + 1;
        }
    }
    // n² pairwise disjoint parts with n² ones each fill all n⁴ cells
    debug_assert!(first_violation(n, &cells).is_none());
    Ok(SudokuMatrix { n, cells })
}

/// The indicator matrices `A₁, …, A_{n²}` of each digit, in value order.
pub fn decompose(s: &SudokuMatrix) -> Vec<SPermutationMatrix> {
    let side = s.side();
    let mut cols = vec![vec![0u32; side]; side];
    for (r, row) in s.cells.chunks(side).enumerate() {
        for (c, &v) in row.iter().enumerate() {
            cols[v as usize - 1][r] = c as u32 + 1;
        }
    }
    cols.into_iter()
        .map(|c| SPermutationMatrix::new_unchecked(s.n, c))
        .collect()
}

/// Validates raw rows and decomposes them.
pub fn decompose_rows(rows: Vec<Vec<u32>>) -> Result<Vec<SPermutationMatrix>> {
    SudokuMatrix::new(rows).map(|s| decompose(&s))
}

pub const SUDOKU_ENUMERATION_LIMIT: usize = 2;

/// Upper bound for the search: `|Σ|^{n²}` ordered selections.
pub fn sudoku_search_estimate(n: usize) -> BigUint {
    pi_cardinality(n).pow((n * n) as u32)
}

/// Depth-first search for ordered families `(A₁, …, A_{n²})` of pairwise
/// disjoint S-permutation matrices, yielding the composed grid for each.
#[derive(Debug, Clone)]
pub struct SudokuEnumerator {
    n: usize,
    candidates: Vec<SPermutationMatrix>,
    // chosen candidate index per depth; the last entry is the next one to try
    stack: Vec<usize>,
    done: bool,
}

impl SudokuEnumerator {
    fn new(n: usize, candidates: Vec<SPermutationMatrix>, first: Option<usize>) -> Self {
        let (stack, done) = match first {
            Some(a1) => (vec![a1], false),
            None => (vec![0], candidates.is_empty()),
        };
        SudokuEnumerator {
            n,
            candidates,
            stack,
            done,
        }
    }

    fn fits(&self, depth: usize, idx: usize) -> bool {
        let c = &self.candidates[idx];
        self.stack[..depth].iter().all(|&p| {
            self.candidates[p]
                .column_of_row()
                .iter()
                .zip(c.column_of_row())
                .all(|(x, y)| x != y)
        })
    }

    /// Moves the last stack slot to the next candidate, popping exhausted
    /// levels. The bottom level is frozen when enumerating a single shard.
    fn bump(&mut self, frozen_root: bool) {
        loop {
            let depth = self.stack.len() - 1;
            let next = self.stack[depth] + 1;
            let root_locked = depth == 0 && frozen_root;
            if next < self.candidates.len() && !root_locked {
                self.stack[depth] = next;
                return;
            }
            self.stack.pop();
            if self.stack.is_empty() {
                self.done = true;
                return;
            }
        }
    }

    fn advance(&mut self, frozen_root: bool) -> Option<SudokuMatrix> {
        let side = self.n * self.n;
        while !self.done {
            let depth = self.stack.len() - 1;
            let idx = self.stack[depth];
            if !self.fits(depth, idx) {
                self.bump(frozen_root);
                continue;
            }
            if depth + 1 == side {
                let parts: Vec<SPermutationMatrix> = self
                    .stack
                    .iter()
                    .map(|&i| self.candidates[i].clone())
                    .collect();
                self.bump(frozen_root);
                return Some(compose(&parts).expect("search keeps parts pairwise disjoint"));
            }
            self.stack.push(0);
        }
        None
    }
}

impl Iterator for SudokuEnumerator {
    type Item = SudokuMatrix;

    fn next(&mut self) -> Option<SudokuMatrix> {
        self.advance(false)
    }
}

/// A [`SudokuEnumerator`] restricted to one fixed `A₁`.
#[derive(Debug, Clone)]
pub struct SudokuShard(SudokuEnumerator);

impl Iterator for SudokuShard {
    type Item = SudokuMatrix;

    fn next(&mut self) -> Option<SudokuMatrix> {
        self.0.advance(true)
    }
}

/// Streams every `n² × n²` Sudoku grid, ordered by the lexicographic
/// positions of `A₁, A₂, …` in the bijective generator's output.
pub fn enumerate_sudoku(n: usize, guard: Guard) -> Result<SudokuEnumerator> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    guard.check("Sudoku enumeration", n, SUDOKU_ENUMERATION_LIMIT, || {
        sudoku_search_estimate(n)
    })?;
    Ok(SudokuEnumerator::new(
        n,
        generate_bijective(n).collect(),
        None,
    ))
}

/// One shard per choice of `A₁`; their union is [`enumerate_sudoku`].
pub fn sudoku_shards(n: usize, guard: Guard) -> Result<Vec<SudokuShard>> {
    let base = enumerate_sudoku(n, guard)?;
    Ok((0..base.candidates.len())
        .map(|a1| SudokuShard(SudokuEnumerator::new(n, base.candidates.clone(), Some(a1))))
        .collect())
}

pub fn count_sudoku(n: usize, guard: Guard) -> Result<BigUint> {
    Ok(BigUint::from(enumerate_sudoku(n, guard)?.count()))
}

/// [`count_sudoku`] with the shards counted in parallel and summed.
pub fn count_sudoku_parallel(n: usize, guard: Guard) -> Result<BigUint> {
    let total: usize = sudoku_shards(n, guard)?
        .into_par_iter()
        .map(Iterator::count)
        .sum();
    Ok(BigUint::from(total))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid4() -> Vec<Vec<u32>> {
        vec![
            vec![1, 2, 3, 4],
            vec![3, 4, 1, 2],
            vec![2, 1, 4, 3],
            vec![4, 3, 2, 1],
        ]
    }

    #[test]
    fn validity() {
        assert!(is_sudoku(&grid4()).unwrap());
        assert!(is_sudoku(&[vec![1]]).unwrap());
        let mut bad = grid4();
        bad[0][1] = 1;
        assert!(!is_sudoku(&bad).unwrap());
        assert!(is_sudoku(&[vec![0]]).is_err());
        assert!(is_sudoku(&[vec![1, 2], vec![2, 1]]).is_err());
    }

    #[test]
    fn violation_names_the_constraint() {
        let mut bad = grid4();
        bad[0][1] = 1;
        match validate(&bad) {
            Err(Error::SudokuViolation {
                region: Region::Row,
                index: 1,
                value: 1,
                count: 2,
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
        // rows and columns fine, block (1,1) repeats 1
        let latin = vec![
            vec![1, 2, 3, 4],
            vec![2, 1, 4, 3],
            vec![3, 4, 1, 2],
            vec![4, 3, 2, 1],
        ];
        assert!(matches!(
            validate(&latin),
            Err(Error::SudokuViolation {
                region: Region::Block,
                index: 1,
                ..
            })
        ));
    }

    #[test]
    fn decompose_grid() {
        let s = SudokuMatrix::new(grid4()).unwrap();
        let parts = decompose(&s);
        assert_eq!(parts.len(), 4);
        assert_eq!(
            parts[0].ones_positions(),
            vec![(1, 1), (2, 3), (3, 2), (4, 4)]
        );
        for a in 0..4 {
            for b in a + 1..4 {
                assert!(are_disjoint_sigma(&parts[a], &parts[b]).unwrap());
            }
        }
        assert_eq!(compose(&parts).unwrap(), s);
    }

    #[test]
    fn trivial_order_one() {
        let s = SudokuMatrix::new(vec![vec![1]]).unwrap();
        let parts = decompose(&s);
        assert_eq!(parts, vec![SPermutationMatrix::new(1, vec![1]).unwrap()]);
        assert_eq!(compose(&parts).unwrap(), s);
        assert_eq!(
            count_sudoku(1, Guard::Enforce).unwrap(),
            BigUint::from(1u32)
        );
    }

    #[test]
    fn compose_rejections() {
        let parts = decompose(&SudokuMatrix::new(grid4()).unwrap());
        let dup = vec![
            parts[0].clone(),
            parts[0].clone(),
            parts[2].clone(),
            parts[3].clone(),
        ];
        assert!(matches!(
            compose(&dup),
            Err(Error::NotDisjoint {
                first: 1,
                second: 2,
                row: 1,
                col: 1
            })
        ));
        assert!(compose(&parts[..3]).is_err());
        assert!(compose(&[]).is_err());
        let mixed = vec![
            parts[0].clone(),
            parts[1].clone(),
            parts[2].clone(),
            SPermutationMatrix::new(1, vec![1]).unwrap(),
        ];
        assert!(matches!(compose(&mixed), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn guard_refuses_order_three() {
        assert!(matches!(
            enumerate_sudoku(3, Guard::Enforce),
            Err(Error::GuardExceeded { .. })
        ));
    }
}

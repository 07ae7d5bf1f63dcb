//! Enumeration and exact counting of structured binary matrices.
//!
//! * [`count`]: λ(n,k), the number of `n × n` binary matrices with `k` ones
//!   in every row and column, for `k = 1, 2, 3` by closed formulas and
//!   recursions, and μ(n,1); brute-force counters check all of them.
//! * [`matrix`]: dense binary matrices, the `n × n` block partition of an
//!   `n² × n²` matrix, and S-permutation matrices (one 1 per row, column and
//!   block).
//! * [`generate`]: the bijection from `Πₙ` (the `2n × n` matrices with
//!   permutation rows) onto S-permutation matrices, and two generators of
//!   all S-permutation matrices: one through that bijection and a naive
//!   filter over all permutation matrices.
//! * [`sudoku`]: composing and decomposing Sudoku grids as sums of pairwise
//!   disjoint S-permutation matrices.
//! * [`format`]: the `.bm01`, `.spm`, `.pim` and `.sdk` text formats.

pub mod bench;
pub mod count;
pub mod error;
pub mod format;
pub mod generate;
pub mod guard;
pub mod matrix;
pub mod permutation;
pub mod sudoku;

pub use count::BigCount;
pub use error::{Error, Region, Result};
pub use generate::{are_disjoint_pi, phi, phi_inverse, PiMatrix};
pub use guard::Guard;
pub use matrix::{
    are_disjoint_sigma, block_view, is_lambda_matrix, is_s_permutation, permutation_to_matrix,
    BinaryMatrix, BlockIndex, SPermutationMatrix,
};
pub use permutation::Permutation;
pub use sudoku::SudokuMatrix;

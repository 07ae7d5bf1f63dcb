"""Smoke test for the smatrix_py extension module.

Build and install first, e.g. `maturin develop -m crates/python/Cargo.toml`.
"""

import smatrix_py as sm


def main():
    assert sm.lambda_count(4, 2) == 90
    assert sm.lambda_count(20, 2, method="good") == 444432474300844787327725684969440000
    assert sm.lambda_count(6, 3) == 297200
    assert sm.mu_count(3, 1) == 46656
    assert sm.pi_cardinality(4) == 110075314176

    try:
        sm.lambda_count(12, 5)
    except sm.GuardExceededError:
        pass
    else:
        raise AssertionError("guard did not fire")

    first = next(sm.generate_bijective(2))
    assert first == sm.phi(sm.PiMatrix.first(2))
    assert first.to_dense() == [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]
    assert sm.phi_inverse(first) == sm.PiMatrix([[1, 2]] * 4)

    images = list(sm.generate_bijective(2))
    assert len(images) == 16 and len(set(images)) == 16
    naive, examined = sm.generate_naive(2)
    assert examined == 24 and set(naive) == set(images)
    assert len(list(sm.generate_bijective(3, skip=46650, limit=10))) == 6

    grid = [[1, 2, 3, 4], [3, 4, 1, 2], [2, 1, 4, 3], [4, 3, 2, 1]]
    parts = sm.decompose(grid)
    assert all(sm.is_s_permutation(p.to_dense()) for p in parts)
    assert sm.compose(parts) == grid
    assert not sm.is_sudoku([[1, 2, 3, 4], [2, 1, 4, 3], [3, 4, 1, 2], [4, 3, 2, 1]])
    assert sm.count_sudoku(2) == 288
    print("smoke test passed")


if __name__ == "__main__":
    main()

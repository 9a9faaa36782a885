from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from quasinv.exact.field import Field
from quasinv.linalg.matrix import ExactMatrix, nullspace, nullspace_bareiss, rank
from quasinv.linalg.modular import (
    ModularLiftFailed, kernel_from_rref, nullspace_rational_modular, rref_mod_p_numpy, rref_mod_p_python,
)

QQ = Field.rationals()


@st.composite
def int_matrices(draw, max_rows=6, max_cols=7, bound=9):
    rows = draw(st.integers(min_value=1, max_value=max_rows))
    cols = draw(st.integers(min_value=1, max_value=max_cols))
    entry = st.integers(min_value=-bound, max_value=bound)
    return [draw(st.lists(entry, min_size=cols, max_size=cols)) for _ in range(rows)], cols


def _times(rows, v):
    return [sum(Fraction(a) * b for a, b in zip(row, v)) for row in rows]


def test_nullspace_known_matrix():
    M = ExactMatrix.from_rows(QQ, [[1, 2, 3], [2, 4, 6]])
    basis = nullspace(M)
    assert basis == [
        [Fraction(-2), Fraction(1), Fraction(0)],
        [Fraction(-3), Fraction(0), Fraction(1)],
    ]
    assert rank(M) == 1


def test_nullspace_full_rank_and_empty():
    assert nullspace(ExactMatrix.from_rows(QQ, [[1, 0], [0, 1]])) == []
    assert nullspace(ExactMatrix.from_rows(QQ, [], 3)) == [
        [1, 0, 0], [0, 1, 0], [0, 0, 1],
    ]


def test_nullspace_mod_p_differs_from_rationals():
    rows = [[1, 1], [1, -1]]
    assert nullspace(ExactMatrix.from_rows(QQ, rows)) == []
    assert nullspace(ExactMatrix.from_rows(Field.prime(2), rows)) == [[1, 1]]


@settings(max_examples=60)
@given(int_matrices())
def test_nullspace_exactness(data):
    rows, cols = data
    basis = nullspace(ExactMatrix.from_rows(QQ, rows, cols))
    for v in basis:
        assert all(x == 0 for x in _times(rows, v))
    assert len(basis) == cols - sympy.Matrix(rows).rank()


@settings(max_examples=60)
@given(int_matrices())
def test_modular_lift_agrees_with_bareiss(data):
    rows, cols = data
    exact, r = nullspace_bareiss(rows, cols)
    assert nullspace_rational_modular(rows, cols) == exact
    assert r == cols - len(exact)


@given(int_matrices(bound=50), st.sampled_from([2, 3, 7, 101]))
def test_numpy_and_python_elimination_agree(data, p):
    rows, cols = data
    R_np, piv_np = rref_mod_p_numpy(rows, cols, p)
    R_py, piv_py = rref_mod_p_python(rows, cols, p)
    assert piv_np == piv_py
    assert [[int(v) for v in row] for row in R_np] == R_py
    for v in kernel_from_rref(R_py, piv_py, cols, p):
        assert all(sum(a * b for a, b in zip(row, v)) % p == 0 for row in rows)


def test_large_prime_uses_python_elimination():
    p = 2147483659
    M = ExactMatrix.from_rows(Field.prime(p), [[1, 2], [3, 6]])
    assert nullspace(M) == [[p - 2, 1]]


def test_lift_failure_is_reported():
    with pytest.raises(ModularLiftFailed):
        nullspace_rational_modular([[1, -10**6]], 2, max_primes=1)


def test_nullspace_with_large_entries():
    M = ExactMatrix.from_rows(QQ, [[10**12, -1]])
    assert nullspace(M) == [[Fraction(1, 10**12), Fraction(1)]]


def test_matrix_apply_and_transpose():
    M = ExactMatrix.from_rows(Field.prime(5), [[1, 2, 3]])
    assert M.apply([1, 1, 1]) == [1]
    assert M.transpose().rows == 3
    with pytest.raises(ValueError):
        ExactMatrix.from_rows(QQ, [[1, 2], [3]])

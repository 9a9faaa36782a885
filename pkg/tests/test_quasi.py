from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st
from sympy.utilities.iterables import partitions

from quasinv.core.errors import UsageError
from quasinv.exact.field import Field
from quasinv.hilbert.series import expand_series, series_prefix
from quasinv.linalg.matrix import ExactMatrix, rank
from quasinv.poly.multipoly import MultiPoly, diff_power, diff_product, is_symmetric, monomials, random_poly
from quasinv.poly.parsing import parse_poly
from quasinv.quasi.space import (
    constraint_rows, is_quasi_invariant, lowest_nonsymmetric, nonsymmetric_degree, slice_basis, slice_dimension,
    symmetric_count,
)

QQ = Field.rationals()


@st.composite
def polys(draw, n=2, field=QQ, max_degree=4):
    exps = st.tuples(*[st.integers(min_value=0, max_value=max_degree)] * n)
    terms = draw(st.dictionaries(exps, st.integers(min_value=-5, max_value=5), max_size=5))
    return MultiPoly(n, field, {e: field.coerce(c) for e, c in terms.items()})


def test_membership_examples():
    assert is_quasi_invariant(diff_power(2, QQ, 1, 2, 3), 1)
    assert not is_quasi_invariant(parse_poly("x1", QQ, 2), 1)
    assert is_quasi_invariant(parse_poly("x1", QQ, 2), 0)
    assert is_quasi_invariant(parse_poly("x1^5 + x2^5 + x1*x2", QQ), 7)
    assert is_quasi_invariant(diff_product(3, 3, QQ), 1)
    assert not is_quasi_invariant(diff_product(3, 1, QQ), 1)


def test_characteristic_two_membership():
    # x1^4 - x2^4 = (x1 - x2)^4 over F_2
    F = parse_poly("x1^4", Field.prime(2), 2)
    assert is_quasi_invariant(F, 1)
    assert not is_quasi_invariant(parse_poly("x1^4", QQ, 2), 1)


@settings(max_examples=40)
@given(polys(), st.integers(min_value=0, max_value=3))
def test_even_power_divisibility_forces_odd(G, m):
    F = diff_power(2, QQ, 1, 2, 2 * m) * G
    assert is_quasi_invariant(F, m)


@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_two_variable_series(m):
    numerator = [1] + [0] * (2 * m) + [1]
    assert list(series_prefix(2, m, QQ, 9).coeffs) == expand_series(numerator, 2, 9)


def test_symmetric_count():
    assert symmetric_count(3, 4) == 4
    assert symmetric_count(2, 5) == 3
    assert symmetric_count(1, 7) == 1
    assert symmetric_count(4, 0) == 1


def test_slices_below_2m_plus_1_are_symmetric():
    for d in range(5):
        assert slice_basis(3, 2, d, QQ).dim == symmetric_count(3, d)


def test_slice_basis_members():
    sl = slice_basis(3, 1, 4, QQ)
    assert sl.dim == 6
    assert all(is_quasi_invariant(F, 1) for F in sl.basis)
    assert any(not is_symmetric(F) for F in sl.basis)
    assert all(F.is_homogeneous() and F.degree() == 4 for F in sl.basis)


def test_constraint_rows_shape():
    cols, rows = constraint_rows(3, 1, 4)
    assert len(cols) == 15
    assert all(len(r) == 15 for r in rows)
    assert rows


@pytest.mark.parametrize("p", [2, 3, 5])
def test_prime_field_dimensions_dominate(p):
    Fp = Field.prime(p)
    for d in range(8):
        assert slice_basis(3, 1, d, Fp).dim >= slice_basis(3, 1, d, QQ).dim


def test_lowest_nonsymmetric():
    d, F = lowest_nonsymmetric(3, 1, QQ)
    assert d == 4
    assert is_quasi_invariant(F, 1) and not is_symmetric(F)
    assert lowest_nonsymmetric(2, 1, QQ)[0] == 3
    assert lowest_nonsymmetric(3, 1, Field.prime(3))[0] == 3
    assert lowest_nonsymmetric(3, 1, Field.prime(2))[0] == 4
    assert lowest_nonsymmetric(3, 1, QQ, d_cap=3) is None
    assert lowest_nonsymmetric(1, 4, QQ) is None


def test_bad_parameters():
    with pytest.raises(UsageError):
        slice_basis(0, 1, 1, QQ)
    with pytest.raises(UsageError):
        slice_basis(2, -1, 1, QQ)


def in_span(F, sl):
    cols = monomials(sl.n, sl.d)
    rows = [[b.coefficient(a) for a in cols] for b in sl.basis]
    rows.append([F.coefficient(a) for a in cols])
    return rank(ExactMatrix.from_rows(sl.field, rows, len(cols))) == sl.dim


def monomial_symmetric(n, field, shape):
    padded = tuple(shape) + (0,) * (n - len(shape))
    return sum(
        (MultiPoly.monomial(n, field, e) for e in set(permutations(padded))),
        MultiPoly.zero(n, field),
    )


@pytest.mark.parametrize("field", [QQ, Field.prime(2), Field.prime(3)], ids=str)
@pytest.mark.parametrize("m", [1, 2, 3])
def test_dimension_decreases_in_m(field, m):
    for d in range(10):
        assert slice_dimension(3, m, d, field) <= slice_dimension(3, m - 1, d, field)


@settings(max_examples=25, deadline=None)
@given(st.data(), st.sampled_from([(2, 1, 4), (3, 1, 4), (3, 1, 5), (3, 2, 7)]))
def test_membership_is_slice_span(data, case):
    n, m, d = case
    F = random_poly(n, QQ, d, lambda: data.draw(st.integers(min_value=-3, max_value=3)), homogeneous=True)
    sl = slice_basis(n, m, d, QQ)
    assert is_quasi_invariant(F, m) == in_span(F, sl)


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_combinations_of_basis_are_members(data):
    sl = slice_basis(3, 1, 5, QQ)
    F = MultiPoly.zero(3, QQ)
    for b in sl.basis:
        F = F + b.scale(QQ.coerce(data.draw(st.integers(min_value=-4, max_value=4))))
    assert is_quasi_invariant(F, 1)
    assert in_span(F, sl)


@pytest.mark.parametrize("field", [QQ, Field.prime(2), Field.prime(5)], ids=str)
@pytest.mark.parametrize("n,m,d", [(2, 2, 6), (3, 1, 5), (3, 2, 6), (4, 1, 4)])
def test_monomial_symmetric_polynomials_are_in_slice(field, n, m, d):
    sl = slice_basis(n, m, d, field)
    shapes = [sorted((k for k, c in p.items() for _ in range(c)), reverse=True) for p in partitions(d, m=n)]
    assert len(shapes) == symmetric_count(n, d)
    for shape in shapes:
        F = monomial_symmetric(n, field, shape)
        assert is_symmetric(F)
        assert is_quasi_invariant(F, m)
        assert in_span(F, sl)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
@pytest.mark.parametrize("m", [1, 2])
def test_rank_dimension_matches_basis(p, m):
    Fp = Field.prime(p)
    for d in range(3 * m + 2):
        assert slice_dimension(3, m, d, Fp) == slice_basis(3, m, d, Fp).dim


@pytest.mark.parametrize("field,m", [(QQ, 1), (Field.prime(2), 1), (Field.prime(3), 1), (Field.prime(5), 2), (QQ, 2)])
def test_nonsymmetric_degree_matches_search(field, m):
    assert nonsymmetric_degree(3, m, field) == lowest_nonsymmetric(3, m, field)[0]


def test_nonsymmetric_degree_with_known_element():
    assert nonsymmetric_degree(3, 1, Field.prime(3), known=3) == 3
    assert nonsymmetric_degree(3, 0, QQ) == 1
    with pytest.raises(UsageError):
        nonsymmetric_degree(1, 2, QQ)

from math import factorial

import pytest
from hypothesis import given, strategies as st

from quasinv.charp.scan import expected_n3_numerator
from quasinv.core.errors import UsageError
from quasinv.exact.field import Field
from quasinv.hilbert.checks import NotStabilized, structure_checks
from quasinv.hilbert.felder_veselov import felder_veselov
from quasinv.hilbert.series import (
    Numerator, PrefixTooShort, SeriesPrefix, expand_series, format_t_poly, lowest_nonsymmetric_degree,
    multiply_denominator, numerator_from_prefix, prefix_length, series_prefix, top_degree,
)
from quasinv.hilbert.young import (
    YoungDiagram, conjugate_partition, standard_tableaux_count, young_diagrams,
)

QQ = Field.rationals()


def test_young_diagrams_of_four():
    shapes = [yd.shape for yd in young_diagrams(4)]
    assert shapes == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


def test_hooks():
    yd = YoungDiagram((3, 1))
    assert yd.hooks() == [4, 2, 1, 1]
    assert yd.hooks("column") == [4, 1, 2, 1]
    assert yd.conjugate == (2, 1, 1)
    assert conjugate_partition(()) == ()
    with pytest.raises(UsageError):
        YoungDiagram((1, 2))


@pytest.mark.parametrize("n", range(1, 8))
def test_hook_formula_matches_tableau_count(n):
    diagrams = young_diagrams(n)
    for yd in diagrams:
        assert yd.hook_count() == standard_tableaux_count(yd.shape)
    assert sum(yd.hook_count() ** 2 for yd in diagrams) == factorial(n)


def test_format_t_poly():
    assert format_t_poly([1, 0, 0, 3, 0, -1]) == "1+3t^3-t^5"
    assert format_t_poly([0, 1, 2]) == "t+2t^2"
    assert format_t_poly([]) == "0"
    assert format_t_poly([-1, -1]) == "-1-t"


@given(st.lists(st.integers(min_value=-20, max_value=20), min_size=1, max_size=12), st.integers(min_value=1, max_value=4))
def test_expand_and_multiply_are_inverse(G, n):
    d_max = len(G) - 1
    assert multiply_denominator(expand_series(G, n, d_max), n) == G


def test_length_rule():
    assert top_degree(3, 1) == 9
    assert prefix_length(3, 1) == 15
    assert prefix_length(4, 1) == 28


@pytest.mark.parametrize("m", range(0, 5))
def test_felder_veselov_two_variables(m):
    assert felder_veselov(2, m).coeffs == tuple([1] + [0] * (2 * m) + [1])


@pytest.mark.parametrize("m", range(0, 5))
def test_felder_veselov_three_variables(m):
    assert list(felder_veselov(3, m).coeffs) == expected_n3_numerator(m, 3 * m + 1)


@pytest.mark.parametrize("n,m", [(3, 2), (4, 1), (4, 2), (5, 1)])
def test_felder_veselov_structure(n, m):
    G = felder_veselov(n, m)
    assert structure_checks(G).all_ok()
    assert lowest_nonsymmetric_degree(G) == m * n + 1
    assert felder_veselov(n, m, "column") == G


def test_felder_veselov_rejects_bad_input():
    with pytest.raises(UsageError):
        felder_veselov(0, 1)
    with pytest.raises(UsageError):
        felder_veselov(3, -1)


def test_computed_series_matches_felder_veselov():
    H = series_prefix(3, 1, QQ, prefix_length(3, 1))
    G = numerator_from_prefix(H)
    assert G.stabilized
    assert G.coeffs == felder_veselov(3, 1).coeffs
    assert str(G) == "1+2t^4+2t^5+t^9"


def test_two_variables_over_rationals():
    H = series_prefix(2, 1, QQ, 6)
    assert H.coeffs == (1, 1, 2, 3, 4, 5, 6)
    G = numerator_from_prefix(H)
    assert str(G) == "1+t^3"
    assert structure_checks(G).all_ok()


def test_four_variables_over_f2_prefix():
    H = series_prefix(4, 1, Field.prime(2), 10)
    assert H.coeffs == (1, 1, 2, 3, 8, 9, 15, 23, 38, 50, 71)
    G = numerator_from_prefix(H, allow_partial=True)
    assert not G.stabilized
    assert G.coeffs == (1, 0, 0, 0, 3, 0, 0, 3, 5, 3, -1)
    assert lowest_nonsymmetric_degree(G) == 4

    report = structure_checks(G, require_stabilized=False)
    assert report.nonneg.ok is False
    assert report.nonneg.detail == "coefficient -1 at t^10"
    assert report.top_degree_ok.ok is None
    assert report.palindromic.ok is None
    assert report.rank_ok.ok is None
    assert not report.all_ok()


def test_short_prefix():
    H = series_prefix(3, 1, QQ, 4)
    with pytest.raises(PrefixTooShort):
        numerator_from_prefix(H)
    with pytest.raises(NotStabilized):
        structure_checks(numerator_from_prefix(H, allow_partial=True))
    with pytest.raises(UsageError):
        series_prefix(3, 1, QQ, -1)


def test_structure_checks_report_failures():
    G = Numerator(2, 1, QQ, (1, 1, 0, 2), True, 8)
    report = structure_checks(G)
    assert report.top_degree_ok.ok
    assert report.palindromic.ok is False
    assert report.palindromic.detail == "t^0 has 1 but t^3 has 2"
    assert report.rank_ok.ok is False
    assert report.rank_ok.detail == "G(1) = 4, expected 2"
    assert report.nonneg.ok


def test_stabilization_needs_vanishing_tail():
    # an invented prefix whose numerator keeps going beyond the top degree
    H = SeriesPrefix(2, 0, QQ, (1, 2, 3, 5, 7))
    G = numerator_from_prefix(H)
    assert not G.stabilized
    assert G.known_degree == 4


@pytest.mark.parametrize("m", range(0, 5))
@pytest.mark.parametrize("token", ["q", "fp:2", "fp:3", "fp:5", "fp:7"])
def test_two_variables_over_every_field(m, token):
    field = Field.parse(token)
    G = numerator_from_prefix(series_prefix(2, m, field, prefix_length(2, m)))
    assert G.stabilized
    assert G.coeffs == tuple([1] + [0] * (2 * m) + [1])


@pytest.mark.parametrize("n,m", [(2, 0), (2, 1), (2, 2), (2, 3), (3, 0), (3, 1), (3, 2), (4, 0)])
def test_felder_veselov_matches_nullspace(n, m):
    G = numerator_from_prefix(series_prefix(n, m, QQ, prefix_length(n, m)))
    assert G.stabilized
    assert G.coeffs == felder_veselov(n, m).coeffs


def test_felder_veselov_four_variables_prefix():
    G = felder_veselov(4, 1).coeffs
    assert list(series_prefix(4, 1, QQ, 8).coeffs) == expand_series(G, 4, 8)


@pytest.mark.slow
def test_felder_veselov_matches_nullspace_four_variables():
    G = numerator_from_prefix(series_prefix(4, 1, QQ, prefix_length(4, 1)))
    assert G.coeffs == felder_veselov(4, 1).coeffs


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("m", range(0, 4))
def test_felder_veselov_leading_shape(n, m):
    coeffs = felder_veselov(n, m).coeffs
    assert coeffs[: m * n + 2] == tuple([1] + [0] * (m * n) + [n - 1])

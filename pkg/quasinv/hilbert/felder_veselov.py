"""
Characteristic-zero Hilbert numerator of Q_m(n) by the Felder-Veselov sum
over Young diagrams:

    G(t) = n! t^{m C(n,2)} sum_lambda prod_i t^{m(l_i - a_i) + l_i} (1 - t^i) / (h_i (1 - t^{h_i}))

Each diagram term is a truncated power series with rational coefficients.
"""
import logging
from fractions import Fraction
from math import comb, factorial

from quasinv.core.errors import UsageError, VerificationFailure
from quasinv.exact.field import Field
from quasinv.exact.series import TruncatedSeries
from quasinv.hilbert.series import Numerator, prefix_length, top_degree
from quasinv.hilbert.young import BoxOrder, YoungDiagram, young_diagrams

logger = logging.getLogger(__name__)


class NonIntegerResult(VerificationFailure):
    def __init__(self, n: int, m: int, detail: str):
        self.n = n
        self.m = m
        super().__init__(f"Felder-Veselov sum for n={n}, m={m} is not an integer polynomial: {detail}")


def diagram_term(yd: YoungDiagram, m: int, order: int, box_order: BoxOrder = "row") -> TruncatedSeries:
    """
    t^{m C(n,2)} times the diagram's product, truncated at ``order``. The
    combined t-exponent m(C(n,2) - sum a_i) + sum l_i is never negative since
    the arms of any diagram sum to at most C(n,2).
    """
    n = yd.n
    boxes = yd.boxes(box_order)
    shift = m * comb(n, 2) + sum(m * (b.leg - b.arm) + b.leg for b in boxes)
    term = TruncatedSeries.one(order)
    scale = Fraction(1)
    for i, b in enumerate(boxes, start=1):
        term = term * TruncatedSeries.binomial_factor(i, order) * TruncatedSeries.geometric_inverse(b.hook, order)
        scale /= b.hook
    return term.scale(scale).shift(shift)


def felder_veselov(n: int, m: int, box_order: BoxOrder = "row") -> Numerator:
    if n < 1 or m < 0:
        raise UsageError(f"need n >= 1 and m >= 0, got n={n}, m={m}")
    top = top_degree(n, m)
    # n(n+1)/2 extra coefficients witness that the sum really terminates
    order = prefix_length(n, m) + 1
    total = TruncatedSeries.of([], order)
    for yd in young_diagrams(n):
        total = total + diagram_term(yd, m, order, box_order)
    total = total.scale(factorial(n))
    if not total.is_integral():
        bad = next(d for d, c in enumerate(total.coeffs) if c.denominator != 1)
        raise NonIntegerResult(n, m, f"coefficient of t^{bad} is {total.coeffs[bad]}")
    coeffs = total.integer_coeffs()
    if any(coeffs[top + 1:]):
        raise NonIntegerResult(n, m, f"nonzero coefficients beyond degree {top}")
    if coeffs[top] == 0:
        raise NonIntegerResult(n, m, f"degree is below {top}")
    logger.debug(f"Felder-Veselov numerator n={n} m={m}: {coeffs[: top + 1]}")
    return Numerator(n, m, Field.rationals(), tuple(coeffs[: top + 1]), True, top)

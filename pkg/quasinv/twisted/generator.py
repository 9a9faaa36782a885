"""
Explicit generators of twisted quasi-invariants in two variables.

For a single factor x^z the element

    P_m(x, y) = sum_i C(m-z, i) C(m+z, m-i) x^i y^{m-i} / C(2m, m)

lies in Q_m(x^z) with P_m(x, x) = x^m; for an integer 0 <= z < m the
monomial y^z does instead. Shifting by the root and multiplying over the
factors handles f = prod (x - a_i)^{b_i}.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from quasinv.core.errors import UsageError
from quasinv.exact.field import Field
from quasinv.exact.param import PARAMS, ParamPoly, binomial_param
from quasinv.poly.multipoly import MultiPoly, diff_power, substitute_shift
from quasinv.twisted.series import generator_degrees, relation_degrees
from quasinv.twisted.twist import TwistExponent, TwistSpec, as_rational

logger = logging.getLogger(__name__)


class UnsupportedExponent(UsageError):
    def __init__(self, m: int, z: TwistExponent):
        self.m = m
        self.z = z
        super().__init__(f"no generator is defined for the negative integer exponent {z} with |z| < m = {m}")


def _exponent(z: TwistExponent | int | str) -> TwistExponent:
    if isinstance(z, str):
        return ParamPoly.var(z)
    if isinstance(z, ParamPoly):
        r = as_rational(z)
        return r if r is not None else z
    return Fraction(z)


def generator_pm(m: int, z: TwistExponent | int | str) -> MultiPoly:
    """
    P_m in Q_m(x^z). Coefficients are rationals when z is a rational number
    and parameter polynomials when z is formal.
    """
    if m < 0:
        raise UsageError(f"m must be nonnegative, got {m}")
    b = _exponent(z)
    r = as_rational(b)
    if r is not None and r.denominator == 1 and abs(r) < m:
        if r < 0:
            raise UnsupportedExponent(m, b)
        return MultiPoly.monomial(2, Field.rationals(), (0, int(r)))
    top = ParamPoly.lift(b)
    norm = comb(2 * m, m)
    terms = {}
    for i in range(m + 1):
        terms[(i, m - i)] = binomial_param(m - top, i) * binomial_param(m + top, m - i) / norm
    P = MultiPoly(2, PARAMS, terms)
    if r is not None:
        QQ = Field.rationals()
        return P.map_coefficients(lambda c: QQ.coerce(c.constant_value()), QQ)
    return P


def _shift_both(F: MultiPoly, a: Fraction) -> MultiPoly:
    """F(x - a, y - a)."""
    return substitute_shift(substitute_shift(F, 1, -a), 2, -a)


def generator_for_twist(m: int, f: TwistSpec) -> MultiPoly:
    """
    prod_i P_m(x - a_i, y - a_i) for the factors (x - a_i)^{b_i}, a member of
    Q_m(f) whose diagonal restriction is prod (x - a_i)^{d_m(b_i)}.
    """
    ring = Field.rationals() if all(as_rational(b) is not None for _, b in f.factors) else PARAMS
    acc = MultiPoly.one(2, ring)
    for a, b in f.factors:
        P = generator_pm(m, b)
        if P.ring != ring:
            P = P.change_ring(ring)
        acc = acc * _shift_both(P, a)
    return acc


@dataclass(frozen=True)
class ModuleGenerators:
    m: int
    twist: TwistSpec
    generators: tuple[MultiPoly, ...]
    degrees: tuple[int, ...]
    relation_degrees: tuple[int, ...]


def module_generators(m: int, f: TwistSpec) -> ModuleGenerators:
    """
    P_m(f), (x-y)^2 P_{m-1}(f), ..., (x-y)^{2m-2} P_1(f), (x-y)^{2m}, (x-y)^{2m+1},
    generating Q_m(f) over the symmetric polynomials in x and y.
    """
    if m < 0:
        raise UsageError(f"m must be nonnegative, got {m}")
    gens: list[MultiPoly] = []
    for i in range(m, 0, -1):
        P = generator_for_twist(i, f)
        gens.append(diff_power(2, P.ring, 1, 2, 2 * (m - i)) * P)
    QQ = Field.rationals()
    ring = gens[0].ring if gens else QQ
    gens.append(diff_power(2, ring, 1, 2, 2 * m))
    gens.append(diff_power(2, ring, 1, 2, 2 * m + 1))
    gens = [g if g.ring == ring else g.change_ring(ring) for g in gens]
    logger.debug(f"module generators for m={m}, f={f}: degrees {[g.degree() for g in gens]}")
    return ModuleGenerators(m, f, tuple(gens), tuple(generator_degrees(m, f)), tuple(relation_degrees(m, f)))

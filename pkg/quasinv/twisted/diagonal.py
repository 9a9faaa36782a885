"""
Membership of twisted quasi-invariants through expansion at the diagonal.

Substituting x_i = S + T and x_j = S turns

    f(x_i) F - f(x_j) s_ij F

into a power series in T. After factoring out the unit prod (S - a_r)^{b_r},
the coefficient of T^k is N_k / prod (S - a_r)^k with N_k a polynomial in S,
the other variables and the formal parameters. F is a twisted
m-quasi-invariant for the pair iff N_0, ..., N_{2m} all vanish.
"""
import itertools
import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from quasinv.core.errors import UsageError
from quasinv.exact.param import PARAMS, ParamPoly, binomial_param
from quasinv.poly.multipoly import (
    MultiPoly, Transposition, all_transpositions, apply_transposition, diagonal, divmod_monic,
    format_poly, substitute_shift,
)
from quasinv.twisted.twist import TwistSpec, d_value

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DiagonalCoefficient:
    """numerator / prod (S - root)^exp, reduced."""
    numerator: MultiPoly
    denominator: tuple[tuple[Fraction, int], ...]

    def is_zero(self) -> bool:
        return self.numerator.is_zero()


@dataclass(frozen=True)
class DiagonalExpansion:
    pair: Transposition
    twist: TwistSpec
    order: int
    coefficients: tuple[DiagonalCoefficient, ...]

    def vanishes_through(self, k: int) -> bool:
        return all(c.is_zero() for c in self.coefficients[: k + 1])

    def format_coefficient(self, k: int) -> str:
        c = self.coefficients[k]
        s_name = re.compile(rf"x{self.pair.j}(?!\d)")
        num = s_name.sub("S", format_poly(c.numerator))
        if c.is_zero() or not c.denominator:
            return num
        den = "*".join(
            (f"S^{e}" if a == 0 else f"(S-{a})^{e}") if e > 1 else ("S" if a == 0 else f"(S-{a})")
            for a, e in c.denominator
        )
        return f"({num})/({den})"


def _lift(F: MultiPoly) -> MultiPoly:
    return F if F.ring == PARAMS else F.change_ring(PARAMS)


def taylor_coefficients(F: MultiPoly, i: int, j: int, order: int) -> list[MultiPoly]:
    """
    [T^l] F(x_i = S + T, x_j = S) for l < order, with S held in slot j and
    slot i empty.
    """
    out: list[dict[tuple[int, ...], ParamPoly]] = [{} for _ in range(order)]
    for e, c in F.terms.items():
        a = e[i - 1]
        for l in range(min(a, order - 1) + 1):
            y = list(e)
            y[i - 1] = 0
            y[j - 1] += a - l
            key = tuple(y)
            v = c * math.comb(a, l)
            layer = out[l]
            layer[key] = layer[key] + v if key in layer else v
    return [MultiPoly(F.n, F.ring, layer) for layer in out]


def _s_minus(n: int, j: int, a: Fraction, e: int) -> MultiPoly:
    mono = [0] * n
    mono[j - 1] = e
    return substitute_shift(MultiPoly.monomial(n, PARAMS, tuple(mono)), j, -a)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for combo in itertools.product(range(total + 1), repeat=parts):
        if sum(combo) == total:
            yield combo


def _reduce(N: MultiPoly, j: int, roots: Sequence[Fraction], k: int) -> DiagonalCoefficient:
    if N.is_zero() or k == 0:
        return DiagonalCoefficient(N, ())
    den: list[tuple[Fraction, int]] = []
    for a in roots:
        e = k
        divisor = _s_minus(N.n, j, a, 1)
        while e > 0:
            q, r = divmod_monic(N, divisor, j)
            if not r.is_zero():
                break
            N = q
            e -= 1
        if e:
            den.append((a, e))
    return DiagonalCoefficient(N, tuple(den))


def diagonal_expand(F: MultiPoly, f: TwistSpec, order: int, pair: Transposition | None = None) -> DiagonalExpansion:
    """
    Coefficients of T^0 .. T^{order-1}. For n > 2 ``f`` is the quotient twist
    f_i / f_j of the pair; the other factors are symmetric units there.
    """
    if order < 1:
        raise UsageError(f"order must be at least 1, got {order}")
    t = pair if pair is not None else Transposition(1, 2)
    t.check(F.n)
    i, j = t.i, t.j
    G = _lift(F)
    n = G.n
    A = taylor_coefficients(G, i, j, order)
    B = taylor_coefficients(apply_transposition(G, t), i, j, order)
    roots = [a for a, _ in f.factors]
    exps = [b for _, b in f.factors]
    binoms = [[binomial_param(b, l) for l in range(order)] for b in exps]

    coeffs: list[DiagonalCoefficient] = []
    for k in range(order):
        powers = [[_s_minus(n, j, a, e) for e in range(k + 1)] for a in roots]
        N = MultiPoly.zero(n, PARAMS)
        for l in range(k + 1):
            if A[k - l].is_zero():
                continue
            E = MultiPoly.zero(n, PARAMS)
            for combo in _compositions(l, len(roots)):
                term = MultiPoly.one(n, PARAMS)
                for r, jr in enumerate(combo):
                    term = term * powers[r][k - jr] * binoms[r][jr]
                E = E + term
            N = N + E * A[k - l]
        if not B[k].is_zero():
            full = MultiPoly.one(n, PARAMS)
            for r in range(len(roots)):
                full = full * powers[r][k]
            N = N - full * B[k]
        coeffs.append(_reduce(N, j, roots, k))
    return DiagonalExpansion(t, f, order, tuple(coeffs))


def is_twisted_quasi_invariant(F: MultiPoly, m: int, f: TwistSpec, pair: Transposition | None = None) -> bool:
    """The order 2m+1 condition for ``pair``, or for every pair i < j when none is given."""
    pairs = [pair] if pair is not None else all_transpositions(F.n)
    return all(diagonal_expand(F, f, 2 * m + 1, t).vanishes_through(2 * m) for t in pairs)


def is_twisted_quasi_invariant_multi(F: MultiPoly, m: int, twists: Sequence[TwistSpec]) -> bool:
    """Pairwise condition with a twist f_k on each variable x_k."""
    if len(twists) != F.n:
        raise UsageError(f"need one twist per variable ({F.n}), got {len(twists)}")
    for t in all_transpositions(F.n):
        h = twists[t.i - 1].quotient(twists[t.j - 1])
        if not is_twisted_quasi_invariant(F, m, h, t):
            return False
    return True


def diagonal_divisibility_check(F: MultiPoly, m: int, f: TwistSpec) -> bool:
    """prod (x - a_i)^{d_m(b_i)} divides F(x, x)."""
    G = diagonal(_lift(F), 1, 2)
    for a, b in f.factors:
        d = d_value(m, b)
        if d == 0:
            continue
        _, r = divmod_monic(G, _s_minus(G.n, 2, a, d), 2)
        if not r.is_zero():
            return False
    return True


class NotAMember(UsageError):
    def __init__(self, what: str, m: int, f: TwistSpec):
        super().__init__(f"{what} is not in Q_{m}({str(f) or '1'})")


def product_closure_check(F: MultiPoly, G: MultiPoly, m: int, f: TwistSpec, g: TwistSpec) -> bool:
    """Checks FG in Q_m(fg) for members F of Q_m(f) and G of Q_m(g)."""
    if not is_twisted_quasi_invariant(F, m, f):
        raise NotAMember("first factor", m, f)
    if not is_twisted_quasi_invariant(G, m, g):
        raise NotAMember("second factor", m, g)
    return is_twisted_quasi_invariant(_lift(F) * _lift(G), m, f.product(g))

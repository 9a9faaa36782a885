"""
q-deformed quasi-invariance: the divisor (x_i - x_j)^{2m+1} is replaced by
prod_{k=-m..m} (x_i - q^k x_j), optionally after multiplying F by a monomial
twist x^a.
"""
import logging
from fractions import Fraction
from typing import Optional, Sequence

from quasinv.core.errors import UsageError
from quasinv.poly.multipoly import (
    MultiPoly, Ring, Transposition, all_transpositions, apply_transposition, divmod_monic,
)

logger = logging.getLogger(__name__)


class ZeroQ(UsageError):
    def __init__(self) -> None:
        super().__init__("q must be nonzero")


def q_divisor(n: int, ring: Ring, t: Transposition, m: int, q: Fraction) -> MultiPoly:
    """prod_{k=-m..m} (x_i - q^k x_j), monic in x_i."""
    xi = MultiPoly.var(n, ring, t.i)
    xj = MultiPoly.var(n, ring, t.j)
    acc = MultiPoly.one(n, ring)
    for k in range(-m, m + 1):
        acc = acc * (xi - xj.scale(q ** k))
    return acc


def twisted_by_monomial(F: MultiPoly, twist: Optional[Sequence[int]]) -> MultiPoly:
    """
    x^a F, multiplied by a power of x_1 x_2 ... x_n when some a_k < 0. The
    extra factor is symmetric and coprime to every q-divisor.
    """
    if not twist:
        return F
    if len(twist) != F.n:
        raise UsageError(f"need {F.n} twist exponents, got {len(twist)}")
    lift = max(0, -min(twist))
    shift = tuple(a + lift for a in twist)
    return F.map_exponents(lambda e: tuple(x + s for x, s in zip(e, shift)))


def q_membership(F: MultiPoly, m: int, q: Fraction | int, twist: Optional[Sequence[int]] = None) -> bool:
    qv = Fraction(q)
    if qv == 0:
        raise ZeroQ()
    if m < 0:
        raise UsageError(f"m must be nonnegative, got {m}")
    G = twisted_by_monomial(F, twist)
    for t in all_transpositions(G.n):
        diff = G - apply_transposition(G, t)
        if diff.is_zero():
            continue
        _, r = divmod_monic(diff, q_divisor(G.n, G.ring, t, m, qv), t.i)
        if not r.is_zero():
            logger.debug(f"q-membership fails for pair ({t.i},{t.j})")
            return False
    return True

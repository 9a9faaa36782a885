"""
Prime witnesses for anomalous Hilbert series in characteristic p.

A pair (a, k) with

    (mn(n-2) + C(n,2)) / (n(n-2)k + C(n,2) - 1) <= p^a <= mn / (nk + 1)

yields a non-symmetric m-quasi-invariant of degree at most mn over F_p.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Literal, Optional

from quasinv.core.errors import UsageError, VerificationFailure
from quasinv.exact.field import is_prime

logger = logging.getLogger(__name__)

WitnessOrder = Literal["degree", "lex"]


class InvalidParams(UsageError):
    def __init__(self, reason: str):
        super().__init__(reason)


class WitnessFormsDisagree(VerificationFailure):
    def __init__(self, m: int, n: int, p: int, a: int):
        super().__init__(f"two-sided and fractional-part witness tests disagree at m={m}, n={n}, p={p}, a={a}")


@dataclass(frozen=True)
class Witness:
    m: int
    n: int
    p: int
    a: int
    k: int

    @property
    def power(self) -> int:
        return self.p ** self.a

    @property
    def two_b(self) -> int:
        return 2 * self.m + 1 - self.power * (2 * self.k + 1)

    @property
    def expected_degree(self) -> int:
        """Degree of P_k^{p^a} times the difference product, or of P_k^{p^a} alone."""
        base = self.power * (self.n * self.k + 1)
        return base + self.two_b * comb(self.n, 2) if self.two_b >= 0 else base


def _bounds(m: int, n: int, k: int) -> tuple[Fraction, Fraction]:
    c = comb(n, 2)
    lower = Fraction(m * n * (n - 2) + c, n * (n - 2) * k + c - 1)
    upper = Fraction(m * n, n * k + 1)
    return lower, upper


def inequality_holds(m: int, n: int, p: int, a: int, k: int) -> bool:
    lower, upper = _bounds(m, n, k)
    return lower <= p ** a <= upper


def fractional_part_holds(m: int, n: int, p: int, a: int) -> bool:
    """1/n <= {m/p^a} <= (n+1)/(2n) - (n-1)/(2(n-2)p^a)."""
    q = p ** a
    frac = Fraction(m % q, q)
    return Fraction(1, n) <= frac <= Fraction(n + 1, 2 * n) - Fraction(n - 1, 2 * (n - 2) * q)


def _validate(m: int, n: int, p: int) -> None:
    if n < 3:
        raise InvalidParams(f"witness search needs n >= 3, got {n}")
    if m < 0:
        raise InvalidParams(f"m must be nonnegative, got {m}")
    if not is_prime(p):
        raise InvalidParams(f"{p} is not prime")


def all_witnesses(m: int, n: int, p: int) -> list[Witness]:
    """
    Every pair (a, k) with a >= 1 satisfying the inequality, in increasing a.
    For each a the admissible k, if any, is floor(m/p^a), which is what the
    fractional-part test checks; the two tests are compared for every a
    scanned.
    """
    _validate(m, n, p)
    found: list[Witness] = []
    a = 1
    while p ** a <= m * n:
        q = p ** a
        hit: Optional[int] = None
        k = 0
        while q * (n * k + 1) <= m * n:
            if inequality_holds(m, n, p, a, k):
                hit = k
                break
            k += 1
        frac_ok = fractional_part_holds(m, n, p, a)
        if (hit is not None) != frac_ok or (hit is not None and hit != m // q):
            raise WitnessFormsDisagree(m, n, p, a)
        if hit is not None:
            found.append(Witness(m, n, p, a, hit))
        a += 1
    return found


def witness_search(m: int, n: int, p: int, order: WitnessOrder = "degree") -> Optional[Witness]:
    """
    With ``order="degree"`` the witness whose construction has the lowest
    degree, ties going to the smaller k and then the smaller a; this is the
    pair that describes the lowest non-symmetric generator over F_p. With
    ``order="lex"`` the lexicographically smallest (a, k).
    """
    candidates = all_witnesses(m, n, p)
    if order == "lex":
        found = candidates[0] if candidates else None
    else:
        found = min(candidates, key=lambda w: (w.expected_degree, w.k, w.a), default=None)
    logger.debug(f"witness for m={m}, n={n}, p={p}: {found}")
    return found

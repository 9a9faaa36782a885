import logging
from dataclasses import dataclass
from functools import lru_cache

from quasinv.charp.witness import Witness
from quasinv.core.errors import VerificationFailure
from quasinv.exact.field import Field
from quasinv.poly.multipoly import (
    MultiPoly, diff_product, frobenius, is_symmetric, primitive_integer_part, reduce_mod,
)
from quasinv.quasi.space import is_quasi_invariant, lowest_nonsymmetric, slice_basis

logger = logging.getLogger(__name__)


class ConstructionFailed(VerificationFailure):
    def __init__(self, w: Witness, reason: str):
        self.witness = w
        self.reason = reason
        super().__init__(f"construction for m={w.m}, n={w.n}, p={w.p}, a={w.a}, k={w.k} failed: {reason}")


@dataclass(frozen=True)
class Construction:
    witness: Witness
    poly: MultiPoly
    base: MultiPoly
    fallback_used: bool

    @property
    def degree(self) -> int:
        return self.poly.degree()


@lru_cache(maxsize=None)
def lowest_generator_candidates(n: int, k: int) -> tuple[MultiPoly, ...]:
    """
    Non-symmetric elements of the lowest non-symmetric slice of Q_k(n) over
    Q, as integer content-free polynomials in basis order.
    """
    found = lowest_nonsymmetric(n, k, Field.rationals())
    if found is None:
        return ()
    d, _ = found
    return tuple(
        primitive_integer_part(F)
        for F in slice_basis(n, k, d, Field.rationals()).basis
        if not is_symmetric(F)
    )


def construct_low_degree(w: Witness) -> Construction:
    """
    F = P_k^{p^a} * prod_{i<j} (x_i - x_j)^{2b} over F_p, or P_k^{p^a} alone
    when 2b < 0, where P_k is a lowest-degree non-symmetric element of
    Q_k(n) over Q reduced mod p. The result is checked to be a non-symmetric
    m-quasi-invariant of degree at most mn.
    """
    field = Field.prime(w.p)
    base = None
    for candidate in lowest_generator_candidates(w.n, w.k):
        reduced = reduce_mod(candidate, field)
        if not is_symmetric(reduced):
            base = reduced
            break
    if base is None:
        raise ConstructionFailed(w, f"every lowest generator of Q_{w.k}({w.n}) is symmetric mod {w.p}")

    F = frobenius(base, w.a)
    fallback = w.two_b < 0
    if not fallback:
        F = F * diff_product(w.n, w.two_b, field)

    if not is_quasi_invariant(F, w.m):
        raise ConstructionFailed(w, f"result is not {w.m}-quasi-invariant over F_{w.p}")
    if is_symmetric(F):
        raise ConstructionFailed(w, "result is symmetric")
    if F.degree() > w.m * w.n:
        raise ConstructionFailed(w, f"degree {F.degree()} exceeds mn = {w.m * w.n}")
    logger.debug(f"constructed degree {F.degree()} element for {w} (fallback={fallback})")
    return Construction(w, F, base, fallback)

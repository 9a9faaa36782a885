import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from sympy.utilities.iterables import partitions

from quasinv.core.errors import UsageError, VerificationFailure
from quasinv.exact.field import Field
from quasinv.linalg.matrix import ExactMatrix, nullspace
from quasinv.linalg.modular import rank_mod_p
from quasinv.poly.multipoly import (
    Exponent, MultiPoly, Transposition, all_transpositions, apply_transposition,
    is_symmetric, monomials, power_remainder, rem_pow_diff,
)

logger = logging.getLogger(__name__)


class GeneratorBoundViolated(VerificationFailure):
    def __init__(self, n: int, m: int, field: Field, d_cap: int):
        self.n = n
        self.m = m
        self.field = field
        self.d_cap = d_cap
        super().__init__(
            f"No non-symmetric quasi-invariant of degree <= {d_cap} for n={n}, m={m} over {field}, "
            f"although the dimension over {field} is at least the characteristic 0 dimension at mn+1"
        )


@dataclass(frozen=True)
class QuasiSpaceSlice:
    n: int
    m: int
    d: int
    field: Field
    basis: tuple[MultiPoly, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def _check_params(n: int, m: int, d: int) -> None:
    if n < 1 or m < 0 or d < 0:
        raise UsageError(f"need n >= 1, m >= 0, d >= 0 (got n={n}, m={m}, d={d})")


def is_quasi_invariant(F: MultiPoly, m: int) -> bool:
    e = 2 * m + 1
    for t in all_transpositions(F.n):
        diff = F - apply_transposition(F, t)
        if diff and rem_pow_diff(diff, t, e):
            return False
    return True


def symmetric_count(n: int, d: int) -> int:
    """Partitions of d into at most n parts."""
    return sum(1 for _ in partitions(d, m=n))


def _remainder_row(alpha: Exponent, t: Transposition, e: int) -> dict[Exponent, int]:
    """Integer remainder of (1 - s_t) x^alpha modulo (x_i - x_j)^e."""
    a_idx, b_idx = t.i - 1, t.j - 1
    total = alpha[a_idx] + alpha[b_idx]
    out: dict[Exponent, int] = {}
    for sign, a in ((1, alpha[a_idx]), (-1, alpha[b_idx])):
        for l, c in power_remainder(a, e):
            y = list(alpha)
            y[a_idx] = l
            y[b_idx] = total - l
            key = tuple(y)
            out[key] = out.get(key, 0) + sign * c
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=64)
def constraint_rows(n: int, m: int, d: int) -> tuple[tuple[Exponent, ...], tuple[tuple[int, ...], ...]]:
    """
    Integer constraint matrix of the degree-d slice: columns are the degree-d
    monomials in canonical order; for each pair i < j there is one row per
    remainder monomial, holding the coefficients of (1 - s_ij)F mod
    (x_i - x_j)^(2m+1) as a linear functional of F. Pairs are stacked in order.
    The rows hold integers, so one cached matrix serves every field.
    """
    cols = monomials(n, d)
    e = 2 * m + 1
    rows: list[tuple[int, ...]] = []
    for t in all_transpositions(n):
        index: dict[Exponent, int] = {}
        block: list[dict[int, int]] = []
        for c, alpha in enumerate(cols):
            for key, v in _remainder_row(alpha, t, e).items():
                r = index.get(key)
                if r is None:
                    r = index[key] = len(block)
                    block.append({})
                block[r][c] = block[r].get(c, 0) + v
        for entries in block:
            row = [0] * len(cols)
            for c, v in entries.items():
                row[c] = v
            rows.append(tuple(row))
    return cols, tuple(rows)


def slice_basis(n: int, m: int, d: int, field: Field) -> QuasiSpaceSlice:
    _check_params(n, m, d)
    cols, rows = constraint_rows(n, m, d)
    M = ExactMatrix.from_rows(field, rows, len(cols))
    kernel = nullspace(M)
    basis = tuple(
        MultiPoly(n, field, {alpha: field.coerce(v) for alpha, v in zip(cols, vec) if v})
        for vec in kernel
    )
    logger.debug(f"Q_{{{m},{d}}}({n}) over {field}: {len(rows)} constraints, {len(cols)} monomials, dim {len(basis)}")
    return QuasiSpaceSlice(n, m, d, field, basis)


def slice_dimension(n: int, m: int, d: int, field: Field) -> int:
    """dim Q_{m,d}(n). Over F_p this is a rank count and no basis is built."""
    _check_params(n, m, d)
    if field.p is None:
        return slice_basis(n, m, d, field).dim
    cols, rows = constraint_rows(n, m, d)
    dim = len(cols) - rank_mod_p(rows, len(cols), field.p)
    logger.debug(f"Q_{{{m},{d}}}({n}) over {field}: dim {dim}")
    return dim


def default_cap(n: int, m: int) -> int:
    return m * n + 1


def lowest_nonsymmetric(
    n: int, m: int, field: Field, d_cap: Optional[int] = None
) -> Optional[tuple[int, MultiPoly]]:
    """
    Smallest degree with a non-symmetric quasi-invariant, and one such element.
    The scan starts at 2m+1: below it (1 - s)F has degree less than 2m+1 and
    must vanish. Returns None when every slice up to the cap is symmetric.
    """
    cap = default_cap(n, m) if d_cap is None else d_cap
    if cap < 1:
        raise UsageError(f"degree cap must be at least 1, got {cap}")
    if n < 2:
        return None
    for d in range(max(1, 2 * m + 1), cap + 1):
        sl = slice_basis(n, m, d, field)
        if sl.dim == symmetric_count(n, d):
            continue
        for F in sl.basis:
            if not is_symmetric(F):
                logger.debug(f"lowest non-symmetric degree for n={n}, m={m} over {field}: {d}")
                return d, F
    if cap >= default_cap(n, m):
        raise GeneratorBoundViolated(n, m, field, cap)
    return None


def nonsymmetric_degree(n: int, m: int, field: Field, known: Optional[int] = None) -> int:
    """
    Lowest degree of a non-symmetric element of Q_m(n), read off slice
    dimensions: symmetric polynomials always lie in the slice, so a slice
    holds a non-symmetric element exactly when its dimension exceeds the
    symmetric count. ``known`` is a degree already shown to carry one.
    """
    if n < 2:
        raise UsageError(f"every polynomial in {n} variable is symmetric")
    _check_params(n, m, 0)
    cap = default_cap(n, m)
    top = cap if known is None else min(known, cap)
    for d in range(2 * m + 1, top):
        if slice_dimension(n, m, d, field) > symmetric_count(n, d):
            return d
    if known is not None and known <= cap:
        return known
    if slice_dimension(n, m, cap, field) > symmetric_count(n, cap):
        return cap
    raise GeneratorBoundViolated(n, m, field, cap)

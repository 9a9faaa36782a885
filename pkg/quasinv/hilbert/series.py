"""
Hilbert series prefixes of Q_m(n) and their numerators

    G_m(t) = H_m(t) * prod_{i=1..n} (1 - t^i).
"""
import logging
from dataclasses import dataclass
from math import comb
from typing import Sequence

from quasinv.core.errors import UsageError
from quasinv.diagnostics.debug import worker_pool
from quasinv.diagnostics.stream import UpdateCallback, publish
from quasinv.exact.field import Field
from quasinv.quasi.space import slice_dimension

logger = logging.getLogger(__name__)


class PrefixTooShort(UsageError):
    def __init__(self, have: int, need: int):
        self.have = have
        self.need = need
        super().__init__(f"Series prefix reaches degree {have}, numerator recovery needs degree {need}")


@dataclass(frozen=True)
class SeriesPrefix:
    n: int
    m: int
    field: Field
    coeffs: tuple[int, ...]

    @property
    def d_max(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class Numerator:
    """
    Coefficients of G_m(t). When ``stabilized`` the list is the whole
    polynomial; otherwise it is the known prefix through ``known_degree``.
    """
    n: int
    m: int
    field: Field
    coeffs: tuple[int, ...]
    stabilized: bool
    known_degree: int

    def value_at_one(self) -> int:
        return sum(self.coeffs)

    def degree(self) -> int:
        nz = [d for d, c in enumerate(self.coeffs) if c]
        return nz[-1] if nz else -1

    def __str__(self) -> str:
        return format_t_poly(self.coeffs)


def top_degree(n: int, m: int) -> int:
    """Expected degree of the numerator: C(n,2)(2m+1)."""
    return comb(n, 2) * (2 * m + 1)


def prefix_length(n: int, m: int) -> int:
    """Degree a prefix must reach for numerator recovery."""
    return top_degree(n, m) + n * (n + 1) // 2


def _slice_dim(args: tuple[int, int, int, Field]) -> int:
    n, m, d, field = args
    return slice_dimension(n, m, d, field)


def series_prefix(
    n: int, m: int, field: Field, d_max: int, jobs: int = 1, callback: UpdateCallback = None
) -> SeriesPrefix:
    """dim Q_{m,d}(n) for d = 0..d_max. Degree slices run in ``jobs`` processes."""
    if d_max < 0:
        raise UsageError(f"max degree must be nonnegative, got {d_max}")
    work = [(n, m, d, field) for d in range(d_max + 1)]
    if jobs > 1:
        with worker_pool(jobs) as executor:
            dims = list(executor.map(_slice_dim, work))
    else:
        dims = [_slice_dim(w) for w in work]
    for d, dim in enumerate(dims):
        publish(callback, {"type": "slice", "n": n, "m": m, "d": d, "field": field.token, "dim": dim})
    logger.debug(f"series prefix n={n} m={m} over {field}: {dims}")
    return SeriesPrefix(n, m, field, tuple(dims))


def multiply_denominator(coeffs: Sequence[int], n: int) -> list[int]:
    """coeffs * prod_{i=1..n}(1 - t^i), truncated to len(coeffs)."""
    out = list(coeffs)
    for i in range(1, n + 1):
        out = [out[d] - (out[d - i] if d >= i else 0) for d in range(len(out))]
    return out


def expand_series(G: Sequence[int], n: int, d_max: int) -> list[int]:
    """Coefficients of G(t) / prod_{i=1..n}(1 - t^i) through t^d_max."""
    out = [G[d] if d < len(G) else 0 for d in range(d_max + 1)]
    for i in range(1, n + 1):
        for d in range(i, d_max + 1):
            out[d] += out[d - i]
    return out


def numerator_from_prefix(H: SeriesPrefix, allow_partial: bool = False) -> Numerator:
    """
    G = H * prod(1 - t^i) on the computed prefix. The result is stabilized when
    the prefix meets the length rule and all coefficients beyond
    C(n,2)(2m+1) vanish. With ``allow_partial`` a short prefix gives an
    unstabilized numerator instead of an error.
    """
    need = prefix_length(H.n, H.m)
    if H.d_max < need and not allow_partial:
        raise PrefixTooShort(H.d_max, need)
    G = multiply_denominator(H.coeffs, H.n)
    top = top_degree(H.n, H.m)
    stabilized = H.d_max >= need and not any(G[top + 1:])
    coeffs = G[: top + 1] if stabilized else G
    while stabilized and coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return Numerator(H.n, H.m, H.field, tuple(coeffs), stabilized, H.d_max)


def lowest_nonsymmetric_degree(G: Numerator) -> int | None:
    """
    First positive degree with a nonzero numerator coefficient. Symmetric
    polynomials contribute exactly 1 to G, so this is the lowest degree of a
    non-symmetric element.
    """
    for d, c in enumerate(G.coeffs):
        if d > 0 and c:
            return d
    return None


def format_t_poly(coeffs: Sequence[int], var: str = "t") -> str:
    parts: list[str] = []
    for d, c in enumerate(coeffs):
        if not c:
            continue
        mag = abs(c)
        if d == 0:
            body = str(mag)
        else:
            power = var if d == 1 else f"{var}^{d}"
            body = power if mag == 1 else f"{mag}{power}"
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"-{body}" if c < 0 else f"+{body}")
    return "".join(parts) if parts else "0"

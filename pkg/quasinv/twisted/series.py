"""
Closed-form Hilbert series of twisted quasi-invariants in two variables,

    H(t) = (t^{2m} + t^{2m+1} + sum_i t^{2(m-i)+d_i(f)} - sum_i t^{2(m-i)+d_i(f)+2}) / ((1-t)(1-t^2)).
"""
from dataclasses import dataclass

from quasinv.core.errors import UsageError
from quasinv.hilbert.series import format_t_poly
from quasinv.twisted.twist import TwistSpec


@dataclass(frozen=True)
class TwistedSeries:
    m: int
    twist: TwistSpec
    coeffs: tuple[int, ...]

    def expand(self, d_max: int) -> list[int]:
        """Coefficients of the series itself through t^d_max."""
        out = [self.coeffs[d] if d < len(self.coeffs) else 0 for d in range(d_max + 1)]
        for step in (1, 2):
            for d in range(step, d_max + 1):
                out[d] += out[d - step]
        return out

    def __str__(self) -> str:
        return format_t_poly(self.coeffs)


def generator_degrees(m: int, f: TwistSpec) -> list[int]:
    """d_m(f), 2 + d_{m-1}(f), ..., 2(m-1) + d_1(f), 2m, 2m+1."""
    degs = [2 * (m - i) + f.d_total(i) for i in range(m, 0, -1)]
    return degs + [2 * m, 2 * m + 1]


def relation_degrees(m: int, f: TwistSpec) -> list[int]:
    """2 + d_m(f), 4 + d_{m-1}(f), ..., 2m + d_1(f)."""
    return [2 * (m - i) + f.d_total(i) + 2 for i in range(m, 0, -1)]


def twisted_series(m: int, f: TwistSpec) -> TwistedSeries:
    """Numerator over (1-t)(1-t^2) with like terms combined."""
    if m < 0:
        raise UsageError(f"m must be nonnegative, got {m}")
    plus = generator_degrees(m, f)
    minus = relation_degrees(m, f)
    top = max(plus + minus)
    coeffs = [0] * (top + 1)
    for d in plus:
        coeffs[d] += 1
    for d in minus:
        coeffs[d] -= 1
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return TwistedSeries(m, f, tuple(coeffs))

import logging
from fractions import Fraction

from quasinv.core.errors import UsageError
from quasinv.exact.field import Field
from quasinv.linalg.matrix import ExactMatrix, nullspace
from quasinv.poly.multipoly import (
    Exponent, MultiPoly, Transposition, apply_transposition, monomials, rem_pow_diff, substitute_shift,
)
from quasinv.twisted.twist import NonIntegerExponent, TwistSpec, as_rational

logger = logging.getLogger(__name__)

_QQ = Field.rationals()
_PAIR = Transposition(1, 2)


def _linear_power(var: int, root: Fraction, e: int) -> MultiPoly:
    """(x_var - root)^e in two variables over Q."""
    mono = [0, 0]
    mono[var - 1] = e
    return substitute_shift(MultiPoly.monomial(2, _QQ, tuple(mono)), var, -root)


def cleared_twist(f: TwistSpec, var: int) -> tuple[MultiPoly, MultiPoly]:
    """N and D with f = N/D, both polynomials in x_var."""
    N = MultiPoly.one(2, _QQ)
    D = MultiPoly.one(2, _QQ)
    for a, b in f.factors:
        r = as_rational(b)
        if r is None or r.denominator != 1:
            raise NonIntegerExponent(b)
        e = int(r)
        if e > 0:
            N = N * _linear_power(var, a, e)
        else:
            D = D * _linear_power(var, a, -e)
    return N, D


def twisted_filtered_basis(m: int, d: int, f: TwistSpec) -> list[MultiPoly]:
    """
    Polynomials F(x1, x2) of degree at most d with (x1-x2)^(2m+1) dividing
    N(x1)D(x2)F(x1,x2) - N(x2)D(x1)F(x2,x1), where f = N/D. The factors
    (x - a_i) are coprime to x1 - x2, so this is the twisted condition. With
    roots other than 0 the condition mixes degrees and the space is only
    filtered, so the basis covers every degree up to d.
    """
    if m < 0 or d < 0:
        raise UsageError(f"need m >= 0 and d >= 0, got m={m}, d={d}")
    Nx, Dx = cleared_twist(f, 1)
    Ny, Dy = cleared_twist(f, 2)
    left = Nx * Dy
    right = Ny * Dx
    cols = [alpha for k in range(d + 1) for alpha in monomials(2, k)]
    e = 2 * m + 1
    index: dict[Exponent, int] = {}
    entries: list[dict[int, Fraction]] = []
    for c, alpha in enumerate(cols):
        mono = MultiPoly.monomial(2, _QQ, alpha)
        image = left * mono - right * apply_transposition(mono, _PAIR)
        for key, v in rem_pow_diff(image, _PAIR, e).terms.items():
            r = index.get(key)
            if r is None:
                r = index[key] = len(entries)
                entries.append({})
            entries[r][c] = v
    rows = []
    for ent in entries:
        row = [Fraction(0)] * len(cols)
        for c, v in ent.items():
            row[c] = v
        rows.append(row)
    kernel = nullspace(ExactMatrix.from_rows(_QQ, rows, len(cols)))
    basis = [MultiPoly(2, _QQ, {alpha: v for alpha, v in zip(cols, vec) if v}) for vec in kernel]
    logger.debug(f"twisted members of degree <= {d} for m={m}, f={f}: dim {len(basis)}")
    return basis


def twisted_dimension(m: int, d: int, f: TwistSpec) -> int:
    """
    Dimension of the degree-d piece of the associated graded space: members
    of degree <= d modulo those of degree <= d-1. For twists by a monomial
    x^b the space is graded and this is the homogeneous slice.
    """
    lower = len(twisted_filtered_basis(m, d - 1, f)) if d > 0 else 0
    return len(twisted_filtered_basis(m, d, f)) - lower

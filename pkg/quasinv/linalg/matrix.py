import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from quasinv.exact.field import Field, Scalar
from quasinv.linalg.modular import (
    ModularLiftFailed, kernel_from_rref, nullspace_rational_modular, rank_mod_p, rref_mod_p,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExactMatrix:
    """Dense row-major matrix of scalars of one field."""
    rows: int
    cols: int
    field: Field
    entries: tuple[tuple[Scalar, ...], ...]

    @staticmethod
    def from_rows(field: Field, rows: Sequence[Sequence[int | Fraction]], cols: int | None = None) -> "ExactMatrix":
        width = cols if cols is not None else (len(rows[0]) if rows else 0)
        data = []
        for row in rows:
            if len(row) != width:
                raise ValueError(f"row of length {len(row)} in a matrix with {width} columns")
            data.append(tuple(field.coerce(v) for v in row))
        return ExactMatrix(len(data), width, field, tuple(data))

    def transpose(self) -> "ExactMatrix":
        cols = tuple(tuple(self.entries[r][c] for r in range(self.rows)) for c in range(self.cols))
        return ExactMatrix(self.cols, self.rows, self.field, cols)

    def apply(self, v: Sequence[Scalar]) -> list[Scalar]:
        f = self.field
        out = []
        for row in self.entries:
            acc = f.zero()
            for a, b in zip(row, v):
                if a and b:
                    acc = acc + a * b
            out.append(f.normalize(acc))
        return out


def _integer_rows(M: ExactMatrix) -> list[list[int]]:
    """Rows of a rational matrix scaled by their common denominators."""
    out = []
    for row in M.entries:
        den = 1
        for v in row:
            den = math.lcm(den, Fraction(v).denominator)
        out.append([int(Fraction(v) * den) for v in row])
    return out


def nullspace_bareiss(rows: list[list[int]], cols: int) -> tuple[list[list[Fraction]], int]:
    """
    Fraction-free Gauss-Jordan elimination over the integers. Every division
    by the previous pivot is exact; on exit all pivot entries equal the last
    pivot ``den``. Returns the kernel basis and the rank.
    """
    A = [list(r) for r in rows]
    nrows = len(A)
    den = 1
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= nrows:
            break
        k = next((i for i in range(r, nrows) if A[i][c]), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        pv = A[r][c]
        pivot_row = A[r]
        for i in range(nrows):
            if i == r:
                continue
            row = A[i]
            f = row[c]
            A[i] = [(pv * row[j] - f * pivot_row[j]) // den for j in range(cols)]
        den = pv
        pivots.append(c)
        r += 1
    pivot_set = set(pivots)
    basis: list[list[Fraction]] = []
    for f in range(cols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for ri, pc in enumerate(pivots):
            v[pc] = Fraction(-A[ri][f], den)
        basis.append(v)
    return basis, len(pivots)


def nullspace(M: ExactMatrix) -> list[list[Scalar]]:
    """
    Basis of {v : Mv = 0}, one vector per free column with that coordinate 1
    and the other free coordinates 0.
    """
    if M.cols == 0:
        return []
    if M.field.p is not None:
        p = M.field.p
        R, pivots = rref_mod_p([list(map(int, row)) for row in M.entries], M.cols, p)
        logger.debug(f"nullspace over F_{p}: {M.rows}x{M.cols}, rank {len(pivots)}")
        return kernel_from_rref(R, pivots, M.cols, p)
    rows = _integer_rows(M)
    try:
        basis = nullspace_rational_modular(rows, M.cols)
    except ModularLiftFailed as e:
        logger.debug(f"{e}; falling back to fraction-free elimination")
        basis, _ = nullspace_bareiss(rows, M.cols)
    logger.debug(f"nullspace over Q: {M.rows}x{M.cols}, dimension {len(basis)}")
    return [list(v) for v in basis]


def rank(M: ExactMatrix) -> int:
    if M.cols == 0 or M.rows == 0:
        return 0
    if M.field.p is not None:
        return rank_mod_p([list(map(int, row)) for row in M.entries], M.cols, M.field.p)
    _, r = nullspace_bareiss(_integer_rows(M), M.cols)
    return r

"""
Row reduction modulo a prime, and nullspaces over Q by Chinese remaindering.

Reduced row echelon forms use a deterministic pivot rule: the leftmost
column with a nonzero entry at or below the current row, and within it the
topmost such row.
"""
import logging
import math
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
import sympy

from quasinv.exact.field import WORD_PRIME_BOUND, rational_reconstruction

logger = logging.getLogger(__name__)

IntRows = Sequence[Sequence[int]]

# Number of word-size primes tried before falling back to exact elimination.
MAX_LIFT_PRIMES = 48


class ModularLiftFailed(ArithmeticError):
    def __init__(self, primes_used: int):
        self.primes_used = primes_used
        super().__init__(f"Rational reconstruction did not stabilize after {primes_used} primes")


def rref_mod_p_numpy(rows: IntRows, cols: int, p: int) -> tuple[np.ndarray, list[int]]:
    """
    Reduced row echelon form mod p < 2^31 on int64 residues. Products of two
    residues stay below 2^62, so no intermediate overflows.
    Returns the nonzero rows of the form and the pivot columns.
    """
    assert p < WORD_PRIME_BOUND
    if not rows or cols == 0:
        return np.zeros((0, cols), dtype=np.int64), []
    A = np.array([[v % p for v in row] for row in rows], dtype=np.int64).reshape(len(rows), cols)
    nrows = A.shape[0]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r, c:] = (A[r, c:] * inv) % p
        targets = np.flatnonzero(A[:, c])
        targets = targets[targets != r]
        if targets.size:
            factors = A[targets, c][:, None]
            A[targets, c:] = (A[targets, c:] - factors * A[r, c:]) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rref_mod_p_python(rows: IntRows, cols: int, p: int) -> tuple[list[list[int]], list[int]]:
    """Same elimination as ``rref_mod_p_numpy`` on arbitrary-precision residues."""
    A = [[v % p for v in row] for row in rows]
    nrows = len(A)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= nrows:
            break
        k = next((i for i in range(r, nrows) if A[i][c]), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        inv = pow(A[r][c], -1, p)
        pivot_row = [(v * inv) % p for v in A[r]]
        A[r] = pivot_row
        for i in range(nrows):
            f = A[i][c]
            if i == r or not f:
                continue
            row = A[i]
            A[i] = [(row[j] - f * pivot_row[j]) % p if j >= c else row[j] for j in range(cols)]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rref_mod_p(rows: IntRows, cols: int, p: int) -> tuple[list[list[int]], list[int]]:
    if p < WORD_PRIME_BOUND:
        R, pivots = rref_mod_p_numpy(rows, cols, p)
        return [[int(v) for v in row] for row in R], pivots
    return rref_mod_p_python(rows, cols, p)


def rank_mod_p(rows: IntRows, cols: int, p: int) -> int:
    """Rank mod p by forward elimination only; no reduced form is built."""
    if not rows or cols == 0:
        return 0
    if p >= WORD_PRIME_BOUND:
        return len(rref_mod_p_python(rows, cols, p)[1])
    A = np.array([[v % p for v in row] for row in rows], dtype=np.int64).reshape(len(rows), cols)
    nrows = A.shape[0]
    r = 0
    for c in range(cols):
        if r >= nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r, c:] = (A[r, c:] * inv) % p
        below = r + 1 + np.flatnonzero(A[r + 1:, c])
        if below.size:
            A[below, c:] = (A[below, c:] - A[below, c][:, None] * A[r, c:]) % p
        r += 1
    return r


def kernel_from_rref(R: Sequence[Sequence[int]], pivots: Sequence[int], cols: int, p: int) -> list[list[int]]:
    """
    Kernel basis from a reduced echelon form: one vector per free column f,
    with v[f] = 1 and v[pivot_r] = -R[r][f].
    """
    pivot_set = set(pivots)
    basis: list[list[int]] = []
    for f in range(cols):
        if f in pivot_set:
            continue
        v = [0] * cols
        v[f] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-R[r][f]) % p
        basis.append(v)
    return basis


def _sparse(rows: IntRows) -> list[list[tuple[int, int]]]:
    return [[(j, v) for j, v in enumerate(row) if v] for row in rows]


def _crt_pair(x: int, m: int, y: int, p: int) -> int:
    # x mod m and y mod p -> value mod m*p
    t = ((y - x) * pow(m, -1, p)) % p
    return x + m * t


def _try_reconstruct(
    residues: list[list[int]], modulus: int, pivots: list[int], free: list[int],
    sparse_rows: list[list[tuple[int, int]]], cols: int
) -> Optional[list[list[Fraction]]]:
    basis: list[list[Fraction]] = []
    for fi, f in enumerate(free):
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            q = rational_reconstruction(-residues[r][fi], modulus)
            if q is None:
                return None
            v[pc] = q
        den = 1
        for x in v:
            den = math.lcm(den, x.denominator)
        w = [int(x * den) for x in v]
        for row in sparse_rows:
            if sum(a * w[j] for j, a in row) != 0:
                return None
        basis.append(v)
    return basis


def nullspace_rational_modular(rows: IntRows, cols: int, max_primes: int = MAX_LIFT_PRIMES) -> list[list[Fraction]]:
    """
    Kernel basis over Q of an integer matrix, by elimination modulo
    decreasing word-size primes, CRT combination of the reduced forms and
    rational reconstruction. A candidate is accepted only after M*v = 0 is
    checked exactly for every vector. A prime whose pivot columns differ from
    the lexicographically smallest pivot set seen with maximal rank is
    discarded; the accepted basis then has size cols - rank(M) because
    rank mod p never exceeds rank over Q.
    """
    sparse_rows = _sparse(rows)
    p = WORD_PRIME_BOUND
    ref_pivots: Optional[list[int]] = None
    residues: list[list[int]] = []
    modulus = 1
    free: list[int] = []
    for used in range(1, max_primes + 1):
        p = int(sympy.prevprime(p))
        R, pivots = rref_mod_p_numpy(rows, cols, p)
        better = ref_pivots is None or len(pivots) > len(ref_pivots) or (
            len(pivots) == len(ref_pivots) and pivots < ref_pivots
        )
        if not better and pivots != ref_pivots:
            logger.debug(f"Discarding unlucky prime {p}")
            continue
        pivot_set = set(pivots)
        free_now = [c for c in range(cols) if c not in pivot_set]
        local = [[int(R[r, f]) for f in free_now] for r in range(len(pivots))]
        if better:
            ref_pivots, free, residues, modulus = pivots, free_now, local, p
        else:
            residues = [
                [_crt_pair(x, modulus, y, p) for x, y in zip(row_old, row_new)]
                for row_old, row_new in zip(residues, local)
            ]
            modulus *= p
        if not free:
            return []
        assert ref_pivots is not None
        basis = _try_reconstruct(residues, modulus, ref_pivots, free, sparse_rows, cols)
        if basis is not None:
            logger.debug(f"Lifted nullspace of dimension {len(basis)} from {used} primes (rank {len(ref_pivots)})")
            return basis
    raise ModularLiftFailed(max_primes)

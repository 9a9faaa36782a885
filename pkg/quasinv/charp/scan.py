"""
Anomaly scans: for each m and prime p, compare the lowest non-symmetric
degree of Q_m(n) over F_p with characteristic zero and set it against the
witness inequality.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Literal, Optional

from sympy import primerange

from quasinv.charp.construct import construct_low_degree
from quasinv.charp.witness import InvalidParams, Witness, witness_search
from quasinv.core.errors import VerificationFailure
from quasinv.diagnostics.debug import worker_pool
from quasinv.diagnostics.stream import UpdateCallback, publish
from quasinv.exact.field import Field
from quasinv.hilbert.felder_veselov import felder_veselov
from quasinv.hilbert.series import Numerator, expand_series, lowest_nonsymmetric_degree, series_prefix
from quasinv.quasi.space import default_cap, nonsymmetric_degree

logger = logging.getLogger(__name__)

Agreement = Literal["both", "neither", "anomalous_only", "witness_only"]


@dataclass(frozen=True)
class ScanCell:
    n: int
    m: int
    p: int
    anomalous: bool
    witness: Optional[Witness]
    lowest_nonsym_degree_fp: int
    lowest_nonsym_degree_q: int
    constructed_degree: Optional[int]
    fallback_used: bool
    series_differs: Optional[bool]

    @property
    def agreement(self) -> Agreement:
        """
        "witness_only" contradicts the sufficiency theorem; "anomalous_only"
        is a counterexample to the conjectured converse.
        """
        if self.witness is not None:
            return "both" if self.anomalous else "witness_only"
        return "anomalous_only" if self.anomalous else "neither"


@dataclass(frozen=True)
class ScanTable:
    n: int
    m_max: int
    p_max: int
    cells: tuple[ScanCell, ...]

    def anomalous_primes(self, m: int) -> list[int]:
        return [c.p for c in self.cells if c.m == m and c.anomalous]

    def theorem_violations(self) -> list[ScanCell]:
        return [c for c in self.cells if c.agreement == "witness_only"]


@lru_cache(maxsize=None)
def char0_numerator(n: int, m: int) -> Numerator:
    return felder_veselov(n, m)


def expected_n3_numerator(m: int, d: int) -> list[int]:
    """1 + 2t^d + 2t^{6m+3-d} + t^{6m+3}."""
    top = 6 * m + 3
    coeffs = [0] * (top + 1)
    coeffs[0] += 1
    coeffs[d] += 2
    coeffs[top - d] += 2
    coeffs[top] += 1
    return coeffs


def scan_cell(n: int, m: int, p: int, full_series: bool = False) -> ScanCell:
    field = Field.prime(p)
    d_q = lowest_nonsymmetric_degree(char0_numerator(n, m))
    if d_q is None:
        raise VerificationFailure(f"characteristic 0 numerator for n={n}, m={m} has no non-symmetric term")
    w = witness_search(m, n, p)
    constructed: Optional[int] = None
    fallback = False
    if w is not None:
        built = construct_low_degree(w)
        constructed = built.degree
        fallback = built.fallback_used
    d_fp = nonsymmetric_degree(n, m, field, known=constructed)
    differs: Optional[bool] = None
    if full_series:
        cap = default_cap(n, m)
        fp = series_prefix(n, m, field, cap).coeffs
        q = expand_series(char0_numerator(n, m).coeffs, n, cap)
        differs = list(fp) != q
    cell = ScanCell(n, m, p, d_fp < d_q, w, d_fp, d_q, constructed, fallback, differs)
    logger.debug(f"scan cell n={n} m={m} p={p}: anomalous={cell.anomalous} witness={w}")
    return cell


def _cell_job(args: tuple[int, int, int, bool]) -> ScanCell:
    return scan_cell(*args)


def anomaly_scan(
    n: int, m_max: int, p_max: int, full_series: bool = False, jobs: int = 1,
    callback: UpdateCallback = None, m_min: int = 0
) -> ScanTable:
    """Cells for m_min <= m <= m_max and primes p <= p_max, ordered by (m, p)."""
    if n < 3:
        raise InvalidParams(f"anomaly scans need n >= 3, got {n}")
    work = [(n, m, int(p), full_series) for m in range(m_min, m_max + 1) for p in primerange(2, p_max + 1)]
    cells: list[ScanCell] = []

    def collect(results: Iterable[ScanCell]) -> None:
        for c in results:
            cells.append(c)
            publish(callback, {"type": "cell", "n": c.n, "m": c.m, "p": c.p, "anomalous": c.anomalous})

    if jobs > 1:
        with worker_pool(jobs) as executor:
            collect(executor.map(_cell_job, work))
    else:
        collect(map(_cell_job, work))
    return ScanTable(n, m_max, p_max, tuple(cells))

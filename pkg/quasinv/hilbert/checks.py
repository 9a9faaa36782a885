from math import factorial
from typing import Optional

from pydantic import BaseModel, Field

from quasinv.core.errors import UsageError
from quasinv.hilbert.series import Numerator, top_degree


class NotStabilized(UsageError):
    def __init__(self, G: Numerator):
        self.numerator = G
        super().__init__(
            f"Numerator for n={G.n}, m={G.m} over {G.field} is not stabilized (known through t^{G.known_degree})"
        )


class Check(BaseModel):
    ok: Optional[bool] = Field(description="Outcome of the check; null when the known coefficients cannot decide it")
    detail: Optional[str] = Field(default=None, description="The offending datum when the check fails")


class StructureReport(BaseModel):
    top_degree_ok: Check = Field(description="The numerator has degree exactly C(n,2)(2m+1)")
    palindromic: Check = Field(description="The coefficient list reads the same reversed")
    rank_ok: Check = Field(description="G(1) equals n!")
    nonneg: Check = Field(description="All coefficients are nonnegative, as freeness requires")

    def all_ok(self) -> bool:
        return all(c.ok is True for c in (self.top_degree_ok, self.palindromic, self.rank_ok, self.nonneg))


def _nonneg(G: Numerator) -> Check:
    bad = [(d, c) for d, c in enumerate(G.coeffs) if c < 0]
    if bad:
        d, c = bad[0]
        return Check(ok=False, detail=f"coefficient {c} at t^{d}")
    return Check(ok=True if G.stabilized else None)


def structure_checks(G: Numerator, require_stabilized: bool = True) -> StructureReport:
    """
    Structural diagnostics of a Hilbert numerator. On an unstabilized
    numerator (allowed only with ``require_stabilized=False``) just the
    nonnegativity check can be decided, and only negatively.
    """
    if not G.stabilized:
        if require_stabilized:
            raise NotStabilized(G)
        undecided = Check(ok=None, detail=f"known only through t^{G.known_degree}")
        return StructureReport(top_degree_ok=undecided, palindromic=undecided, rank_ok=undecided, nonneg=_nonneg(G))

    want = top_degree(G.n, G.m)
    deg = G.degree()
    top = Check(ok=True) if deg == want else Check(ok=False, detail=f"degree {deg}, expected {want}")

    coeffs = list(G.coeffs[: deg + 1])
    if coeffs == coeffs[::-1]:
        pal = Check(ok=True)
    else:
        k = next(i for i in range(len(coeffs)) if coeffs[i] != coeffs[-1 - i])
        pal = Check(ok=False, detail=f"t^{k} has {coeffs[k]} but t^{deg - k} has {coeffs[-1 - k]}")

    value = G.value_at_one()
    expect = factorial(G.n)
    rank = Check(ok=True) if value == expect else Check(ok=False, detail=f"G(1) = {value}, expected {expect}")

    return StructureReport(top_degree_ok=top, palindromic=pal, rank_ok=rank, nonneg=_nonneg(G))

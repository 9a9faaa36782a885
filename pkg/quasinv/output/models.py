from typing import Literal, Optional

from pydantic import BaseModel, Field

from quasinv.hilbert.checks import StructureReport


class SeriesRecord(BaseModel):
    n: int
    m: int
    field: str = Field(description="'q' or 'fp:p'")
    coeffs: list[int] = Field(description="Coefficient of t^d at index d")
    stabilized: bool = Field(description="For numerators: all coefficients beyond C(n,2)(2m+1) vanish on a long enough prefix")


class NumeratorRecord(SeriesRecord):
    text: str = Field(description="The numerator written as a polynomial in t")
    checks: Optional[StructureReport] = Field(default=None, description="Structural diagnostics")


class WitnessRecord(BaseModel):
    n: int
    m: int
    p: int
    a: int
    k: int
    two_b: int = Field(description="2m+1 - p^a(2k+1); negative values use the construction without the difference product")


class WitnessResult(BaseModel):
    n: int
    m: int
    p: int
    witness: Optional[WitnessRecord] = Field(description="The smallest witness, or null when none exists")


class ConstructionRecord(BaseModel):
    witness: WitnessRecord
    polynomial: str = Field(description="The constructed polynomial over F_p in canonical text form")
    base: str = Field(description="The reduced lowest generator P_k")
    degree: int
    fallback_used: bool
    quasi_invariant: bool
    nonsymmetric: bool
    degree_bound_ok: bool


class ScanCellRecord(BaseModel):
    m: int
    p: int
    anomalous: bool
    witness_a: Optional[int]
    witness_k: Optional[int]
    lowest_nonsym_degree_fp: int
    lowest_nonsym_degree_q: int
    fallback_used: bool
    agreement: Literal["both", "neither", "anomalous_only", "witness_only"]
    constructed_degree: Optional[int] = None
    series_differs: Optional[bool] = None


class ScanRecord(BaseModel):
    n: int
    m_max: int
    p_max: int
    cells: list[ScanCellRecord]


class MembershipRecord(BaseModel):
    m: int
    field: str
    polynomial: str
    member: bool
    q: Optional[str] = None
    twist: Optional[list[str]] = None


class TwistedSeriesRecord(BaseModel):
    m: int
    twist: str
    coeffs: list[int] = Field(description="Numerator over (1-t)(1-t^2)")
    text: str


class TwistedDimsRecord(BaseModel):
    m: int
    twist: str
    dims: list[int]
    predicted: list[int] = Field(description="Expansion of the closed-form series")


class GeneratorRecord(BaseModel):
    m: int
    exponent: str
    polynomial: str
    diagonal: str


class ModuleGeneratorsRecord(BaseModel):
    m: int
    twist: str
    generators: list[str]
    degrees: list[int]
    relation_degrees: list[int]

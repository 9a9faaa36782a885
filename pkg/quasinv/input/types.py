from typing import Literal, Optional, Protocol

OutputFormat = Literal["text", "csv", "json"]


class CommonArgs(Protocol):
    command: str
    format: OutputFormat
    debug: bool
    jobs: int
    progress: bool


class SpaceArgs(CommonArgs, Protocol):
    n: int
    m: int
    field: str


class DimsArgs(SpaceArgs, Protocol):
    max_degree: int


class NumeratorArgs(SpaceArgs, Protocol):
    # None: the length rule decides
    max_degree: Optional[int]


class FVArgs(CommonArgs, Protocol):
    n: int
    m: int
    box_order: Literal["row", "column"]


class PrimeArgs(CommonArgs, Protocol):
    n: int
    m: int
    p: int
    order: Literal["degree", "lex"]


class AnomaliesArgs(CommonArgs, Protocol):
    n: int
    m_min: int
    m_max: int
    p_max: int
    full_series: bool


class MemberArgs(CommonArgs, Protocol):
    m: int
    field: str
    file: str
    n: Optional[int]


class TwistedArgs(CommonArgs, Protocol):
    twisted_command: Literal["series", "dims", "pm", "member", "generators"]
    m: int


class TwistSpecArgs(TwistedArgs, Protocol):
    f: str


class TwistedDimsArgs(TwistSpecArgs, Protocol):
    max_degree: int


class TwistedPMArgs(TwistedArgs, Protocol):
    z: str


class TwistedMemberArgs(TwistedArgs, Protocol):
    f: list[str]
    file: str
    n: Optional[int]


class QDefArgs(CommonArgs, Protocol):
    qdef_command: Literal["member"]
    m: int
    q: str
    file: str
    n: Optional[int]
    twist: Optional[str]

"""
Formatting of result records: text through the jinja templates, csv for
tabular records, json through pydantic.
"""
import csv
import io
from itertools import groupby
from typing import Any, Optional, Sequence

from pydantic import BaseModel

from quasinv.core.errors import UsageError
from quasinv.input.types import OutputFormat
from quasinv.output.models import (
    ConstructionRecord, GeneratorRecord, MembershipRecord, ModuleGeneratorsRecord, NumeratorRecord,
    ScanRecord, SeriesRecord, TwistedDimsRecord, TwistedSeriesRecord, WitnessResult,
)
from quasinv.templates.loader import flag, load_jinja_template

SCAN_COLUMNS = [
    "m", "p", "anomalous", "witness_a", "witness_k",
    "lowest_nonsym_degree_fp", "lowest_nonsym_degree_q", "fallback_used",
]

_TEMPLATES: dict[type[BaseModel], str] = {
    NumeratorRecord: "numerator.j2",
    SeriesRecord: "series.j2",
    WitnessResult: "witness.j2",
    ConstructionRecord: "construction.j2",
    ScanRecord: "scan.j2",
    MembershipRecord: "membership.j2",
    TwistedSeriesRecord: "twisted_series.j2",
    TwistedDimsRecord: "twisted_dims.j2",
    GeneratorRecord: "generator.j2",
    ModuleGeneratorsRecord: "generators.j2",
}


class FormatUnavailable(UsageError):
    def __init__(self, fmt: str, record: BaseModel):
        self.fmt = fmt
        self.record_type = type(record).__name__
        super().__init__(f"{fmt} output is not available for this command")


def _cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return flag(v)
    return str(v)


def write_csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, quoting=csv.QUOTE_NONE, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def scan_csv(record: ScanRecord, full_series: bool = False) -> str:
    header = list(SCAN_COLUMNS)
    if full_series:
        header += ["constructed_degree", "series_differs"]
    rows = []
    for c in record.cells:
        data = c.model_dump()
        rows.append([data[h] for h in header])
    return write_csv(header, rows)


def _csv(record: BaseModel, full_series: bool) -> Optional[str]:
    if isinstance(record, ScanRecord):
        return scan_csv(record, full_series)
    if isinstance(record, NumeratorRecord):
        return write_csv(["d", "coeff"], list(enumerate(record.coeffs)))
    if isinstance(record, SeriesRecord):
        return write_csv(["d", "dim"], list(enumerate(record.coeffs)))
    if isinstance(record, TwistedDimsRecord):
        return write_csv(["d", "dim", "predicted"], [
            (d, dim, record.predicted[d]) for d, dim in enumerate(record.dims)
        ])
    return None


def _text(record: BaseModel) -> str:
    template = next(name for ty, name in _TEMPLATES.items() if isinstance(record, ty))
    extra: dict[str, Any] = {}
    if isinstance(record, NumeratorRecord) and record.checks is not None:
        extra["checks"] = list(record.checks)
    if isinstance(record, ScanRecord):
        extra["rows"] = [(m, list(cells)) for m, cells in groupby(
            (c for c in record.cells if c.witness_a is not None or c.anomalous), key=lambda c: c.m
        )]
    return load_jinja_template(template, r=record, **extra)


def render(record: BaseModel, fmt: OutputFormat, full_series: bool = False) -> str:
    if fmt == "json":
        return record.model_dump_json() + "\n"
    if fmt == "csv":
        out = _csv(record, full_series)
        if out is None:
            raise FormatUnavailable(fmt, record)
        return out
    return _text(record)

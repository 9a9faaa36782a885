import logging
import pathlib
import sys
from contextlib import contextmanager
from fractions import Fraction
from typing import Callable, Iterator, Optional, Sequence, cast

from pydantic import BaseModel
from sympy import primepi
from tqdm import tqdm

from quasinv.charp.construct import construct_low_degree
from quasinv.charp.scan import anomaly_scan
from quasinv.charp.witness import Witness, witness_search
from quasinv.core.errors import UsageError, VerificationFailure
from quasinv.diagnostics.debug import setup_logging
from quasinv.diagnostics.stream import ScanUpdate, UpdateCallback
from quasinv.exact.field import Field
from quasinv.hilbert.checks import structure_checks
from quasinv.hilbert.felder_veselov import felder_veselov
from quasinv.hilbert.series import Numerator, numerator_from_prefix, prefix_length, series_prefix
from quasinv.input.parsing import quasinv_argument_parser
from quasinv.input.types import (
    AnomaliesArgs, CommonArgs, DimsArgs, FVArgs, MemberArgs, NumeratorArgs, PrimeArgs, QDefArgs,
    TwistedArgs, TwistedDimsArgs, TwistedMemberArgs, TwistedPMArgs, TwistSpecArgs,
)
from quasinv.output.models import (
    ConstructionRecord, GeneratorRecord, MembershipRecord, ModuleGeneratorsRecord, NumeratorRecord,
    ScanCellRecord, ScanRecord, SeriesRecord, TwistedDimsRecord, TwistedSeriesRecord, WitnessRecord,
    WitnessResult,
)
from quasinv.output.render import render
from quasinv.poly.multipoly import MultiPoly, Ring, diagonal, format_poly, is_symmetric
from quasinv.poly.parsing import parse_poly
from quasinv.quasi.space import is_quasi_invariant
from quasinv.twisted.diagonal import is_twisted_quasi_invariant, is_twisted_quasi_invariant_multi
from quasinv.twisted.dimension import twisted_dimension
from quasinv.twisted.generator import generator_pm, module_generators
from quasinv.twisted.qdef import q_membership
from quasinv.twisted.series import twisted_series
from quasinv.twisted.twist import TwistSpec, parse_exponent

logger = logging.getLogger(__name__)


class InputFileError(UsageError):
    def __init__(self, path: str, reason: str):
        self.path = path
        super().__init__(f"Cannot read {path}: {reason}")


class NoWitness(UsageError):
    def __init__(self, m: int, n: int, p: int):
        self.m = m
        self.n = n
        self.p = p
        super().__init__(f"no witness (a, k) exists for m={m}, n={n}, p={p}; nothing to construct")


class TheoremViolation(VerificationFailure):
    def __init__(self, cells: Sequence[ScanCellRecord]):
        self.cells = list(cells)
        where = ", ".join(f"(m={c.m}, p={c.p})" for c in cells)
        super().__init__(f"witness found but no anomaly at {where}")


def _read_poly(path: str, ring: Ring, n: Optional[int]) -> tuple[str, MultiPoly]:
    try:
        text = pathlib.Path(path).read_text()
    except OSError as e:
        raise InputFileError(path, e.strerror or str(e))
    return text, parse_poly(text.strip(), ring, n)


@contextmanager
def _progress(args: CommonArgs, total: int, desc: str) -> Iterator[UpdateCallback]:
    if not args.progress:
        yield None
        return
    with tqdm(total=total, desc=desc, file=sys.stderr) as pbar:
        def tick(_: ScanUpdate) -> None:
            pbar.update(1)
        yield tick


def _check_jobs(args: CommonArgs) -> None:
    if args.jobs < 1:
        raise UsageError(f"--jobs must be at least 1, got {args.jobs}")


def _numerator_record(G: Numerator, require_stabilized: bool) -> NumeratorRecord:
    return NumeratorRecord(
        n=G.n, m=G.m, field=G.field.token, coeffs=list(G.coeffs), stabilized=G.stabilized,
        text=str(G), checks=structure_checks(G, require_stabilized=require_stabilized),
    )


def _witness_record(w: Witness) -> WitnessRecord:
    return WitnessRecord(n=w.n, m=w.m, p=w.p, a=w.a, k=w.k, two_b=w.two_b)


def handle_dims(args: DimsArgs) -> BaseModel:
    _check_jobs(args)
    field = Field.parse(args.field)
    with _progress(args, args.max_degree + 1, "slices") as callback:
        H = series_prefix(args.n, args.m, field, args.max_degree, jobs=args.jobs, callback=callback)
    stabilized = numerator_from_prefix(H, allow_partial=True).stabilized
    return SeriesRecord(n=H.n, m=H.m, field=field.token, coeffs=list(H.coeffs), stabilized=stabilized)


def handle_numerator(args: NumeratorArgs) -> BaseModel:
    _check_jobs(args)
    field = Field.parse(args.field)
    partial = args.max_degree is not None
    d_max = args.max_degree if args.max_degree is not None else prefix_length(args.n, args.m)
    with _progress(args, d_max + 1, "slices") as callback:
        H = series_prefix(args.n, args.m, field, d_max, jobs=args.jobs, callback=callback)
    G = numerator_from_prefix(H, allow_partial=partial)
    return _numerator_record(G, require_stabilized=not partial)


def handle_fv(args: FVArgs) -> BaseModel:
    return _numerator_record(felder_veselov(args.n, args.m, args.box_order), require_stabilized=True)


def handle_witness(args: PrimeArgs) -> BaseModel:
    w = witness_search(args.m, args.n, args.p, args.order)
    return WitnessResult(n=args.n, m=args.m, p=args.p, witness=_witness_record(w) if w else None)


def handle_construct(args: PrimeArgs) -> BaseModel:
    w = witness_search(args.m, args.n, args.p, args.order)
    if w is None:
        raise NoWitness(args.m, args.n, args.p)
    built = construct_low_degree(w)
    return ConstructionRecord(
        witness=_witness_record(w),
        polynomial=format_poly(built.poly),
        base=format_poly(built.base),
        degree=built.degree,
        fallback_used=built.fallback_used,
        quasi_invariant=is_quasi_invariant(built.poly, w.m),
        nonsymmetric=not is_symmetric(built.poly),
        degree_bound_ok=built.degree <= w.m * w.n,
    )


def handle_anomalies(args: AnomaliesArgs) -> BaseModel:
    _check_jobs(args)
    total = max(0, args.m_max - args.m_min + 1) * int(primepi(args.p_max))
    with _progress(args, total, "cells") as callback:
        table = anomaly_scan(
            args.n, args.m_max, args.p_max, full_series=args.full_series, jobs=args.jobs,
            callback=callback, m_min=args.m_min,
        )
    cells = [
        ScanCellRecord(
            m=c.m, p=c.p, anomalous=c.anomalous,
            witness_a=c.witness.a if c.witness else None,
            witness_k=c.witness.k if c.witness else None,
            lowest_nonsym_degree_fp=c.lowest_nonsym_degree_fp,
            lowest_nonsym_degree_q=c.lowest_nonsym_degree_q,
            fallback_used=c.fallback_used,
            agreement=c.agreement,
            constructed_degree=c.constructed_degree,
            series_differs=c.series_differs,
        )
        for c in table.cells
    ]
    return ScanRecord(n=table.n, m_max=table.m_max, p_max=table.p_max, cells=cells)


def handle_member(args: MemberArgs) -> BaseModel:
    field = Field.parse(args.field)
    _, F = _read_poly(args.file, field, args.n)
    return MembershipRecord(m=args.m, field=field.token, polynomial=format_poly(F), member=is_quasi_invariant(F, args.m))


def handle_twisted_series(args: TwistSpecArgs) -> BaseModel:
    f = TwistSpec.parse(args.f)
    S = twisted_series(args.m, f)
    return TwistedSeriesRecord(m=args.m, twist=str(f), coeffs=list(S.coeffs), text=str(S))


def handle_twisted_dims(args: TwistedDimsArgs) -> BaseModel:
    if args.max_degree < 0:
        raise UsageError(f"max degree must be nonnegative, got {args.max_degree}")
    f = TwistSpec.parse(args.f)
    dims = [twisted_dimension(args.m, d, f) for d in range(args.max_degree + 1)]
    predicted = twisted_series(args.m, f).expand(args.max_degree)
    return TwistedDimsRecord(m=args.m, twist=str(f), dims=dims, predicted=predicted)


def handle_twisted_pm(args: TwistedPMArgs) -> BaseModel:
    z = parse_exponent(args.z)
    P = generator_pm(args.m, z)
    D = diagonal(P, 1, 2)
    restricted = MultiPoly(1, D.ring, {(e[1],): c for e, c in D.terms.items()})
    return GeneratorRecord(m=args.m, exponent=str(z), polynomial=format_poly(P), diagonal=format_poly(restricted))


def handle_twisted_member(args: TwistedMemberArgs) -> BaseModel:
    twists = [TwistSpec.parse(s) for s in args.f]
    QQ = Field.rationals()
    text, F = _read_poly(args.file, QQ, args.n)
    if len(twists) == 1:
        if F.n < 2:
            F = parse_poly(text.strip(), QQ, 2)
        member = is_twisted_quasi_invariant(F, args.m, twists[0])
    else:
        member = is_twisted_quasi_invariant_multi(F, args.m, twists)
    return MembershipRecord(
        m=args.m, field=QQ.token, polynomial=format_poly(F), member=member, twist=[str(t) for t in twists],
    )


def handle_twisted_generators(args: TwistSpecArgs) -> BaseModel:
    f = TwistSpec.parse(args.f)
    gens = module_generators(args.m, f)
    return ModuleGeneratorsRecord(
        m=args.m, twist=str(f), generators=[format_poly(g) for g in gens.generators],
        degrees=list(gens.degrees), relation_degrees=list(gens.relation_degrees),
    )


def _parse_q(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"q must be a rational such as 2 or 3/5, got '{text}'")


def _parse_twist_exponents(text: Optional[str]) -> Optional[list[int]]:
    if text is None:
        return None
    try:
        return [int(a) for a in text.split(",")]
    except ValueError:
        raise UsageError(f"--twist takes comma-separated integers, got '{text}'")


def handle_qdef_member(args: QDefArgs) -> BaseModel:
    q = _parse_q(args.q)
    twist = _parse_twist_exponents(args.twist)
    QQ = Field.rationals()
    n = args.n if args.n is not None else (len(twist) if twist else None)
    _, F = _read_poly(args.file, QQ, n)
    return MembershipRecord(
        m=args.m, field=QQ.token, polynomial=format_poly(F), member=q_membership(F, args.m, q, twist),
        q=str(q), twist=[str(a) for a in twist] if twist else None,
    )


_TWISTED: dict[str, Callable[..., BaseModel]] = {
    "series": handle_twisted_series,
    "dims": handle_twisted_dims,
    "pm": handle_twisted_pm,
    "member": handle_twisted_member,
    "generators": handle_twisted_generators,
}

_COMMANDS: dict[str, Callable[..., BaseModel]] = {
    "dims": handle_dims,
    "numerator": handle_numerator,
    "fv": handle_fv,
    "witness": handle_witness,
    "construct": handle_construct,
    "anomalies": handle_anomalies,
    "member": handle_member,
    "twisted": lambda args: _TWISTED[cast(TwistedArgs, args).twisted_command](args),
    "qdef": handle_qdef_member,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse ``argv``, run the command and print its result. Exit codes: 0 on
    success, 1 for usage errors, 2 when a verified assertion fails.
    """
    parser = quasinv_argument_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except UsageError as e:
        print(str(e), file=sys.stderr)
        return 1
    except SystemExit as e:
        return int(e.code or 0)

    setup_logging(args.debug)
    try:
        record = _COMMANDS[args.command](args)
        sys.stdout.write(render(record, args.format, full_series=getattr(args, "full_series", False)))
        if isinstance(record, ScanRecord):
            bad = [c for c in record.cells if c.agreement == "witness_only"]
            if bad:
                raise TheoremViolation(bad)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except VerificationFailure as e:
        logger.debug("verification failure", exc_info=True)
        print(f"verification failed: {e}", file=sys.stderr)
        return 2
    return 0


def main() -> int:
    """Main entry point for the quasinv tool."""
    return run()

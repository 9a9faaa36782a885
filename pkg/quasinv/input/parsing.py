import argparse
from typing import NoReturn, Protocol, Sequence, TypeVar, cast

from quasinv.core.errors import UsageError
from quasinv.input.types import CommonArgs

ArgNS = TypeVar("ArgNS", covariant=True)


class TypedArgumentParser(Protocol[ArgNS]):
    def parse_args(self, args: Sequence[str] | None = None) -> ArgNS:
        ...


class CommandLineUsageError(UsageError):
    def __init__(self, message: str, usage: str):
        self.usage = usage
        super().__init__(f"{usage.rstrip()}\n{message}")


class _Parser(argparse.ArgumentParser):
    """Raises instead of exiting so bad flags map to exit code 1 in the caller."""

    def error(self, message: str) -> NoReturn:
        raise CommandLineUsageError(message, self.format_usage())


def _common_options(parser: argparse.ArgumentParser, default_format: str = "text") -> None:
    parser.add_argument("--format", choices=["text", "csv", "json"], default=default_format,
                        help=f"Output format (default: {default_format})")
    parser.add_argument("--debug", action="store_true",
                        help="Enable debug logging output")
    parser.add_argument("--jobs", type=int, default=1,
                        help="Worker processes for degree and cell scans (default: 1)")
    parser.add_argument("--progress", action="store_true",
                        help="Show a progress bar on standard error")


def _space_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, required=True, help="Number of variables")
    parser.add_argument("--m", type=int, required=True, help="Multiplicity")
    parser.add_argument("--field", default="q", help="'q' for the rationals or 'fp:P' for a prime field (default: q)")


def _twist_option(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--f", required=True,
                        help="Twist as comma-separated factors (x-a)^b, e.g. '(x-0)^2,(x-1)^-1' or '(x-0)^z'; '' for no twist")


def quasinv_argument_parser() -> TypedArgumentParser[CommonArgs]:
    parser = _Parser(prog="quasinv", description="Exact computations with quasi-invariant polynomials")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    dims = sub.add_parser("dims", help="Dimensions of Q_m(n) in degrees 0..max-degree")
    _space_options(dims)
    dims.add_argument("--max-degree", type=int, required=True)
    _common_options(dims)

    num = sub.add_parser("numerator", help="Hilbert numerator of Q_m(n) with structural checks")
    _space_options(num)
    num.add_argument("--max-degree", type=int, default=None,
                     help="Stop the series here; a prefix shorter than the length rule gives a partial numerator")
    _common_options(num)

    fv = sub.add_parser("fv", help="Characteristic-zero numerator from the Young diagram formula")
    fv.add_argument("--n", type=int, required=True)
    fv.add_argument("--m", type=int, required=True)
    fv.add_argument("--box-order", choices=["row", "column"], default="row",
                    help="Box enumeration order inside each diagram; the result does not depend on it")
    _common_options(fv)

    for verb, what in (("witness", "Witness (a, k) satisfying the anomaly inequality"),
                       ("construct", "Build and verify the low-degree non-symmetric quasi-invariant over F_p")):
        p = sub.add_parser(verb, help=what)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--order", choices=["degree", "lex"], default="degree",
                       help="Pick the witness of lowest construction degree (default) or the lexicographically smallest (a, k)")
        _common_options(p)

    anomalies = sub.add_parser("anomalies", help="Scan (m, p) for anomalous primes")
    anomalies.add_argument("--n", type=int, default=3)
    anomalies.add_argument("--m-min", type=int, default=0)
    anomalies.add_argument("--m-max", type=int, required=True)
    anomalies.add_argument("--p-max", type=int, required=True)
    anomalies.add_argument("--full-series", action="store_true",
                           help="Also compare full series prefixes against characteristic zero")
    _common_options(anomalies, default_format="csv")

    member = sub.add_parser("member", help="Test F in Q_m over a field")
    member.add_argument("--m", type=int, required=True)
    member.add_argument("--field", default="q")
    member.add_argument("--file", required=True, help="File holding one polynomial")
    member.add_argument("--n", type=int, default=None, help="Number of variables (default: highest index in the file)")
    _common_options(member)

    twisted = sub.add_parser("twisted", help="Twisted quasi-invariants in two variables")
    tsub = twisted.add_subparsers(dest="twisted_command", required=True, parser_class=_Parser)

    series = tsub.add_parser("series", help="Closed-form Hilbert series of Q_m(f)")
    series.add_argument("--m", type=int, required=True)
    _twist_option(series)
    _common_options(series)

    tdims = tsub.add_parser("dims", help="Dimensions of Q_m(f) from the linear system, integer exponents only")
    tdims.add_argument("--m", type=int, required=True)
    _twist_option(tdims)
    tdims.add_argument("--max-degree", type=int, required=True)
    _common_options(tdims)

    pm = tsub.add_parser("pm", help="The generator P_m for the twist x^z")
    pm.add_argument("--m", type=int, required=True)
    pm.add_argument("--z", required=True, help="Rational exponent or a parameter name")
    _common_options(pm)

    tmember = tsub.add_parser("member", help="Test F in Q_m(f); repeat --f once per variable for n > 2")
    tmember.add_argument("--m", type=int, required=True)
    tmember.add_argument("--f", action="append", required=True)
    tmember.add_argument("--file", required=True)
    tmember.add_argument("--n", type=int, default=None)
    _common_options(tmember)

    gens = tsub.add_parser("generators", help="Module generators of Q_m(f) over symmetric polynomials")
    gens.add_argument("--m", type=int, required=True)
    _twist_option(gens)
    _common_options(gens)

    qdef = sub.add_parser("qdef", help="q-deformed quasi-invariants")
    qsub = qdef.add_subparsers(dest="qdef_command", required=True, parser_class=_Parser)
    qmember = qsub.add_parser("member", help="Test F against the q-deformed divisors")
    qmember.add_argument("--m", type=int, required=True)
    qmember.add_argument("--q", required=True, help="Nonzero rational, e.g. 2 or 3/5")
    qmember.add_argument("--file", required=True)
    qmember.add_argument("--n", type=int, default=None)
    qmember.add_argument("--twist", default=None, help="Monomial twist exponents a1,...,an")
    _common_options(qmember)

    return cast(TypedArgumentParser[CommonArgs], parser)

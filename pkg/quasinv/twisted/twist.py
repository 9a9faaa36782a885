"""
Twists f(x) = prod_i (x - a_i)^{b_i} with rational roots and rational or
formal exponents.

Text form: comma-separated factors ``(x-a)^b``; ``a`` is a rational (``(x+a)``
is accepted for negative roots), ``b`` a rational or an identifier naming a
formal parameter, and ``^b`` may be omitted for exponent 1. The empty string
is the trivial twist.
"""
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from quasinv.core.errors import UsageError
from quasinv.exact.param import ParamPoly

TwistExponent = Union[Fraction, ParamPoly]

_RATIONAL = r"[+-]?\d+(?:/\d+)?"
_FACTOR = re.compile(
    rf"^\(x(?P<sign>[+-])(?P<root>\d+(?:/\d+)?)\)(?:\^(?P<exp>\(?{_RATIONAL}\)?|[A-Za-z_]\w*))?$"
    rf"|^x(?:\^(?P<exp0>\(?{_RATIONAL}\)?|[A-Za-z_]\w*))?$"
)


class TwistSyntaxError(UsageError):
    def __init__(self, text: str, reason: str):
        self.text = text
        super().__init__(f"Cannot parse twist factor '{text}': {reason}")


class NonIntegerExponent(UsageError):
    def __init__(self, b: TwistExponent):
        self.exponent = b
        super().__init__(f"exponent {b} is not an integer")


def as_rational(b: TwistExponent) -> Optional[Fraction]:
    if isinstance(b, ParamPoly):
        return b.constant_value() if b.is_constant() else None
    return Fraction(b)


def normalize_exponent(b: TwistExponent) -> TwistExponent:
    r = as_rational(b)
    return r if r is not None else b


def is_integer_exponent(b: TwistExponent) -> bool:
    r = as_rational(b)
    return r is not None and r.denominator == 1


def d_value(m: int, z: TwistExponent | int) -> int:
    """min(m, |z|) for integer z, m otherwise."""
    if m < 0:
        raise UsageError(f"m must be nonnegative, got {m}")
    r = as_rational(z if not isinstance(z, int) else Fraction(z))
    if r is not None and r.denominator == 1:
        return min(m, abs(int(r)))
    return m


@dataclass(frozen=True)
class TwistSpec:
    factors: tuple[tuple[Fraction, TwistExponent], ...] = ()

    @staticmethod
    def of(*pairs: tuple[Fraction | int, TwistExponent | int | str]) -> "TwistSpec":
        merged: dict[Fraction, TwistExponent] = {}
        for root, exp in pairs:
            a = Fraction(root)
            b: TwistExponent
            if isinstance(exp, str):
                b = ParamPoly.var(exp)
            elif isinstance(exp, ParamPoly):
                b = exp
            else:
                b = Fraction(exp)
            if a in merged:
                merged[a] = normalize_exponent(ParamPoly.lift(merged[a]) + b)
            else:
                merged[a] = normalize_exponent(b)
        return TwistSpec(tuple(
            (a, b) for a, b in sorted(merged.items(), key=lambda kv: kv[0]) if b != 0
        ))

    @staticmethod
    def monomial(b: TwistExponent | int | str) -> "TwistSpec":
        return TwistSpec.of((0, b))

    @staticmethod
    def parse(text: str) -> "TwistSpec":
        compact = re.sub(r"\s+", "", text)
        if not compact:
            return TwistSpec()
        pairs: list[tuple[Fraction | int, TwistExponent | int | str]] = []
        for piece in compact.split(","):
            m = _FACTOR.match(piece)
            if m is None:
                raise TwistSyntaxError(piece, "expected (x-a)^b")
            if m.group("exp0") is not None or piece.startswith("x"):
                root = Fraction(0)
                exp_text = m.group("exp0")
            else:
                root = Fraction(m.group("root"))
                if m.group("sign") == "+":
                    root = -root
                exp_text = m.group("exp")
            pairs.append((root, parse_exponent(exp_text)))
        return TwistSpec.of(*pairs)

    @property
    def roots(self) -> list[Fraction]:
        return [a for a, _ in self.factors]

    def is_trivial(self) -> bool:
        return not self.factors

    def is_integral(self) -> bool:
        return all(is_integer_exponent(b) for _, b in self.factors)

    def d_total(self, m: int) -> int:
        return sum(d_value(m, b) for _, b in self.factors)

    def product(self, other: "TwistSpec") -> "TwistSpec":
        return TwistSpec.of(*self.factors, *other.factors)

    def inverse(self) -> "TwistSpec":
        return TwistSpec.of(*((a, -ParamPoly.lift(b)) for a, b in self.factors))

    def quotient(self, other: "TwistSpec") -> "TwistSpec":
        return self.product(other.inverse())

    def __str__(self) -> str:
        parts = []
        for a, b in self.factors:
            base = f"(x-{a})" if a >= 0 else f"(x+{-a})"
            exp = str(b)
            if exp == "1":
                parts.append(base)
            else:
                parts.append(f"{base}^{exp}" if _simple(exp) else f"{base}^({exp})")
        return ",".join(parts)


def _simple(text: str) -> bool:
    return re.fullmatch(r"-?\d+|[A-Za-z_]\w*", text) is not None


def parse_exponent(text: Optional[str]) -> TwistExponent | str:
    """A rational, possibly parenthesized, or the name of a formal parameter."""
    if text is None:
        return Fraction(1)
    inner = text[1:-1] if text.startswith("(") and text.endswith(")") else text
    if re.fullmatch(_RATIONAL, inner):
        return Fraction(inner)
    if not inner.isidentifier():
        raise TwistSyntaxError(text, "exponent must be a rational or a parameter name")
    return inner

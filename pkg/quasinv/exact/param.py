"""
Polynomials over Q in finitely many named formal parameters (``z``, ``w``, ...).

These carry formal twist exponents through binomial coefficients. A ParamPoly
with only a constant term behaves as a rational number.
"""
from fractions import Fraction
from typing import Iterable, Mapping, Union

ParamMonomial = tuple[tuple[str, int], ...]

_ONE: ParamMonomial = ()


def _mul_monomials(a: ParamMonomial, b: ParamMonomial) -> ParamMonomial:
    exps = dict(a)
    for name, e in b:
        exps[name] = exps.get(name, 0) + e
    return tuple(sorted(exps.items()))


class ParamPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[ParamMonomial, Fraction | int] | None = None):
        clean: dict[ParamMonomial, Fraction] = {}
        if terms is not None:
            for mono, c in terms.items():
                if c != 0:
                    clean[mono] = Fraction(c)
        self._terms = clean
        self._hash: int | None = None

    @staticmethod
    def const(c: Fraction | int) -> "ParamPoly":
        return ParamPoly({_ONE: c})

    @staticmethod
    def var(name: str) -> "ParamPoly":
        return ParamPoly({((name, 1),): 1})

    @staticmethod
    def lift(x: "ParamLike") -> "ParamPoly":
        if isinstance(x, ParamPoly):
            return x
        return ParamPoly.const(x)

    @property
    def terms(self) -> Mapping[ParamMonomial, Fraction]:
        return self._terms

    def parameters(self) -> set[str]:
        return {name for mono in self._terms for name, _ in mono}

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e for _, e in mono) for mono in self._terms)

    def is_constant(self) -> bool:
        return all(mono == _ONE for mono in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get(_ONE, Fraction(0))

    def evaluate(self, assignment: Mapping[str, Fraction | int]) -> Fraction:
        total = Fraction(0)
        for mono, c in self._terms.items():
            v = c
            for name, e in mono:
                v *= Fraction(assignment[name]) ** e
            total += v
        return total

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: "ParamLike") -> "ParamPoly":
        o = ParamPoly.lift(other)
        res = dict(self._terms)
        for mono, c in o._terms.items():
            res[mono] = res.get(mono, Fraction(0)) + c
        return ParamPoly(res)

    __radd__ = __add__

    def __neg__(self) -> "ParamPoly":
        return ParamPoly({mono: -c for mono, c in self._terms.items()})

    def __sub__(self, other: "ParamLike") -> "ParamPoly":
        return self + (-ParamPoly.lift(other))

    def __rsub__(self, other: "ParamLike") -> "ParamPoly":
        return ParamPoly.lift(other) - self

    def __mul__(self, other: "ParamLike") -> "ParamPoly":
        o = ParamPoly.lift(other)
        res: dict[ParamMonomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in o._terms.items():
                mono = _mul_monomials(m1, m2)
                res[mono] = res.get(mono, Fraction(0)) + c1 * c2
        return ParamPoly(res)

    __rmul__ = __mul__

    def __truediv__(self, other: Fraction | int) -> "ParamPoly":
        d = Fraction(other)
        return ParamPoly({mono: c / d for mono, c in self._terms.items()})

    def __pow__(self, e: int) -> "ParamPoly":
        result = ParamPoly.const(1)
        base = self
        while e > 0:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ParamPoly.const(other)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def _sorted_terms(self) -> Iterable[tuple[ParamMonomial, Fraction]]:
        return sorted(
            self._terms.items(),
            key=lambda kv: (-sum(e for _, e in kv[0]), kv[0])
        )

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for mono, c in self._sorted_terms():
            body = "*".join(name if e == 1 else f"{name}^{e}" for name, e in mono)
            mag = abs(c)
            if not body:
                txt = str(mag)
            elif mag == 1:
                txt = body
            else:
                txt = f"{mag}*{body}"
            sign = "-" if c < 0 else "+"
            if not parts:
                parts.append(txt if sign == "+" else f"-{txt}")
            else:
                parts.append(f"{sign}{txt}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"ParamPoly({self})"


ParamLike = Union[ParamPoly, Fraction, int]


def binomial_param(top: ParamLike, j: int) -> ParamPoly:
    """
    Generalized binomial coefficient top*(top-1)*...*(top-j+1)/j!.
    """
    t = ParamPoly.lift(top)
    acc = ParamPoly.const(1)
    fact = 1
    for i in range(j):
        acc = acc * (t - i)
        fact *= i + 1
    return acc / fact


def binomial_rational(top: Fraction | int, j: int) -> Fraction:
    acc = Fraction(1)
    for i in range(j):
        acc *= (Fraction(top) - i)
        acc /= (i + 1)
    return acc


class ParamRing:
    """
    Coefficient ring Q[z_1..z_k] for MultiPoly, with the same interface as
    ``Field`` for the operations polynomials need.
    """

    token = "param"
    p = None
    characteristic = 0
    is_rational = True

    def zero(self) -> ParamPoly:
        return ParamPoly()

    def one(self) -> ParamPoly:
        return ParamPoly.const(1)

    def coerce(self, x: ParamLike) -> ParamPoly:
        return ParamPoly.lift(x)

    def normalize(self, x: ParamPoly) -> ParamPoly:
        return x

    def is_zero(self, a: ParamPoly) -> bool:
        return not a

    def format(self, a: ParamPoly) -> str:
        return str(a)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ParamRing)

    def __hash__(self) -> int:
        return hash("ParamRing")

    def __str__(self) -> str:
        return "Q[params]"


PARAMS = ParamRing()

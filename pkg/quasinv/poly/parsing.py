"""
Reader for the polynomial text grammar:

    poly  := term (('+'|'-') term)*
    term  := coeff ('*'? var)* | var+
    var   := 'x' index ('^' exponent)?
    coeff := integer | integer '/' integer

Whitespace is ignored. A leading sign on the first term is accepted.
"""
import re
from fractions import Fraction
from typing import Optional

from quasinv.core.errors import UsageError
from quasinv.exact.field import ZeroInverse
from quasinv.poly.multipoly import Exponent, IndexOutOfRange, MultiPoly, Ring

_TOKEN = re.compile(r"(?P<num>\d+(?:/\d+)?)|(?P<var>x(?P<idx>\d+)(?:\^(?P<exp>\d+))?)|(?P<op>[+\-*])")


class PolynomialSyntaxError(UsageError):
    def __init__(self, text: str, position: int, reason: str):
        self.text = text
        self.position = position
        super().__init__(f"Cannot parse polynomial at position {position}: {reason}")


def _tokenize(text: str) -> list[tuple[str, re.Match[str]]]:
    compact = re.sub(r"\s+", "", text)
    out: list[tuple[str, re.Match[str]]] = []
    pos = 0
    while pos < len(compact):
        m = _TOKEN.match(compact, pos)
        if m is None:
            raise PolynomialSyntaxError(text, pos, f"unexpected character '{compact[pos]}'")
        kind = m.lastgroup if m.lastgroup in ("num", "op") else "var"
        out.append((kind, m))
        pos = m.end()
    return out


def parse_poly(text: str, ring: Ring, n: Optional[int] = None) -> MultiPoly:
    """
    Parse ``text`` into a polynomial over ``ring``. When ``n`` is None the
    variable count is the largest index mentioned (at least 1).
    """
    tokens = _tokenize(text)
    if not tokens:
        raise PolynomialSyntaxError(text, 0, "empty polynomial")

    raw_terms: list[tuple[Fraction, dict[int, int], int]] = []
    pos = 0
    sign = 1
    if tokens[0][0] == "op" and tokens[0][1].group("op") in "+-":
        sign = -1 if tokens[0][1].group("op") == "-" else 1
        pos = 1
    while True:
        coeff = Fraction(1)
        vars_: dict[int, int] = {}
        saw_factor = False
        start = tokens[pos][1].start() if pos < len(tokens) else len(text)
        if pos < len(tokens) and tokens[pos][0] == "num":
            try:
                coeff = Fraction(tokens[pos][1].group("num"))
            except ZeroDivisionError:
                raise PolynomialSyntaxError(text, start, "zero denominator")
            pos += 1
            saw_factor = True
        while pos < len(tokens):
            kind, m = tokens[pos]
            if kind == "op" and m.group("op") == "*":
                if not saw_factor or pos + 1 >= len(tokens) or tokens[pos + 1][0] != "var":
                    raise PolynomialSyntaxError(text, m.start(), "'*' must join factors")
                pos += 1
                continue
            if kind != "var":
                break
            idx = int(m.group("idx"))
            if idx < 1:
                raise PolynomialSyntaxError(text, m.start(), "variable indices start at 1")
            vars_[idx] = vars_.get(idx, 0) + int(m.group("exp") or 1)
            saw_factor = True
            pos += 1
        if not saw_factor:
            where = tokens[pos][1].start() if pos < len(tokens) else len(text)
            raise PolynomialSyntaxError(text, where, "expected a term")
        raw_terms.append((sign * coeff, vars_, start))
        if pos >= len(tokens):
            break
        kind, m = tokens[pos]
        if kind != "op" or m.group("op") not in "+-":
            raise PolynomialSyntaxError(text, m.start(), "expected '+' or '-'")
        sign = -1 if m.group("op") == "-" else 1
        pos += 1
        if pos >= len(tokens):
            raise PolynomialSyntaxError(text, m.start(), "dangling sign")

    top = max((i for _, v, _ in raw_terms for i in v), default=1)
    if n is None:
        n = top
    elif top > n:
        raise IndexOutOfRange(top, n)

    acc = MultiPoly.zero(n, ring)
    for c, vars_, start in raw_terms:
        e = [0] * n
        for i, k in vars_.items():
            e[i - 1] += k
        exp: Exponent = tuple(e)
        try:
            value = ring.coerce(c)
        except ZeroInverse:
            raise PolynomialSyntaxError(text, start, f"coefficient {c} has no value in {ring}")
        acc = acc + MultiPoly.monomial(n, ring, exp, value)
    return acc

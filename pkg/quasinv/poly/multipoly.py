"""
Sparse multivariate polynomials in x1..xn.

A ``MultiPoly`` is an immutable map from exponent vectors to nonzero
coefficients, where the coefficients live in a ``Field`` (rationals or F_p) or
in the parameter ring ``Q[z, ...]``. Output and iteration follow the canonical
order: ascending total degree, then descending lexicographic exponents.
"""
import logging
import math
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Any, Callable, Iterable, Mapping, Union

from quasinv.core.errors import UsageError
from quasinv.exact.field import Field
from quasinv.exact.param import ParamPoly, ParamRing

logger = logging.getLogger(__name__)

Exponent = tuple[int, ...]
Ring = Union[Field, ParamRing]
Coeff = Any


class IndexOutOfRange(UsageError):
    def __init__(self, index: int, n: int):
        self.index = index
        self.n = n
        super().__init__(f"Variable index {index} is outside 1..{n}")


class RingMismatch(UsageError):
    def __init__(self, left: Ring, right: Ring):
        super().__init__(f"Cannot combine polynomials over {left} and {right}")


class Transposition:
    """The swap s_{i,j} of x_i and x_j, stored 1-based with i < j."""
    __slots__ = ("i", "j")

    def __init__(self, i: int, j: int):
        if i == j:
            raise UsageError(f"Transposition needs distinct indices, got ({i},{j})")
        self.i, self.j = (i, j) if i < j else (j, i)

    def check(self, n: int) -> None:
        for idx in (self.i, self.j):
            if not 1 <= idx <= n:
                raise IndexOutOfRange(idx, n)

    def swap(self, e: Exponent) -> Exponent:
        a, b = self.i - 1, self.j - 1
        lst = list(e)
        lst[a], lst[b] = lst[b], lst[a]
        return tuple(lst)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Transposition) and (self.i, self.j) == (other.i, other.j)

    def __hash__(self) -> int:
        return hash((self.i, self.j))

    def __repr__(self) -> str:
        return f"Transposition({self.i},{self.j})"


def all_transpositions(n: int) -> list[Transposition]:
    return [Transposition(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def adjacent_transpositions(n: int) -> list[Transposition]:
    return [Transposition(i, i + 1) for i in range(1, n)]


def canonical_key(e: Exponent) -> tuple[int, tuple[int, ...]]:
    return (sum(e), tuple(-x for x in e))


@lru_cache(maxsize=None)
def monomials(n: int, d: int) -> tuple[Exponent, ...]:
    """Exponent vectors of total degree d in n variables, in canonical order."""
    if n == 0:
        return ((),) if d == 0 else ()
    if n == 1:
        return ((d,),)
    out: list[Exponent] = []
    for first in range(d, -1, -1):
        for rest in monomials(n - 1, d - first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def power_remainder(a: int, e: int) -> tuple[tuple[int, int], ...]:
    """
    Remainder of x_i^a modulo (x_i - x_j)^e, as pairs (l, c) meaning
    c * x_i^l * x_j^(a-l). Coefficients are integers, so the table is valid in
    every characteristic.
    """
    if a < e:
        return ((a, 1),)
    out: list[tuple[int, int]] = []
    for l in range(e):
        c = 0
        for k in range(l, e):
            c += math.comb(a, k) * math.comb(k, l) * (-1 if (k - l) % 2 else 1)
        if c:
            out.append((l, c))
    return tuple(out)


class MultiPoly:
    __slots__ = ("n", "ring", "_terms", "_hash")

    def __init__(self, n: int, ring: Ring, terms: Mapping[Exponent, Coeff] | None = None):
        self.n = n
        self.ring = ring
        clean: dict[Exponent, Coeff] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != n:
                    raise UsageError(f"Exponent vector {e} does not have length {n}")
                if not ring.is_zero(c):
                    clean[e] = c
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _raw(cls, n: int, ring: Ring, terms: dict[Exponent, Coeff]) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj.n = n
        obj.ring = ring
        obj._terms = {e: c for e, c in terms.items() if not ring.is_zero(c)}
        obj._hash = None
        return obj

    @staticmethod
    def zero(n: int, ring: Ring) -> "MultiPoly":
        return MultiPoly._raw(n, ring, {})

    @staticmethod
    def const(n: int, ring: Ring, c: Coeff) -> "MultiPoly":
        return MultiPoly._raw(n, ring, {(0,) * n: ring.coerce(c)})

    @staticmethod
    def one(n: int, ring: Ring) -> "MultiPoly":
        return MultiPoly.const(n, ring, 1)

    @staticmethod
    def var(n: int, ring: Ring, i: int) -> "MultiPoly":
        if not 1 <= i <= n:
            raise IndexOutOfRange(i, n)
        e = [0] * n
        e[i - 1] = 1
        return MultiPoly._raw(n, ring, {tuple(e): ring.one()})

    @staticmethod
    def monomial(n: int, ring: Ring, e: Exponent, c: Coeff = 1) -> "MultiPoly":
        return MultiPoly._raw(n, ring, {tuple(e): ring.coerce(c)})

    @property
    def terms(self) -> Mapping[Exponent, Coeff]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, e: Exponent) -> Coeff:
        return self._terms.get(tuple(e), self.ring.zero())

    def sorted_terms(self) -> list[tuple[Exponent, Coeff]]:
        return sorted(self._terms.items(), key=lambda kv: canonical_key(kv[0]))

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i - 1] for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def _check(self, other: "MultiPoly") -> None:
        if self.n != other.n:
            raise UsageError(f"Variable count mismatch: {self.n} vs {other.n}")
        if self.ring != other.ring:
            raise RingMismatch(self.ring, other.ring)

    def _lift(self, other: "MultiPoly | Coeff") -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.const(self.n, self.ring, other)

    def __add__(self, other: "MultiPoly | Coeff") -> "MultiPoly":
        o = self._lift(other)
        norm = self.ring.normalize
        res = dict(self._terms)
        for e, c in o._terms.items():
            if e in res:
                res[e] = norm(res[e] + c)
            else:
                res[e] = c
        return MultiPoly._raw(self.n, self.ring, res)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        norm = self.ring.normalize
        return MultiPoly._raw(self.n, self.ring, {e: norm(-c) for e, c in self._terms.items()})

    def __sub__(self, other: "MultiPoly | Coeff") -> "MultiPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other: Coeff) -> "MultiPoly":
        return self._lift(other) - self

    def scale(self, c: Coeff) -> "MultiPoly":
        s = self.ring.coerce(c)
        norm = self.ring.normalize
        return MultiPoly._raw(self.n, self.ring, {e: norm(v * s) for e, v in self._terms.items()})

    def __mul__(self, other: "MultiPoly | Coeff") -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check(other)
        norm = self.ring.normalize
        res: dict[Exponent, Coeff] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                if e in res:
                    res[e] = res[e] + v
                else:
                    res[e] = v
        return MultiPoly._raw(self.n, self.ring, {e: norm(c) for e, c in res.items()})

    def __rmul__(self, other: Coeff) -> "MultiPoly":
        return self.scale(other)

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise UsageError("negative powers of polynomials are not supported")
        result = MultiPoly.one(self.n, self.ring)
        base = self
        while k > 0:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.n == other.n and self.ring == other.ring and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def map_exponents(self, f: Callable[[Exponent], Exponent], n: int | None = None) -> "MultiPoly":
        """Apply ``f`` to every exponent vector, merging collisions."""
        target_n = self.n if n is None else n
        norm = self.ring.normalize
        res: dict[Exponent, Coeff] = {}
        for e, c in self._terms.items():
            k = f(e)
            res[k] = norm(res[k] + c) if k in res else c
        return MultiPoly._raw(target_n, self.ring, res)

    def map_coefficients(self, f: Callable[[Coeff], Coeff], ring: Ring | None = None) -> "MultiPoly":
        target = self.ring if ring is None else ring
        return MultiPoly._raw(self.n, target, {e: f(c) for e, c in self._terms.items()})

    def change_ring(self, ring: Ring) -> "MultiPoly":
        return self.map_coefficients(ring.coerce, ring)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"MultiPoly({self.n}, {self.ring}, {format_poly(self)})"


def apply_transposition(F: MultiPoly, t: Transposition) -> MultiPoly:
    t.check(F.n)
    return MultiPoly._raw(F.n, F.ring, {t.swap(e): c for e, c in F.terms.items()})


def is_symmetric(F: MultiPoly) -> bool:
    return all(apply_transposition(F, t) == F for t in adjacent_transpositions(F.n))


def divmod_monic(F: MultiPoly, D: MultiPoly, i: int) -> tuple[MultiPoly, MultiPoly]:
    """
    Long division of F by D viewed as univariate in x_i over the remaining
    variables. D must be monic in x_i: its x_i-leading part is exactly x_i^e.
    """
    F._check(D)
    if not 1 <= i <= F.n:
        raise IndexOutOfRange(i, F.n)
    idx = i - 1
    e = D.degree_in(i)
    if e < 0:
        raise ZeroDivisionError("division by the zero polynomial")
    lead = [(x, c) for x, c in D.terms.items() if x[idx] == e]
    if len(lead) != 1 or any(v for k, v in enumerate(lead[0][0]) if k != idx) or lead[0][1] != 1:
        raise UsageError(f"divisor {D} is not monic in x{i}")
    tail = [(x, c) for x, c in D.terms.items() if x[idx] < e]
    norm = F.ring.normalize
    zero = F.ring.is_zero

    buckets: dict[int, dict[Exponent, Coeff]] = {}
    for x, c in F.terms.items():
        buckets.setdefault(x[idx], {})[x] = c
    quot: dict[Exponent, Coeff] = {}
    top = max(buckets, default=-1)
    for deg in range(top, e - 1, -1):
        layer = buckets.pop(deg, None)
        if not layer:
            continue
        for x, c in layer.items():
            if zero(c):
                continue
            q = list(x)
            q[idx] -= e
            qe = tuple(q)
            quot[qe] = norm(quot[qe] + c) if qe in quot else c
            for y, d in tail:
                z = tuple(a + b for a, b in zip(qe, y))
                bucket = buckets.setdefault(z[idx], {})
                bucket[z] = norm(bucket[z] - c * d) if z in bucket else norm(-c * d)
    rem: dict[Exponent, Coeff] = {}
    for layer in buckets.values():
        rem.update(layer)
    return MultiPoly._raw(F.n, F.ring, quot), MultiPoly._raw(F.n, F.ring, rem)


def rem_pow_diff(F: MultiPoly, t: Transposition, e: int) -> MultiPoly:
    """
    Remainder of F modulo (x_i - x_j)^e with F viewed as univariate in x_i.
    Uses the cached integer table ``power_remainder``, which is the same long
    division carried out once per x_i-degree.
    """
    t.check(F.n)
    if e < 1:
        raise UsageError(f"exponent must be positive, got {e}")
    a_idx, b_idx = t.i - 1, t.j - 1
    ring = F.ring
    norm = ring.normalize
    res: dict[Exponent, Coeff] = {}
    for x, c in F.terms.items():
        a = x[a_idx]
        total = a + x[b_idx]
        for l, k in power_remainder(a, e):
            y = list(x)
            y[a_idx] = l
            y[b_idx] = total - l
            ye = tuple(y)
            v = c * k
            res[ye] = norm(res[ye] + v) if ye in res else norm(v)
    return MultiPoly._raw(F.n, ring, res)


def diff_power(n: int, ring: Ring, i: int, j: int, e: int) -> MultiPoly:
    """(x_i - x_j)^e expanded binomially."""
    res: dict[Exponent, Coeff] = {}
    for k in range(e + 1):
        x = [0] * n
        x[i - 1] = k
        x[j - 1] = e - k
        c = math.comb(e, k) * (-1 if (e - k) % 2 else 1)
        res[tuple(x)] = ring.coerce(c)
    return MultiPoly._raw(n, ring, res)


def diff_product(n: int, exponent: int, ring: Ring) -> MultiPoly:
    """Product over i < j of (x_i - x_j)^exponent."""
    if exponent < 0:
        raise UsageError(f"exponent must be nonnegative, got {exponent}")
    factors = [diff_power(n, ring, t.i, t.j, exponent) for t in all_transpositions(n)]
    return reduce(lambda a, b: a * b, factors, MultiPoly.one(n, ring))


def diagonal(F: MultiPoly, i: int, j: int) -> MultiPoly:
    """F restricted to x_i = x_j, written in x_j."""
    Transposition(i, j).check(F.n)

    def merge(e: Exponent) -> Exponent:
        y = list(e)
        y[j - 1] += y[i - 1]
        y[i - 1] = 0
        return tuple(y)

    return F.map_exponents(merge)


def substitute_shift(F: MultiPoly, i: int, a: Coeff) -> MultiPoly:
    """F with x_i replaced by x_i + a."""
    if not 1 <= i <= F.n:
        raise IndexOutOfRange(i, F.n)
    ring = F.ring
    shift = ring.coerce(a)
    if ring.is_zero(shift):
        return F
    idx = i - 1
    norm = ring.normalize
    res: dict[Exponent, Coeff] = {}
    for x, c in F.terms.items():
        k = x[idx]
        for l in range(k + 1):
            y = list(x)
            y[idx] = l
            ye = tuple(y)
            v = c * math.comb(k, l) * shift ** (k - l)
            res[ye] = norm(res[ye] + v) if ye in res else norm(v)
    return MultiPoly._raw(F.n, ring, res)


def frobenius(F: MultiPoly, a: int) -> MultiPoly:
    """
    F^(p^a) over F_p. Coefficients of F_p are fixed by Frobenius, so the power
    is the exponent map x^e -> x^(p^a e).
    """
    ring = F.ring
    if not isinstance(ring, Field) or ring.p is None:
        raise UsageError("frobenius requires a prime field")
    q = ring.p ** a
    return MultiPoly._raw(F.n, ring, {tuple(q * v for v in e): c for e, c in F.terms.items()})


def primitive_integer_part(F: MultiPoly) -> MultiPoly:
    """
    The integer, content-free multiple of a rational polynomial, normalized so
    that its first term in canonical order is positive.
    """
    ring = F.ring
    if not isinstance(ring, Field) or ring.p is not None:
        raise UsageError("primitive_integer_part requires rational coefficients")
    if F.is_zero():
        return F
    den = 1
    for c in F.terms.values():
        den = math.lcm(den, Fraction(c).denominator)
    ints = {e: int(Fraction(c) * den) for e, c in F.terms.items()}
    g = 0
    for v in ints.values():
        g = math.gcd(g, v)
    first = min(ints, key=canonical_key)
    if ints[first] < 0:
        g = -g
    return MultiPoly._raw(F.n, ring, {e: Fraction(v // g) for e, v in ints.items()})


def reduce_mod(F: MultiPoly, field: Field) -> MultiPoly:
    return F.change_ring(field)


def random_poly(
    n: int, ring: Ring, degree: int, draw: Callable[[], int], homogeneous: bool = False
) -> MultiPoly:
    """Dense polynomial with coefficients drawn from ``draw``; used by property tests."""
    degrees: Iterable[int] = [degree] if homogeneous else range(degree + 1)
    terms: dict[Exponent, Coeff] = {}
    for d in degrees:
        for e in monomials(n, d):
            terms[e] = ring.coerce(draw())
    return MultiPoly(n, ring, terms)


def _format_coeff(ring: Ring, c: Coeff) -> tuple[bool, str]:
    """Returns (negative, magnitude text) for a coefficient."""
    if isinstance(c, ParamPoly):
        if c.is_constant():
            v = c.constant_value()
            return v < 0, str(abs(v))
        return False, f"({c})"
    if isinstance(c, Fraction):
        return c < 0, str(abs(c))
    return False, str(c)


def format_term(e: Exponent) -> str:
    parts = []
    for k, v in enumerate(e):
        if v == 1:
            parts.append(f"x{k + 1}")
        elif v > 1:
            parts.append(f"x{k + 1}^{v}")
    return "*".join(parts)


def format_poly(F: MultiPoly) -> str:
    """Canonical text: terms in canonical order, coefficients as integers or a/b."""
    if F.is_zero():
        return "0"
    out: list[str] = []
    for e, c in F.sorted_terms():
        negative, mag = _format_coeff(F.ring, c)
        body = format_term(e)
        if not body:
            txt = mag
        elif mag == "1":
            txt = body
        else:
            txt = f"{mag}*{body}"
        if not out:
            out.append(f"-{txt}" if negative else txt)
        else:
            out.append(f"-{txt}" if negative else f"+{txt}")
    return "".join(out)

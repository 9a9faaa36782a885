import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import sympy

from quasinv.core.errors import UsageError, VerificationFailure

logger = logging.getLogger(__name__)

# Residue arithmetic for primes below this bound fits in int64 with widening products.
WORD_PRIME_BOUND = 2**31

Scalar = Fraction | int


class ZeroInverse(VerificationFailure):
    def __init__(self, field: "Field"):
        self.field = field
        super().__init__(f"Attempted to invert zero in {field.token}")


class NotPrime(UsageError):
    def __init__(self, p: int):
        self.p = p
        super().__init__(f"{p} is not prime")


class FieldSyntaxError(UsageError):
    def __init__(self, token: str):
        self.token = token
        super().__init__(f"Unrecognized field '{token}', expected 'q' or 'fp:P'")


def is_prime(p: int) -> bool:
    return bool(sympy.isprime(p))


@dataclass(frozen=True)
class Field:
    """
    Either the rationals (``p is None``) or the prime field F_p.

    Scalars of the rationals are ``Fraction`` instances; scalars of F_p are ints
    in the canonical range [0, p).
    """
    p: Optional[int] = None

    def __post_init__(self) -> None:
        if self.p is not None and not is_prime(self.p):
            raise NotPrime(self.p)

    @staticmethod
    def rationals() -> "Field":
        return Field(None)

    @staticmethod
    def prime(p: int) -> "Field":
        return Field(p)

    @staticmethod
    def parse(token: str) -> "Field":
        t = token.strip().lower()
        if t in ("q", "qq"):
            return Field(None)
        if t.startswith("fp:"):
            try:
                p = int(t[3:])
            except ValueError:
                raise FieldSyntaxError(token)
            if p < 2:
                raise NotPrime(p)
            return Field(p)
        raise FieldSyntaxError(token)

    @property
    def token(self) -> str:
        return "q" if self.p is None else f"fp:{self.p}"

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def word_sized(self) -> bool:
        return self.p is not None and self.p < WORD_PRIME_BOUND

    def zero(self) -> Scalar:
        return Fraction(0) if self.p is None else 0

    def one(self) -> Scalar:
        return Fraction(1) if self.p is None else 1

    def coerce(self, x: int | Fraction) -> Scalar:
        """
        Map an integer or rational into this field. Over F_p a denominator
        divisible by p raises ``ZeroInverse``.
        """
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            num, den = x.numerator % self.p, x.denominator % self.p
            if den == 0:
                raise ZeroInverse(self)
            return num * pow(den, -1, self.p) % self.p
        return x % self.p

    def normalize(self, x: Scalar) -> Scalar:
        return x if self.p is None else x % self.p

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return self.normalize(a + b)

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return self.normalize(a - b)

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return self.normalize(a * b)

    def neg(self, a: Scalar) -> Scalar:
        return self.normalize(-a)

    def is_zero(self, a: Scalar) -> bool:
        return a == 0

    def inv(self, a: Scalar) -> Scalar:
        return scalar_inverse(a, self)

    def format(self, a: Scalar) -> str:
        return str(a)

    def __str__(self) -> str:
        return "Q" if self.p is None else f"F_{self.p}"


def scalar_inverse(s: Scalar, field: Field) -> Scalar:
    if s == 0:
        raise ZeroInverse(field)
    if field.p is None:
        return 1 / Fraction(s)
    return pow(int(s), -1, field.p)


def rational_reconstruction(a: int, modulus: int) -> Optional[Fraction]:
    """
    Find r/s congruent to ``a`` mod ``modulus`` with |r|, s <= sqrt(modulus/2),
    by the half extended Euclidean algorithm. Returns None when no such
    fraction exists.
    """
    a %= modulus
    bound = math.isqrt(modulus // 2)
    r0, r1 = modulus, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or math.gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)

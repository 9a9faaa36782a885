from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class TruncatedSeries:
    """
    Power series in t with exact rational coefficients, known modulo t^order.
    """
    order: int
    coeffs: tuple[Fraction, ...]

    @staticmethod
    def of(coeffs: Sequence[Fraction | int], order: int) -> "TruncatedSeries":
        padded = [Fraction(c) for c in coeffs[:order]]
        padded.extend(Fraction(0) for _ in range(order - len(padded)))
        return TruncatedSeries(order, tuple(padded))

    @staticmethod
    def one(order: int) -> "TruncatedSeries":
        return TruncatedSeries.of([1], order)

    @staticmethod
    def geometric_inverse(h: int, order: int) -> "TruncatedSeries":
        """1/(1 - t^h) = 1 + t^h + t^{2h} + ..."""
        if h < 1:
            raise ValueError(f"geometric inverse needs h >= 1, got {h}")
        c = [Fraction(0)] * order
        for d in range(0, order, h):
            c[d] = Fraction(1)
        return TruncatedSeries(order, tuple(c))

    @staticmethod
    def binomial_factor(i: int, order: int) -> "TruncatedSeries":
        """The polynomial 1 - t^i."""
        c = [Fraction(0)] * order
        if order > 0:
            c[0] = Fraction(1)
        if i < order:
            c[i] -= 1
        return TruncatedSeries(order, tuple(c))

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        order = min(self.order, other.order)
        return TruncatedSeries(order, tuple(a + b for a, b in zip(self.coeffs[:order], other.coeffs[:order])))

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        order = min(self.order, other.order)
        out = [Fraction(0)] * order
        for i, a in enumerate(self.coeffs[:order]):
            if a == 0:
                continue
            for j in range(order - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return TruncatedSeries(order, tuple(out))

    def scale(self, c: Fraction | int) -> "TruncatedSeries":
        return TruncatedSeries(self.order, tuple(a * c for a in self.coeffs))

    def shift(self, k: int) -> "TruncatedSeries":
        """
        Multiply by t^k. Negative k is allowed when the low coefficients being
        dropped are zero; the order shrinks accordingly for k < 0.
        """
        if k >= 0:
            c = (Fraction(0),) * k + self.coeffs[: max(self.order - k, 0)]
            return TruncatedSeries(self.order, c)
        drop = -k
        if any(self.coeffs[:drop]):
            raise ValueError(f"cannot divide by t^{drop}: low coefficients are nonzero")
        return TruncatedSeries(self.order - drop, self.coeffs[drop:])

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def integer_coeffs(self) -> list[int]:
        return [int(c) for c in self.coeffs]

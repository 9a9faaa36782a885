from dataclasses import dataclass
from functools import cache
from math import factorial, prod
from typing import Literal

from sympy.utilities.iterables import partitions

from quasinv.core.errors import UsageError

BoxOrder = Literal["row", "column"]


@dataclass(frozen=True)
class Box:
    row: int
    col: int
    arm: int
    leg: int

    @property
    def hook(self) -> int:
        return self.arm + self.leg + 1


def conjugate_partition(shape: tuple[int, ...]) -> tuple[int, ...]:
    if not shape:
        return ()
    return tuple(sum(1 for part in shape if part > i) for i in range(shape[0]))


def check_partition_shape(shape: tuple[int, ...]) -> bool:
    return all(p > 0 for p in shape) and all(a >= b for a, b in zip(shape, shape[1:]))


@dataclass(frozen=True)
class YoungDiagram:
    """
    Young diagram of a partition, with per-box arm (boxes to the right), leg
    (boxes below) and hook length.
    """
    shape: tuple[int, ...]

    def __post_init__(self) -> None:
        if not check_partition_shape(self.shape):
            raise UsageError(f"{self.shape} is not a partition")

    @property
    def n(self) -> int:
        return sum(self.shape)

    @property
    def conjugate(self) -> tuple[int, ...]:
        return conjugate_partition(self.shape)

    def boxes(self, order: BoxOrder = "row") -> list[Box]:
        conj = self.conjugate
        cells = [(r, c) for r, part in enumerate(self.shape) for c in range(part)]
        if order == "column":
            cells.sort(key=lambda rc: (rc[1], rc[0]))
        return [Box(r, c, self.shape[r] - c - 1, conj[c] - r - 1) for r, c in cells]

    def hooks(self, order: BoxOrder = "row") -> list[int]:
        return [b.hook for b in self.boxes(order)]

    def hook_product(self) -> int:
        return prod(self.hooks())

    def hook_count(self) -> int:
        """Standard tableaux of this shape by the hook length formula."""
        return factorial(self.n) // self.hook_product()


def young_diagrams(n: int) -> list[YoungDiagram]:
    """All partitions of n, largest first part first."""
    out = []
    for p in partitions(n):
        shape = tuple(sorted((part for part, mult in p.items() for _ in range(mult)), reverse=True))
        out.append(YoungDiagram(shape))
    out.sort(key=lambda yd: yd.shape, reverse=True)
    return out


def standard_tableaux_count(shape: tuple[int, ...]) -> int:
    """
    Count standard fillings by removing corner boxes one at a time; the
    largest entry of a standard tableau always sits in a corner.
    """
    if not check_partition_shape(shape):
        raise UsageError(f"{shape} is not a partition")

    @cache
    def count(s: tuple[int, ...]) -> int:
        if sum(s) <= 1:
            return 1
        total = 0
        for i, part in enumerate(s):
            if i + 1 == len(s) or s[i + 1] < part:
                smaller = s[:i] + (part - 1,) + s[i + 1:]
                total += count(tuple(x for x in smaller if x > 0))
        return total

    return count(shape)

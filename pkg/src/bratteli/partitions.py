"""Partitions, Young diagrams and the cover relation of the Young lattice.

Partitions are tuples of weakly decreasing positive integers. Cells are
1-based ``(row, col)`` pairs with rows counted downward and columns across,
so the diagram of ``(5, 4, 4, 1)`` has 5 cells in row 1 and 1 cell in row 4.
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Iterator, NamedTuple

from .errors import CapExceededError, NotContainedError

DEFAULT_CAP = 60


class Partition(tuple):
    """Weakly decreasing tuple of positive integers; ``Partition()`` is the empty partition."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts must be weakly decreasing: {parts}")
        if parts and parts[-1] < 1:
            raise ValueError(f"parts must be positive: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def _trusted(cls, parts) -> Partition:
        return tuple.__new__(cls, parts)

    @property
    def parts(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """The i-th part (1-based), zero beyond the length."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def conjugate(self) -> Partition:
        return conjugate(self)

    def cells(self) -> Iterator[Cell]:
        for i, row in enumerate(self, start=1):
            for j in range(1, row + 1):
                yield Cell(i, j)

    def contains(self, other: Partition) -> bool:
        """True if the diagram of ``other`` lies inside the diagram of ``self``."""
        return len(other) <= len(self) and all(a <= b for a, b in zip(other, self))

    def __repr__(self) -> str:
        return f"Partition({list(self)})"

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self)) + ")" if self else "()"


EMPTY = Partition()


class Cell(NamedTuple):
    row: int
    col: int


class CoverStep(NamedTuple):
    """An edge ``parent -> child`` of the Young lattice; ``col`` is the column of the added cell."""

    parent: Partition
    child: Partition
    col: int

    @property
    def row(self) -> int:
        return conjugate(self.child)[self.col - 1]

    @property
    def cell(self) -> Cell:
        return Cell(self.row, self.col)


@lru_cache(maxsize=65536)
def conjugate(lam: Partition) -> Partition:
    if not lam:
        return EMPTY
    return Partition._trusted(
        tuple(sum(1 for part in lam if part >= j) for j in range(1, lam[0] + 1))
    )


def n_stat(lam: Partition) -> int:
    """n(lambda) = sum (i - 1) lambda_i."""
    return sum(i * part for i, part in enumerate(lam))


def arm_leg_hook(lam: Partition, cell: tuple[int, int]) -> tuple[int, int, int]:
    i, j = cell
    if not (1 <= i <= len(lam) and 1 <= j <= lam[i - 1]):
        raise ValueError(f"cell {tuple(cell)} is outside the diagram of {lam}")
    arm = lam[i - 1] - j
    leg = conjugate(lam)[j - 1] - i
    return arm, leg, arm + leg + 1


def hooks(lam: Partition) -> list[int]:
    conj = conjugate(lam)
    return [lam[i] - j + conj[j - 1] - i for i in range(len(lam)) for j in range(1, lam[i] + 1)]


def add_cell(lam: Partition, row: int) -> Partition:
    parts = list(lam)
    if row == len(parts) + 1:
        parts.append(1)
    else:
        parts[row - 1] += 1
    return Partition(parts)


def addable_columns(lam: Partition) -> list[CoverStep]:
    """All covers of ``lam`` in increasing column order."""
    steps = []
    # rows from the bottom up give columns from left to right
    for r in range(len(lam) + 1, 0, -1):
        if r == 1 or lam[r - 2] > lam.part(r):
            parts = list(lam)
            if r > len(parts):
                parts.append(1)
            else:
                parts[r - 1] += 1
            child = Partition._trusted(tuple(parts))
            steps.append(CoverStep(lam, child, lam.part(r) + 1))
    return steps


def removable_steps(lam: Partition) -> list[CoverStep]:
    """All cover steps ending at ``lam``, in increasing column order of the removed cell."""
    steps = []
    for r in range(len(lam), 0, -1):
        if r == len(lam) or lam[r - 1] > lam[r]:
            parts = list(lam)
            parts[r - 1] -= 1
            if parts[r - 1] == 0:
                parts.pop()
            steps.append(CoverStep(Partition._trusted(tuple(parts)), lam, lam[r - 1]))
    return steps


def cover_step(parent: Partition, child: Partition) -> CoverStep:
    for step in addable_columns(parent):
        if step.child == child:
            return step
    raise ValueError(f"{child} does not cover {parent}")


def row_col_sets(step: CoverStep) -> tuple[set[Cell], set[Cell]]:
    """Cells of the parent in the same row and in the same column as the added cell."""
    i, j = step.cell
    lam = step.parent
    row = {Cell(i, c) for c in range(1, lam.part(i) + 1)}
    col = {Cell(r, j) for r in range(1, len(lam) + 1) if lam[r - 1] >= j}
    return row, col


def enumerate_partitions(n: int, cap: int = DEFAULT_CAP) -> list[Partition]:
    """All partitions of n in reverse-lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > cap:
        raise CapExceededError(f"n={n} exceeds the enumeration cap {cap}")
    return list(_partitions(n))


@lru_cache(maxsize=128)
def _partitions(n: int) -> tuple[Partition, ...]:
    out = []

    def rec(remaining, max_part, prefix):
        if remaining == 0:
            out.append(Partition._trusted(tuple(prefix)))
            return
        for k in range(min(remaining, max_part), 0, -1):
            prefix.append(k)
            rec(remaining - k, k, prefix)
            prefix.pop()

    rec(n, n, [])
    return tuple(out)


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """p(n) from Euler's pentagonal number recurrence."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total, k = 0, 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 > n:
            break
        sign = 1 if k % 2 else -1
        total += sign * partition_count(n - g1)
        g2 = k * (3 * k + 1) // 2
        if g2 <= n:
            total += sign * partition_count(n - g2)
        k += 1
    return total


def syt_count(lam: Partition) -> int:
    """f^lambda by the hook-length formula."""
    return factorial(sum(lam)) // prod(hooks(lam))


def is_horizontal_strip(outer: Partition, inner: Partition) -> bool:
    """outer/inner has at most one cell per column (interlacing)."""
    return outer.contains(inner) and all(inner.part(i) >= outer.part(i + 1) for i in range(1, len(outer) + 1))


def horizontal_strips_below(lam: Partition, max_rows: int | None = None) -> Iterator[Partition]:
    """All mu with lam/mu a horizontal strip, optionally limited to ``max_rows`` rows."""
    n = len(lam)
    bounds = [(lam.part(i + 1), lam[i - 1]) for i in range(1, n + 1)]

    def rec(i, prefix):
        if i > n:
            while prefix and prefix[-1] == 0:
                prefix = prefix[:-1]
            if max_rows is None or len(prefix) <= max_rows:
                yield Partition._trusted(tuple(prefix))
            return
        lo, hi = bounds[i - 1]
        for v in range(hi, lo - 1, -1):
            yield from rec(i + 1, prefix + [v])

    yield from rec(1, [])


def paths_between(lower: Partition, upper: Partition) -> Iterator[tuple[CoverStep, ...]]:
    """Every saturated chain lower -> ... -> upper in the Young lattice."""
    if not upper.contains(lower):
        raise NotContainedError(f"{lower} is not contained in {upper}")

    def rec(lam, acc):
        if lam == upper:
            yield tuple(acc)
            return
        for step in addable_columns(lam):
            if upper.contains(step.child):
                acc.append(step)
                yield from rec(step.child, acc)
                acc.pop()

    yield from rec(lower, [])


def partition_from_json(value) -> Partition:
    if not isinstance(value, (list, tuple)) or not all(isinstance(v, int) for v in value):
        raise ValueError(f"partition must be a list of integers, got {value!r}")
    return Partition(value)

"""Partition combinatorics: Young diagrams, arms and legs, block data.

Box convention: the diagram of a partition lambda = (lambda_1 >= ... >=
lambda_l > 0) is the set of integer points (i, j) with 1 <= i <= lambda_j.
The first coordinate i indexes the column, the second the row.  The arm of a
box counts the boxes strictly to its right in its row, the leg counts the
boxes strictly above it in its column.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import BoxOutsideDiagramError

__all__ = [
    "Partition",
    "enumerate_partitions",
    "arm_leg",
    "pairing",
    "block_data",
]


@dataclass(frozen=True)
class Partition:
    """A partition with cached conjugate and block bookkeeping.

    parts: weakly decreasing tuple of positive integers (empty for the zero
    partition).
    """

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p <= 0 for p in parts):
            raise ValueError("partition parts must be positive")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError("partition parts must be weakly decreasing")

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def conjugate(self) -> tuple[int, ...]:
        if not self.parts:
            return ()
        return tuple(
            sum(1 for p in self.parts if p >= i) for i in range(1, self.parts[0] + 1)
        )

    def boxes(self):
        """Iterate over the boxes (i, j), row by row."""
        for j, row in enumerate(self.parts, start=1):
            for i in range(1, row + 1):
                yield (i, j)

    def __iter__(self):
        return iter(self.parts)

    def __repr__(self):
        return f"Partition{self.parts}"


def enumerate_partitions(n_max: int) -> list[Partition]:
    """All partitions of size at most n_max, including the empty one.

    Ordered by size, then lexicographically descending within a size; the
    list is duplicate free.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    out = []
    for n in range(n_max + 1):
        out.extend(Partition(p) for p in _partitions_of(n))
    return out


@lru_cache(maxsize=None)
def _partitions_of(n: int, cap: int | None = None) -> tuple[tuple[int, ...], ...]:
    if cap is None:
        cap = n
    if n == 0:
        return ((),)
    acc = []
    for first in range(min(n, cap), 0, -1):
        for rest in _partitions_of(n - first, first):
            acc.append((first,) + rest)
    return tuple(acc)


def arm_leg(lam: Partition, box: tuple[int, int]) -> tuple[int, int]:
    """Arm and leg of a box (i, j) of the diagram."""
    i, j = box
    if j < 1 or j > lam.length or i < 1 or i > lam.parts[j - 1]:
        raise BoxOutsideDiagramError(f"box {box} outside diagram of {lam}")
    arm = lam.parts[j - 1] - i
    leg = lam.conjugate[i - 1] - j
    return arm, leg


def pairing(lam: Partition) -> int:
    """Sum of the squares of the conjugate parts."""
    return sum(c * c for c in lam.conjugate)


def block_data(lam: Partition):
    """Multiplicities, their prefix sums and the block index map.

    Writing lambda = 1^{r_1} 2^{r_2} ... t^{r_t} with t = lambda_1, returns

    * multiplicities (r_1, ..., r_t),
    * prefix sums (r_{<1}, ..., r_{<t+1}) with r_{<i} = r_1 + ... + r_{i-1},
    * the block map b: {1..n} -> {1..t} with r_{<b(m)} < m <= r_{<b(m)+1},
      where n is the number of parts.

    The block map drives the substitution z_m -> L^{1-m} z^{b(m)} in the
    residue kernel.
    """
    if not lam.parts:
        return (), (0,), ()
    t = lam.parts[0]
    mult = [0] * (t + 1)
    for p in lam.parts:
        mult[p] += 1
    prefix = [0]
    for i in range(1, t + 1):
        prefix.append(prefix[-1] + mult[i])
    n = lam.length
    block = []
    for m in range(1, n + 1):
        j = next(i for i in range(1, t + 1) if prefix[i - 1] < m <= prefix[i])
        block.append(j)
    return tuple(mult[1:]), tuple(prefix), tuple(block)

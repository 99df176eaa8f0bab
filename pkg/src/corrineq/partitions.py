"""Set partitions, integer partitions and the counting identities around them."""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .algebra import UniPoly
from .errors import ConfigurationError, DomainError

MAX_SET_PARTITION_N = 10
MAX_IDENTITY_N = 12


@lru_cache(maxsize=None)
def factorial(k: int) -> int:
    return math.factorial(k)


@lru_cache(maxsize=None)
def binomial(a: int, b: int) -> int:
    """C(a, b), zero outside 0 <= b <= a."""
    if b < 0 or a < 0 or b > a:
        return 0
    return math.comb(a, b)


@dataclass(frozen=True)
class SetPartition:
    """Blocks of a partition of ``{1..n}``, each sorted, ordered by minimum."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0] if b else 0))
        if any(not b for b in blocks):
            raise DomainError("empty block")
        elems = [x for b in blocks for x in b]
        if sorted(elems) != list(range(1, len(elems) + 1)):
            raise DomainError(f"{blocks} is not a partition of 1..{len(elems)}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    @classmethod
    def from_rgs(cls, rgs: Sequence[int]) -> SetPartition:
        blocks: list[list[int]] = []
        for x, label in enumerate(rgs, start=1):
            if label == len(blocks):
                blocks.append([])
            blocks[label].append(x)
        return cls(tuple(tuple(b) for b in blocks))

    def rgs(self) -> tuple[int, ...]:
        label = {}
        for k, b in enumerate(self.blocks):
            for x in b:
                label[x] = k
        return tuple(label[x] for x in range(1, self.n + 1))


@dataclass(frozen=True)
class IntegerPartition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise DomainError(f"nonpositive part in {parts}")
        if list(parts) != sorted(parts, reverse=True):
            raise DomainError(f"parts {parts} are not nonincreasing")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def multiplicities(self) -> dict[int, int]:
        """q_i = number of parts equal to i."""
        return dict(sorted(Counter(self.parts).items()))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def _rgs_lex(n: int) -> Iterator[tuple[int, ...]]:
    a = [0] * n

    def rec(pos: int, top: int):
        if pos == n:
            yield tuple(a)
            return
        for v in range(top + 2):
            a[pos] = v
            yield from rec(pos + 1, max(top, v))

    if n == 0:
        return
    yield from rec(1, 0)


def enumerate_set_partitions(n: int) -> Iterator[SetPartition]:
    """All set partitions of ``{1..n}`` in lexicographic restricted-growth order."""
    if n < 1:
        raise DomainError("n must be positive")
    if n > MAX_SET_PARTITION_N:
        raise ConfigurationError(f"n={n} exceeds cap {MAX_SET_PARTITION_N}")
    for rgs in _rgs_lex(n):
        yield SetPartition.from_rgs(rgs)


@lru_cache(maxsize=None)
def set_partitions(n: int) -> tuple[SetPartition, ...]:
    return tuple(enumerate_set_partitions(n))


def integer_partitions(n: int, largest: int | None = None) -> Iterator[IntegerPartition]:
    """Partitions of ``n`` in reverse-lexicographic order: (n), (n-1,1), ..."""
    def rec(rest: int, cap: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in rec(rest - first, first):
                yield (first,) + tail

    for parts in rec(n, n if largest is None else largest):
        yield IntegerPartition(parts)


def shape(sigma: SetPartition) -> IntegerPartition:
    return IntegerPartition(tuple(sorted((len(b) for b in sigma.blocks), reverse=True)))


def set_partitions_of_shape(lam: IntegerPartition) -> Iterator[SetPartition]:
    for sigma in set_partitions(lam.n):
        if shape(sigma) == lam:
            yield sigma


def c_lambda(lam: IntegerPartition) -> Fraction:
    """Signed weight (-1)^(l+1) * prod (lambda_i - 1)!."""
    sign = 1 if lam.length % 2 == 1 else -1
    return Fraction(sign * math.prod(factorial(p - 1) for p in lam.parts))


def count_shapes(lam: IntegerPartition) -> int:
    """Number of set partitions of ``{1..n}`` with block sizes ``lam``."""
    den = 1
    for i, q in lam.multiplicities().items():
        den *= factorial(i) ** q * factorial(q)
    return factorial(lam.n) // den


@dataclass(frozen=True)
class LevelMatrix:
    """Nonnegative integers k[i, j]; column j satisfies sum_i i*k[i, j] = m_j.

    ``columns[j - 1]`` holds the nonzero entries of column ``j`` as sorted
    ``(i, k)`` pairs.
    """

    columns: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def entries(self) -> dict[tuple[int, int], int]:
        return {(i, j): k for j, col in enumerate(self.columns, start=1) for i, k in col}

    @property
    def kappa(self) -> tuple[int, ...]:
        return tuple(sum(k for _, k in col) for col in self.columns)

    @property
    def m(self) -> tuple[int, ...]:
        return tuple(sum(i * k for i, k in col) for col in self.columns)


def multiplicity_vectors(m: int) -> list[tuple[tuple[int, int], ...]]:
    """Each partition of ``m`` as sorted ``(part, multiplicity)`` pairs."""
    if m == 0:
        return [()]
    return [tuple(lam.multiplicities().items()) for lam in integer_partitions(m)]


def enumerate_level_matrices(m: Sequence[int]) -> Iterator[LevelMatrix]:
    if any(x < 0 for x in m):
        raise DomainError(f"negative entry in composition {tuple(m)}")
    per_column = [multiplicity_vectors(x) for x in m]
    for cols in itertools.product(*per_column):
        yield LevelMatrix(tuple(cols))


def rising_factorial_sides(n: int) -> tuple[UniPoly, UniPoly]:
    """Both sides of sum_k y^(sum k)/prod(k_i! i^k_i) = y(y+1)...(y+n-1)/n!."""
    left = UniPoly()
    for vec in multiplicity_vectors(n):
        deg = sum(k for _, k in vec)
        den = math.prod(factorial(k) * i ** k for i, k in vec)
        left = left + UniPoly([0] * deg + [Fraction(1, den)])
    right = UniPoly.const(1)
    for r in range(n):
        right = right * UniPoly([r, 1])
    return left, right * Fraction(1, factorial(n))


def rising_factorial_identity_check(n: int) -> bool:
    if n < 1:
        raise DomainError("n must be positive")
    if n > MAX_IDENTITY_N:
        raise ConfigurationError(f"n={n} exceeds cap {MAX_IDENTITY_N}")
    left, right = rising_factorial_sides(n)
    return left == right


def annihilation_sum(n: int) -> Fraction:
    """sum over shapes of c_lambda * count_shapes(lambda)."""
    return sum((c_lambda(lam) * count_shapes(lam) for lam in integer_partitions(n)), Fraction(0))


def shape_table(n: int) -> list[dict]:
    return [
        {"shape": str(lam), "length": lam.length, "count": count_shapes(lam),
         "c_lambda": c_lambda(lam)}
        for lam in integer_partitions(n)
    ]

"""Finite probability spaces, monotone functions and generators.

Two kinds of space are supported: the chain ``1 < 2 < ... < N`` and the
Boolean lattice of subsets of ``{0, ..., g-1}``, with subsets encoded as
bitmasks. In both cases a function is a tuple of values indexed by point
(``j - 1`` on a chain, the bitmask on a lattice).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence, Union

from .algebra import as_rational, format_rational
from .errors import ConfigurationError, DomainError

MAX_CHAIN_N = 8
MAX_GROUND_SIZE = 4
DEFAULT_MAX_DENOMINATOR = 64


def _check_measure(mu: tuple[Fraction, ...]) -> None:
    if any(m < 0 for m in mu):
        raise DomainError(f"negative mass in {mu}")
    if sum(mu) != 1:
        raise DomainError(f"masses sum to {sum(mu)}, not 1")


@dataclass(frozen=True)
class ChainSpace:
    mu: tuple[Fraction, ...]

    def __post_init__(self):
        mu = tuple(as_rational(m) for m in self.mu)
        if not mu:
            raise DomainError("chain needs at least one point")
        _check_measure(mu)
        object.__setattr__(self, "mu", mu)

    @property
    def N(self) -> int:
        return len(self.mu)

    @property
    def size(self) -> int:
        return len(self.mu)

    kind = "chain"

    def zero_mass_points(self) -> list[int]:
        return [j + 1 for j, m in enumerate(self.mu) if m == 0]

    def is_monotone(self, values: Sequence[Fraction]) -> bool:
        return all(a <= b for a, b in zip(values, values[1:]))


@dataclass(frozen=True)
class SubsetLattice:
    ground_size: int
    mu: tuple[Fraction, ...]

    def __post_init__(self):
        if self.ground_size < 1:
            raise DomainError("ground set must be nonempty")
        mu = tuple(as_rational(m) for m in self.mu)
        if len(mu) != 1 << self.ground_size:
            raise DomainError(
                f"expected {1 << self.ground_size} masses, got {len(mu)}")
        _check_measure(mu)
        object.__setattr__(self, "mu", mu)

    @property
    def size(self) -> int:
        return len(self.mu)

    kind = "lattice"

    def zero_mass_points(self) -> list[int]:
        return [a for a, m in enumerate(self.mu) if m == 0]

    def is_monotone(self, values: Sequence[Fraction]) -> bool:
        for a in range(self.size):
            for i in range(self.ground_size):
                b = a | (1 << i)
                if b != a and values[a] > values[b]:
                    return False
        return True


Space = Union[ChainSpace, SubsetLattice]


@dataclass(frozen=True)
class MonotoneFn:
    """Nonnegative nondecreasing function, stored by its values.

    On a chain the increments ``a_j = f(j) - f(j-1)`` (with ``f(0) = 0``)
    are available through :attr:`increments`.
    """

    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(as_rational(v) for v in self.values)
        if any(v < 0 for v in vals):
            raise DomainError(f"negative value in {vals}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_increments(cls, a: Sequence) -> MonotoneFn:
        return cls(tuple(increments_to_values(a)))

    @property
    def increments(self) -> tuple[Fraction, ...]:
        return tuple(values_to_increments(self.values))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]


def as_function(space: Space, f) -> MonotoneFn:
    """Validate ``f`` (MonotoneFn or raw values) against ``space``."""
    fn = f if isinstance(f, MonotoneFn) else MonotoneFn(tuple(f))
    if len(fn) != space.size:
        raise DomainError(
            f"function has {len(fn)} values, space has {space.size} points")
    if not space.is_monotone(fn.values):
        raise DomainError(f"function {fn.values} is not nondecreasing")
    return fn


def expectation(space: Space, f) -> Fraction:
    vals = f.values if isinstance(f, MonotoneFn) else tuple(f)
    if len(vals) != space.size:
        raise DomainError(
            f"function has {len(vals)} values, space has {space.size} points")
    return sum((m * as_rational(v) for m, v in zip(space.mu, vals)), Fraction(0))


def increments_to_values(a: Sequence) -> list[Fraction]:
    out, acc = [], Fraction(0)
    for x in a:
        x = as_rational(x)
        if x < 0:
            raise DomainError(f"negative increment {x}")
        acc += x
        out.append(acc)
    return out


def values_to_increments(values: Sequence) -> list[Fraction]:
    out, prev = [], Fraction(0)
    for v in values:
        v = as_rational(v)
        if v < prev:
            raise DomainError(f"values {list(values)} are negative or decreasing")
        out.append(v - prev)
        prev = v
    return out


@dataclass(frozen=True)
class FKGResult:
    ok: bool
    pairs_checked: int
    violations: tuple[tuple[int, int, Fraction, Fraction], ...] = field(default=())

    def transcript(self) -> dict:
        return {
            "ok": self.ok,
            "pairs_checked": self.pairs_checked,
            "violations": [
                {"A": a, "B": b, "lhs": format_rational(l), "rhs": format_rational(r)}
                for a, b, l, r in self.violations
            ],
        }

    def __bool__(self) -> bool:
        return self.ok


def fkg_check(lattice: SubsetLattice) -> FKGResult:
    """Check mu(A & B) mu(A | B) >= mu(A) mu(B) over all ordered pairs."""
    mu = lattice.mu
    bad = []
    count = 0
    for a in range(lattice.size):
        for b in range(lattice.size):
            count += 1
            lhs = mu[a & b] * mu[a | b]
            rhs = mu[a] * mu[b]
            if lhs < rhs:
                bad.append((a, b, lhs, rhs))
    return FKGResult(not bad, count, tuple(bad))


# -- generators --------------------------------------------------------------

def _rand_rational(rng: random.Random, max_den: int, zero_prob: float = 0.0) -> Fraction:
    if zero_prob and rng.random() < zero_prob:
        return Fraction(0)
    return Fraction(rng.randint(0, max_den), rng.randint(1, max_den))


def random_composition(rng: random.Random, total: int, parts: int) -> list[int]:
    """Uniform weak composition of ``total`` into ``parts`` (stars and bars)."""
    bars = sorted(rng.sample(range(total + parts - 1), parts - 1))
    edges = [-1] + bars + [total + parts - 1]
    return [edges[k + 1] - edges[k] - 1 for k in range(parts)]


def random_chain_space(N: int, rng_seed: int,
                       max_denominator: int = DEFAULT_MAX_DENOMINATOR) -> ChainSpace:
    """Random probability on ``1..N`` with every denominator <= max_denominator."""
    if not 1 <= N <= MAX_CHAIN_N:
        raise ConfigurationError(f"chain length {N} outside 1..{MAX_CHAIN_N}")
    rng = random.Random(rng_seed)
    d = rng.randint(1, max_denominator)
    return ChainSpace(tuple(Fraction(w, d) for w in random_composition(rng, d, N)))


def point_mass_chain(N: int, j: int) -> ChainSpace:
    return ChainSpace(tuple(Fraction(int(k == j)) for k in range(1, N + 1)))


def mobius_lattice_fn(ground_size: int, g: Sequence) -> MonotoneFn:
    """f(A) = sum of g(S) over S subset of A; monotone whenever g >= 0."""
    g = [as_rational(x) for x in g]
    if any(x < 0 for x in g):
        raise DomainError("Mobius weights must be nonnegative")
    f = list(g)
    for i in range(ground_size):
        bit = 1 << i
        for a in range(1 << ground_size):
            if a & bit:
                f[a] += f[a ^ bit]
    return MonotoneFn(tuple(f))


def _down_max(ground_size: int, values: list[Fraction]) -> list[Fraction]:
    f = list(values)
    for i in range(ground_size):
        bit = 1 << i
        for a in range(1 << ground_size):
            if a & bit and f[a ^ bit] > f[a]:
                f[a] = f[a ^ bit]
    return f


FN_METHODS = ("mobius", "repair", "step")


def random_monotone_fn(space: Space, rng_seed: int,
                       max_denominator: int = DEFAULT_MAX_DENOMINATOR,
                       method: str = "mobius") -> MonotoneFn:
    """Draw a random nonnegative monotone function on ``space``.

    ``mobius``: nonnegative increments on a chain, nonnegative Mobius
    weights on a lattice. ``repair``: arbitrary nonnegative values replaced
    by their running maximum over lower points. ``step``: a scaled
    indicator of a principal up-set.
    """
    if max_denominator < 1:
        raise DomainError("max_denominator must be >= 1")
    rng = random.Random(rng_seed)
    size = space.size
    if method == "step":
        c = _rand_rational(rng, max_denominator)
        if isinstance(space, ChainSpace):
            t = rng.randint(1, size)
            return MonotoneFn(tuple(c if j >= t else Fraction(0) for j in range(1, size + 1)))
        s = rng.randrange(size)
        return MonotoneFn(tuple(c if a & s == s else Fraction(0) for a in range(size)))
    if method == "mobius":
        w = [_rand_rational(rng, max_denominator, zero_prob=0.4) for _ in range(size)]
        if isinstance(space, ChainSpace):
            return MonotoneFn.from_increments(w)
        return mobius_lattice_fn(space.ground_size, w)
    if method == "repair":
        raw = [_rand_rational(rng, max_denominator) for _ in range(size)]
        if isinstance(space, ChainSpace):
            out, cur = [], Fraction(0)
            for v in raw:
                cur = max(cur, v)
                out.append(cur)
            return MonotoneFn(tuple(out))
        return MonotoneFn(tuple(_down_max(space.ground_size, raw)))
    raise DomainError(f"unknown generator {method!r}")


def product_measure(p: Sequence) -> SubsetLattice:
    """mu(A) = prod_{i in A} p_i * prod_{i not in A} (1 - p_i)."""
    p = [as_rational(x) for x in p]
    g = len(p)
    mu = []
    for a in range(1 << g):
        w = Fraction(1)
        for i, pi in enumerate(p):
            w *= pi if a >> i & 1 else 1 - pi
        mu.append(w)
    return SubsetLattice(g, tuple(mu))


def pairwise_weights(u: Sequence, J: dict[tuple[int, int], Fraction]) -> list[Fraction]:
    """w(A) = prod_{i in A} u_i * prod_{i<j both in A} J_ij."""
    g = len(u)
    w = []
    for a in range(1 << g):
        x = Fraction(1)
        members = [i for i in range(g) if a >> i & 1]
        for i in members:
            x *= u[i]
        for i, j in itertools.combinations(members, 2):
            x *= J.get((i, j), Fraction(1))
        w.append(x)
    return w


FKG_MODES = ("generic", "near_product", "sparse")


def random_fkg_measure(ground_size: int, rng_seed: int,
                       max_denominator: int = DEFAULT_MAX_DENOMINATOR,
                       mode: str = "generic",
                       cap: int = MAX_GROUND_SIZE) -> SubsetLattice:
    """Random log-supermodular measure on the subsets of a ``ground_size`` set.

    Weights are pairwise: positive rational fields ``u_i`` and couplings
    ``J_ij >= 1``. ``near_product`` keeps every coupling within 1/D^2 of 1;
    ``sparse`` restricts the support to a random interval ``[L, U]``,
    which is a sublattice and so keeps the lattice condition.
    """
    if not 1 <= ground_size <= cap:
        raise ConfigurationError(f"ground size {ground_size} outside 1..{cap}")
    if mode not in FKG_MODES:
        raise DomainError(f"unknown FKG mode {mode!r}")
    rng = random.Random(rng_seed)
    D = max_denominator
    u = [Fraction(rng.randint(1, D), rng.randint(1, D)) for _ in range(ground_size)]
    J = {}
    for i, j in itertools.combinations(range(ground_size), 2):
        if mode == "near_product":
            J[i, j] = 1 + Fraction(rng.randint(0, 1), rng.randint(1, D) ** 2)
        else:
            J[i, j] = 1 + _rand_rational(rng, D, zero_prob=0.3)
    w = pairwise_weights(u, J)
    if mode == "sparse":
        full = (1 << ground_size) - 1
        lo = rng.randrange(1 << ground_size)
        hi = lo | rng.randrange(1 << ground_size)
        if lo == hi and rng.random() < 0.5:
            hi = full
        w = [x if (a & lo) == lo and (a | hi) == hi else Fraction(0)
             for a, x in enumerate(w)]
    total = sum(w)
    lattice = SubsetLattice(ground_size, tuple(x / total for x in w))
    assert fkg_check(lattice).ok, "generator produced a non-FKG measure"
    return lattice


def enumerate_fkg_grid(ground_size: int, max_weight: int) -> Iterator[SubsetLattice]:
    """Every FKG measure whose unnormalised weights lie in 0..max_weight.

    Weight vectors proportional to one another are yielded once.
    """
    if ground_size > 2:
        raise ConfigurationError("grid enumeration is limited to |X| <= 2")
    seen = set()
    for w in itertools.product(range(max_weight + 1), repeat=1 << ground_size):
        total = sum(w)
        if total == 0:
            continue
        mu = tuple(Fraction(x, total) for x in w)
        if mu in seen:
            continue
        seen.add(mu)
        lattice = SubsetLattice(ground_size, mu)
        if fkg_check(lattice).ok:
            yield lattice

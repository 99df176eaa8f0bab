"""Definitional evaluation of E_delta, E_sigma, E_lambda and E_n.

``E_n(f_1..f_n) = sum over shapes lambda of c_lambda * E_lambda`` where
``E_lambda`` sums, over set partitions sigma of shape lambda, the product
of block expectations ``<prod_{i in block} f_i>``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .algebra import IncrementPolynomial
from .errors import ConfigurationError, DomainError
from .partitions import (
    IntegerPartition,
    SetPartition,
    c_lambda,
    integer_partitions,
    set_partitions,
    shape,
)
from .spaces import ChainSpace, MonotoneFn, Space, as_function

MAX_EVAL_N = 7
MAX_SET_PARTITION_EVAL = 10
DEFAULT_EXPANSION_BUDGET = 50_000


@dataclass(frozen=True)
class FunctionalInstance:
    space: Space
    functions: tuple[MonotoneFn, ...]
    _products: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        fns = tuple(as_function(self.space, f) for f in self.functions)
        if not fns:
            raise DomainError("need at least one function")
        object.__setattr__(self, "functions", fns)

    @property
    def n(self) -> int:
        return len(self.functions)

    def block_expectation(self, mask: int) -> Fraction:
        """E_delta for the function subset encoded by ``mask`` (bit i-1 = f_i)."""
        cache = self._products
        if mask in cache:
            return cache[mask][1]
        low = mask & -mask
        i = low.bit_length() - 1
        vals = self.functions[i].values
        rest = mask ^ low
        if rest:
            self.block_expectation(rest)
            prev = cache[rest][0]
            prod = tuple(p * v for p, v in zip(prev, vals))
        else:
            prod = vals
        e = sum((m * p for m, p in zip(self.space.mu, prod)), Fraction(0))
        cache[mask] = (prod, e)
        return e


def _mask(delta: Iterable[int], n: int) -> int:
    m = 0
    for i in delta:
        if not 1 <= i <= n:
            raise DomainError(f"function index {i} outside 1..{n}")
        m |= 1 << (i - 1)
    return m


def e_delta(inst: FunctionalInstance, delta: Iterable[int]) -> Fraction:
    m = _mask(delta, inst.n)
    if m == 0:
        raise DomainError("E_delta needs a nonempty index set")
    return inst.block_expectation(m)


def _check_sigma(inst: FunctionalInstance, sigma: SetPartition) -> None:
    if sigma.n != inst.n:
        raise DomainError(f"partition of 1..{sigma.n} used with {inst.n} functions")


def e_sigma(inst: FunctionalInstance, sigma: SetPartition) -> Fraction:
    if not isinstance(sigma, SetPartition):
        sigma = SetPartition(tuple(tuple(b) for b in sigma))
    _check_sigma(inst, sigma)
    out = Fraction(1)
    for b in sigma.blocks:
        out *= inst.block_expectation(_mask(b, inst.n))
    return out


@lru_cache(maxsize=None)
def _shape_classes(n: int) -> tuple[tuple[IntegerPartition, tuple[tuple[int, ...], ...]], ...]:
    """Set partitions grouped by shape, blocks encoded as bitmasks."""
    groups: dict[IntegerPartition, list[tuple[int, ...]]] = {
        lam: [] for lam in integer_partitions(n)}
    for sigma in set_partitions(n):
        groups[shape(sigma)].append(tuple(_mask(b, n) for b in sigma.blocks))
    return tuple((lam, tuple(v)) for lam, v in groups.items())


def _class_sum(inst: FunctionalInstance, sigmas) -> Fraction:
    total = Fraction(0)
    for blocks in sigmas:
        term = Fraction(1)
        for b in blocks:
            term *= inst.block_expectation(b)
            if not term:
                break
        total += term
    return total


def e_lambda(inst: FunctionalInstance, lam: IntegerPartition | Sequence[int]) -> Fraction:
    if not isinstance(lam, IntegerPartition):
        lam = IntegerPartition(tuple(lam))
    if lam.n != inst.n:
        raise DomainError(f"{lam} is not a partition of {inst.n}")
    _check_cap(inst.n, MAX_SET_PARTITION_EVAL)
    for shp, sigmas in _shape_classes(inst.n):
        if shp == lam:
            return _class_sum(inst, sigmas)
    raise AssertionError("unreachable: every partition has a shape class")


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise ConfigurationError(f"n={n} exceeds cap {cap}")


def e_lambda_table(inst: FunctionalInstance) -> list[tuple[IntegerPartition, Fraction]]:
    return [(lam, _class_sum(inst, sigmas)) for lam, sigmas in _shape_classes(inst.n)]


def e_n(inst: FunctionalInstance, *, path: str = "shape", max_n: int = MAX_EVAL_N) -> Fraction:
    """Exact value of E_n on the instance.

    ``path="shape"`` sums c_lambda * E_lambda; ``path="sigma"`` sums
    c_{lambda(sigma)} * E_sigma over every set partition directly.
    """
    _check_cap(inst.n, max_n)
    if path == "shape":
        return sum((c_lambda(lam) * _class_sum(inst, sigmas)
                    for lam, sigmas in _shape_classes(inst.n)), Fraction(0))
    if path == "sigma":
        total = Fraction(0)
        for sigma in set_partitions(inst.n):
            total += c_lambda(shape(sigma)) * e_sigma(inst, sigma)
        return total
    raise DomainError(f"unknown evaluation path {path!r}")


def instance(space: Space, functions: Sequence) -> FunctionalInstance:
    return FunctionalInstance(space, tuple(functions))


def instance_from_increments(space: ChainSpace, increments: Sequence[Sequence]) -> FunctionalInstance:
    return FunctionalInstance(space, tuple(MonotoneFn.from_increments(a) for a in increments))


# -- symbolic expansion (oracle) ----------------------------------------------

def _value_polys(space: ChainSpace, n: int, basis: str) -> list[list[IncrementPolynomial]]:
    """``polys[i-1][x-1]`` is f_i(x) as a polynomial in the chosen variables."""
    N = space.N
    if basis == "increments":
        return [[IncrementPolynomial.linear(i, range(1, x + 1)) for x in range(1, N + 1)]
                for i in range(1, n + 1)]
    if basis == "values":
        return [[IncrementPolynomial.variable(i, x) for x in range(1, N + 1)]
                for i in range(1, n + 1)]
    raise DomainError(f"unknown basis {basis!r}")


def expand_e_n(space: ChainSpace, n: int, *, basis: str = "increments",
               budget: int = DEFAULT_EXPANSION_BUDGET) -> IncrementPolynomial:
    """E_n expanded symbolically, by brute force over every set partition.

    With ``basis="increments"`` each f_i is written as prefix sums of
    formal increments a[i, 1..N]; with ``basis="values"`` the variable
    (i, j) stands for f_i(j) itself.
    """
    if not isinstance(space, ChainSpace):
        raise DomainError("symbolic expansion is defined on chains only")
    if n < 1:
        raise DomainError("n must be positive")
    if space.N ** n > budget:
        raise ConfigurationError(
            f"expansion would reach {space.N ** n} monomials, budget is {budget}")
    _check_cap(n, MAX_SET_PARTITION_EVAL)
    polys = _value_polys(space, n, basis)
    block_cache: dict[tuple[int, ...], IncrementPolynomial] = {}

    def block(b: tuple[int, ...]) -> IncrementPolynomial:
        if b not in block_cache:
            acc = IncrementPolynomial()
            for x, m in enumerate(space.mu):
                if not m:
                    continue
                term = IncrementPolynomial.constant(m)
                for i in b:
                    term = term * polys[i - 1][x]
                acc = acc + term
            block_cache[b] = acc
        return block_cache[b]

    total = IncrementPolynomial()
    for sigma in set_partitions(n):
        term = IncrementPolynomial.constant(c_lambda(shape(sigma)))
        for b in sigma.blocks:
            term = term * block(b)
        total = total + term
    return total

"""Truncated formal power series in t and the two routes to
``1 - prod_A (1 - p(A))^mu(A)``.

The direct route expands each factor through exp/log. The second route
sums ``E_n(p_{i_1}, ..., p_{i_n}) / n!`` over multisets of orders, which
relies on the symmetry and multilinearity of E_n.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .algebra import as_rational, format_rational
from .errors import DomainError
from .functional import FunctionalInstance, e_n
from .partitions import factorial, integer_partitions
from .spaces import MonotoneFn, Space, as_function

DEFAULT_T = 6


@dataclass(frozen=True)
class ScalarSeries:
    """c_0 + c_1 t + ... + c_T t^T with exact coefficients."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        cs = tuple(as_rational(c) for c in self.coeffs)
        if not cs:
            raise DomainError("series needs at least a constant term")
        object.__setattr__(self, "coeffs", cs)

    @property
    def T(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, T: int) -> ScalarSeries:
        return cls((Fraction(0),) * (T + 1))

    @classmethod
    def one(cls, T: int) -> ScalarSeries:
        return cls((Fraction(1),) + (Fraction(0),) * T)

    @classmethod
    def from_list(cls, cs: Sequence, T: int) -> ScalarSeries:
        cs = [as_rational(c) for c in cs][:T + 1]
        return cls(tuple(cs) + (Fraction(0),) * (T + 1 - len(cs)))

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def _match(self, other: ScalarSeries) -> int:
        if self.T != other.T:
            raise DomainError(f"truncation mismatch: {self.T} vs {other.T}")
        return self.T

    def __add__(self, other: ScalarSeries) -> ScalarSeries:
        self._match(other)
        return ScalarSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: ScalarSeries) -> ScalarSeries:
        self._match(other)
        return ScalarSeries(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> ScalarSeries:
        return ScalarSeries(tuple(-a for a in self.coeffs))

    def scale(self, c) -> ScalarSeries:
        c = as_rational(c)
        return ScalarSeries(tuple(c * a for a in self.coeffs))

    def __mul__(self, other) -> ScalarSeries:
        if not isinstance(other, ScalarSeries):
            return self.scale(other)
        T = self._match(other)
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (T + 1)
        for i in range(T + 1):
            if not a[i]:
                continue
            for j in range(T + 1 - i):
                out[i + j] += a[i] * b[j]
        return ScalarSeries(tuple(out))

    __rmul__ = scale

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]


def log1m(p: ScalarSeries) -> ScalarSeries:
    """log(1 - p) = -sum_{i>=1} p^i / i, for p without constant term."""
    if p[0] != 0:
        raise DomainError("log1m needs a series with zero constant term")
    out = ScalarSeries.zero(p.T)
    power = ScalarSeries.one(p.T)
    for i in range(1, p.T + 1):
        power = power * p
        out = out - power.scale(Fraction(1, i))
    return out


def exp(x: ScalarSeries) -> ScalarSeries:
    if x[0] != 0:
        raise DomainError("exp needs a series with zero constant term")
    out = ScalarSeries.one(x.T)
    power = ScalarSeries.one(x.T)
    for j in range(1, x.T + 1):
        power = power * x
        out = out + power.scale(Fraction(1, factorial(j)))
    return out


def pow_rational(s: ScalarSeries, r) -> ScalarSeries:
    """s**r as exp(r log s); s must have constant term 1."""
    r = as_rational(r)
    if s[0] != 1:
        raise DomainError("pow_rational needs constant term 1")
    if r == 0:
        return ScalarSeries.one(s.T)
    if r == 1:
        return s
    return exp(log1m(ScalarSeries.one(s.T) - s).scale(r))


@dataclass(frozen=True)
class FunctionSeries:
    """p = p_1 t + ... + p_T t^T, every p_k a monotone function on one space."""

    space: Space
    coefficients: tuple[MonotoneFn, ...]

    def __post_init__(self):
        fns = tuple(as_function(self.space, f) for f in self.coefficients)
        if not fns:
            raise DomainError("series needs T >= 1")
        object.__setattr__(self, "coefficients", fns)

    @property
    def T(self) -> int:
        return len(self.coefficients)

    def at(self, point: int) -> ScalarSeries:
        """The scalar series p(point), constant term 0."""
        return ScalarSeries((Fraction(0),) + tuple(f.values[point] for f in self.coefficients))

    def order(self, k: int) -> MonotoneFn:
        return self.coefficients[k - 1]


def corollary_direct(p: FunctionSeries, T: int | None = None) -> ScalarSeries:
    T = p.T if T is None else T
    if T < 1:
        raise DomainError("T must be >= 1")
    prod = ScalarSeries.one(T)
    one = ScalarSeries.one(T)
    for point, mass in enumerate(p.space.mu):
        factor = one - ScalarSeries.from_list(p.at(point).coeffs, T)
        prod = prod * pow_rational(factor, mass)
    return one - prod


def multisets(k: int, max_part: int) -> Iterable[tuple[int, ...]]:
    """Multisets of positive orders <= max_part summing to k, as sorted tuples."""
    for lam in integer_partitions(k, largest=max_part):
        yield tuple(sorted(lam.parts))


def corollary_via_en(p: FunctionSeries, T: int | None = None) -> ScalarSeries:
    """Coefficient of t^k is sum over n and multisets {i_1..i_n} summing to k
    of (1/n!) * (n!/prod mult!) * E_n(p_{i_1}, ..., p_{i_n})."""
    T = p.T if T is None else T
    coeffs = [Fraction(0)]
    zero = [not any(f.values) for f in p.coefficients]
    for k in range(1, T + 1):
        total = Fraction(0)
        for ms in multisets(k, p.T):
            if any(zero[i - 1] for i in ms):
                continue
            n = len(ms)
            weight = Fraction(factorial(n), 1)
            for q in Counter(ms).values():
                weight /= factorial(q)
            inst = FunctionalInstance(p.space, tuple(p.order(i) for i in ms))
            total += Fraction(1, factorial(n)) * weight * e_n(inst, max_n=max(T, 7))
        coeffs.append(total)
    return ScalarSeries(tuple(coeffs))


class NonnegativityVerdict(NamedTuple):
    ok: bool
    first_negative: int | None = None
    value: Fraction | None = None


def check_nonnegativity(s: ScalarSeries) -> NonnegativityVerdict:
    for k in range(1, s.T + 1):
        if s[k] < 0:
            return NonnegativityVerdict(False, k, s[k])
    return NonnegativityVerdict(True)

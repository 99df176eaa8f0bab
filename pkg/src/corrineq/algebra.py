"""Exact scalar and polynomial arithmetic.

Scalars are :class:`fractions.Fraction` throughout; nothing on a
verification path ever touches a float.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import ContractError, DomainError

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused so that no rounding can sneak in.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise DomainError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise DomainError(f"not an exact rational: {x!r}")


def parse_rational(s: str) -> Fraction:
    m = _RATIONAL_RE.match(s)
    if m is None:
        raise DomainError(f"malformed rational string {s!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise DomainError(f"zero denominator in {s!r}")
    return Fraction(num, den)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rdiv(x: Fraction, y: Fraction) -> Fraction:
    if y == 0:
        raise DomainError("division by zero")
    return Fraction(x) / Fraction(y)


class UniPoly:
    """Dense polynomial in one indeterminate with exact coefficients.

    ``coeffs[d]`` is the coefficient of ``y**d``; trailing zeros are
    trimmed so that structural equality is polynomial equality.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def y(cls) -> UniPoly:
        return cls([0, 1])

    @classmethod
    def const(cls, c) -> UniPoly:
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: UniPoly) -> UniPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly(x + y for x, y in zip(a, b))

    def __mul__(self, other) -> UniPoly:
        if not isinstance(other, UniPoly):
            c = as_rational(other)
            return UniPoly(c * x for x in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return UniPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (list, tuple)):
            return self == UniPoly(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, y) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * y + c
        return acc

    def __repr__(self) -> str:
        return f"UniPoly([{', '.join(format_rational(c) for c in self.coeffs)}])"


Var = tuple[int, int]
Monomial = tuple[Var, ...]


def monomial(*variables: Var) -> Monomial:
    """Canonical monomial key: variables sorted lexicographically by (i, j)."""
    mono = tuple(sorted(variables))
    idx = [i for i, _ in mono]
    if len(set(idx)) != len(idx):
        raise ContractError(f"monomial {mono} repeats a function index")
    return mono


class IncrementPolynomial:
    """Sparse multilinear polynomial in variables ``a[i, j]``.

    A monomial is a sorted tuple of ``(i, j)`` pairs carrying each
    function index ``i`` at most once. Zero coefficients are never stored.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        clean: dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            key = monomial(*mono)
            c = as_rational(c)
            if c != 0:
                clean[key] = clean.get(key, Fraction(0)) + c
                if clean[key] == 0:
                    del clean[key]
        self._terms = clean

    @classmethod
    def variable(cls, i: int, j: int) -> IncrementPolynomial:
        return cls({((i, j),): Fraction(1)})

    @classmethod
    def constant(cls, c) -> IncrementPolynomial:
        return cls({(): as_rational(c)})

    @classmethod
    def linear(cls, i: int, levels: Iterable[int]) -> IncrementPolynomial:
        """Sum of ``a[i, j]`` over the given levels."""
        return cls({((i, j),): Fraction(1) for j in levels})

    def function_indices(self) -> frozenset[int]:
        return frozenset(i for mono in self._terms for i, _ in mono)

    def coefficient(self, mono: Iterable[Var]) -> Fraction:
        return self._terms.get(tuple(sorted(mono)), Fraction(0))

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(sorted(self._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: IncrementPolynomial) -> IncrementPolynomial:
        out = dict(self._terms)
        for mono, c in other._terms.items():
            v = out.get(mono, Fraction(0)) + c
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        return IncrementPolynomial._raw(out)

    def __sub__(self, other: IncrementPolynomial) -> IncrementPolynomial:
        return self + other.scale(-1)

    def scale(self, c) -> IncrementPolynomial:
        c = as_rational(c)
        if c == 0:
            return IncrementPolynomial()
        return IncrementPolynomial._raw({m: c * v for m, v in self._terms.items()})

    def __mul__(self, other) -> IncrementPolynomial:
        if not isinstance(other, IncrementPolynomial):
            return self.scale(other)
        shared = self.function_indices() & other.function_indices()
        if shared:
            raise ContractError(
                f"product would repeat function indices {sorted(shared)}")
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                key = tuple(sorted(m1 + m2))
                v = out.get(key, Fraction(0)) + c1 * c2
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return IncrementPolynomial._raw(out)

    def __rmul__(self, other) -> IncrementPolynomial:
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IncrementPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def evaluate(self, a: Mapping[Var, Fraction] | Sequence[Sequence[Fraction]]) -> Fraction:
        """Evaluate at ``a``; a nested sequence is read as ``a[i-1][j-1]``."""
        if isinstance(a, Mapping):
            get = lambda v: a.get(v, Fraction(0))  # noqa: E731
        else:
            get = lambda v: a[v[0] - 1][v[1] - 1]  # noqa: E731
        total = Fraction(0)
        for mono, c in self._terms.items():
            term = c
            for v in mono:
                term *= get(v)
                if not term:
                    break
            total += term
        return total

    @classmethod
    def _raw(cls, terms: dict) -> IncrementPolynomial:
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    def __repr__(self) -> str:
        parts = []
        for mono, c in self.items():
            vs = "*".join(f"a{i},{j}" for i, j in mono) or "1"
            parts.append(f"{format_rational(c)}*{vs}")
        return "IncrementPolynomial(" + (" + ".join(parts) or "0") + ")"

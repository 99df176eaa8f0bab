"""Monomial coefficients of E_n on a chain, by formula and by brute force.

Writing each f_i on the chain ``1..N`` through its values, E_n is a
multilinear form whose coefficient on ``f_1(j_1) ... f_n(j_n)`` depends
only on how many functions sit at each level, ``m = (m_1..m_N)``:

    F_m(mu) = -prod_j prod_{i=1}^{m_j} (i - 1 - mu(j))

Passing to increments ``f_i(j) = a_{i,1} + ... + a_{i,j}``, the coefficient
of ``prod a_{i, t_i}`` is a binomial-weighted sum of those F values,
computed here by :func:`b_formula`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .algebra import IncrementPolynomial, Monomial, as_rational, format_rational
from .errors import DomainError
from .functional import DEFAULT_EXPANSION_BUDGET, expand_e_n
from .partitions import binomial, enumerate_level_matrices, factorial
from .spaces import ChainSpace


def _mu_tuple(mu) -> tuple[Fraction, ...]:
    if isinstance(mu, ChainSpace):
        return mu.mu
    return tuple(as_rational(x) for x in mu)


def _check_composition(m: Sequence[int], mu: tuple[Fraction, ...]) -> tuple[int, ...]:
    m = tuple(int(x) for x in m)
    if any(x < 0 for x in m):
        raise DomainError(f"negative entry in composition {m}")
    if len(m) != len(mu):
        raise DomainError(f"composition of length {len(m)} on a chain of {len(mu)} points")
    return m


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of ``total`` into ``parts``, lexicographically descending."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def shifted_product(mu_j: Fraction, k: int) -> Fraction:
    """prod_{i=1}^{k} (i - 1 - mu_j); the empty product is 1."""
    out = Fraction(1)
    for i in range(1, k + 1):
        out *= i - 1 - mu_j
    return out


def f_partition_sum(m: Sequence[int], mu) -> Fraction:
    """F_m as a sum over level matrices k[i, j] with sum_i i k[i, j] = m_j.

    The all-zero composition labels no monomial and returns 0.
    """
    mu = _mu_tuple(mu)
    m = _check_composition(m, mu)
    if not any(m):
        return Fraction(0)
    mfact = 1
    for x in m:
        mfact *= factorial(x)
    total = Fraction(0)
    for km in enumerate_level_matrices(m):
        kappa = km.kappa
        weight = Fraction(1)
        for j, col in enumerate(km.columns):
            weight *= mu[j] ** kappa[j]
        den = 1
        for col in km.columns:
            for i, k in col:
                den *= i ** k * factorial(k)
        sign = -1 if (sum(kappa) - 1) % 2 else 1
        total += sign * weight * Fraction(mfact, den)
    return total


def f_closed_form(m: Sequence[int], mu) -> Fraction:
    mu = _mu_tuple(mu)
    m = _check_composition(m, mu)
    if not any(m):
        return Fraction(0)
    out = Fraction(-1)
    for mj, muj in zip(m, mu):
        out *= shifted_product(muj, mj)
    return out


def block_layout(m: Sequence[int]) -> Monomial:
    """Functions 1..m_1 at level 1, the next m_2 at level 2, and so on."""
    mono = []
    i = 1
    for j, mj in enumerate(m, start=1):
        for _ in range(mj):
            mono.append((i, j))
            i += 1
    return tuple(mono)


@lru_cache(maxsize=256)
def _expansion(mu: tuple[Fraction, ...], n: int, basis: str, budget: int) -> IncrementPolynomial:
    return expand_e_n(ChainSpace(mu), n, basis=basis, budget=budget)


def f_oracle(m: Sequence[int], mu, *, budget: int = DEFAULT_EXPANSION_BUDGET) -> Fraction:
    """Coefficient of f_1(1)..f_{m_1}(1) f_{m_1+1}(2).. read off brute-force E_n."""
    mu = _mu_tuple(mu)
    m = _check_composition(m, mu)
    n = sum(m)
    if n == 0:
        return Fraction(0)
    return _expansion(mu, n, "values", budget).coefficient(block_layout(m))


def _full_composition(m_prefix: Sequence[int], n: int) -> tuple[int, ...]:
    m_prefix = tuple(int(x) for x in m_prefix)
    if any(x < 0 for x in m_prefix):
        raise DomainError(f"negative entry in {m_prefix}")
    if sum(m_prefix) > n:
        raise DomainError(f"prefix {m_prefix} sums past n={n}")
    return m_prefix + (n - sum(m_prefix),)


def b_formula(m_prefix: Sequence[int], n: int, mu) -> Fraction:
    """Coefficient of the block-layout increment monomial.

    Sums over i_1..i_{N-1}, where i_j counts the functions whose value
    level is j; only functions with increment level <= j are eligible, so
    0 <= i_j <= (m_1 + .. + m_j) - (i_1 + .. + i_{j-1}).
    """
    mu = _mu_tuple(mu)
    full = _full_composition(m_prefix, n)
    if len(full) != len(mu):
        raise DomainError(f"prefix of length {len(full) - 1} needs a chain of {len(full)} points")
    last = len(mu) - 1

    def rec(j: int, carried: int, used: int) -> Fraction:
        if j == last:
            return shifted_product(mu[last], n - used)
        avail = carried + full[j]
        acc = Fraction(0)
        for i in range(avail + 1):
            head = binomial(avail, i) * shifted_product(mu[j], i)
            if head:
                acc += head * rec(j + 1, avail - i, used + i)
        return acc

    return -rec(0, 0, 0)


def b_oracle(m_prefix: Sequence[int], n: int, mu, *,
             budget: int = DEFAULT_EXPANSION_BUDGET) -> Fraction:
    mu = _mu_tuple(mu)
    full = _full_composition(m_prefix, n)
    if len(full) != len(mu):
        raise DomainError(f"prefix of length {len(full) - 1} needs a chain of {len(full)} points")
    return _expansion(mu, n, "increments", budget).coefficient(block_layout(full))


def prefixes(N: int, n: int) -> Iterator[tuple[int, ...]]:
    """Every (m_1..m_{N-1}) with nonnegative entries summing to at most n."""
    for total in range(n + 1):
        yield from compositions(total, N - 1)


def reconstruct_increment_polynomial(space: ChainSpace, n: int) -> IncrementPolynomial:
    """Sum over value-level assignments v of F_{m(v)} * prod_i f_i(v_i), in increments."""
    N = space.N
    f_cache: dict[tuple[int, ...], Fraction] = {}
    total = IncrementPolynomial()
    for v in itertools.product(range(1, N + 1), repeat=n):
        m = tuple(v.count(j) for j in range(1, N + 1))
        if m not in f_cache:
            f_cache[m] = f_closed_form(m, space.mu)
        c = f_cache[m]
        if not c:
            continue
        term = IncrementPolynomial.constant(c)
        for i, level in enumerate(v, start=1):
            term = term * IncrementPolynomial.linear(i, range(1, level + 1))
        total = total + term
    return total


def _mono_str(mono: Monomial) -> str:
    return "*".join(f"a[{i},{j}]" for i, j in mono) or "1"


@dataclass
class E200Report:
    N: int
    n: int
    mu: tuple[Fraction, ...]
    monomials: int
    mismatches: list = field(default_factory=list)
    negatives: list = field(default_factory=list)
    b_mismatches: list = field(default_factory=list)

    @property
    def match(self) -> bool:
        return not self.mismatches and not self.b_mismatches

    @property
    def nonnegative(self) -> bool:
        return not self.negatives

    def to_json(self) -> dict:
        return {
            "N": self.N, "n": self.n,
            "mu": [format_rational(x) for x in self.mu],
            "monomials": self.monomials,
            "match": self.match, "nonnegative": self.nonnegative,
            "mismatches": [{"monomial": _mono_str(m), "formula": format_rational(a),
                            "oracle": format_rational(b)} for m, a, b in self.mismatches],
            "negatives": [{"monomial": _mono_str(m), "value": format_rational(v)}
                          for m, v in self.negatives],
            "b_mismatches": [{"m_prefix": list(p), "formula": format_rational(a),
                              "oracle": format_rational(b)} for p, a, b in self.b_mismatches],
        }


def verify_e200(space: ChainSpace, n: int, *, budget: int = DEFAULT_EXPANSION_BUDGET) -> E200Report:
    """Rebuild the increment polynomial from F and compare with brute force.

    Also checks every coefficient is nonnegative and that :func:`b_formula`
    reproduces the block-layout coefficients.
    """
    oracle = _expansion(space.mu, n, "increments", budget)
    rebuilt = reconstruct_increment_polynomial(space, n)
    report = E200Report(space.N, n, space.mu, len(oracle))
    monos = sorted(set(m for m, _ in oracle.items()) | set(m for m, _ in rebuilt.items()))
    for mono in monos:
        a, b = rebuilt.coefficient(mono), oracle.coefficient(mono)
        if a != b:
            report.mismatches.append((mono, a, b))
        if b < 0:
            report.negatives.append((mono, b))
    for p in prefixes(space.N, n):
        formula = b_formula(p, n, space.mu)
        coeff = oracle.coefficient(block_layout(p + (n - sum(p),)))
        if formula != coeff:
            report.b_mismatches.append((p, formula, coeff))
    return report


def base_case_certificates(mu) -> list[dict]:
    """B for a single function at each increment level, against the claim B = mu(j).

    The brute-force value is the tail mass mu(j) + ... + mu(N), so the
    claim holds only at j = N (or where the tail beyond j is massless).
    """
    mu = _mu_tuple(mu)
    N = len(mu)
    out = []
    for j in range(1, N + 1):
        full = tuple(int(k == j) for k in range(1, N + 1))
        prefix = full[:-1]
        formula = b_formula(prefix, 1, mu)
        oracle = b_oracle(prefix, 1, mu)
        claimed = mu[j - 1]
        out.append({
            "N": N, "n": 1, "level": j,
            "m_prefix": list(prefix),
            "mu": [format_rational(x) for x in mu],
            "claimed": format_rational(claimed),
            "formula": format_rational(formula),
            "oracle": format_rational(oracle),
            "formula_matches_oracle": formula == oracle,
            "claim_matches_oracle": claimed == oracle,
            "authoritative": "oracle",
        })
    return out


def f_check(space: ChainSpace, n: int, *, budget: int = DEFAULT_EXPANSION_BUDGET) -> dict:
    out = {}
    for m in compositions(n, space.N):
        closed = f_closed_form(m, space.mu)
        psum = f_partition_sum(m, space.mu)
        oracle = f_oracle(m, space.mu, budget=budget)
        out[",".join(map(str, m))] = {
            "formula": format_rational(closed),
            "partition_sum": format_rational(psum),
            "oracle": format_rational(oracle),
            "match": closed == psum == oracle,
            "nonnegative": closed >= 0,
        }
    return out


def b_check(space: ChainSpace, n: int, *, budget: int = DEFAULT_EXPANSION_BUDGET) -> dict:
    out = {}
    for p in prefixes(space.N, n):
        formula = b_formula(p, n, space.mu)
        oracle = b_oracle(p, n, space.mu, budget=budget)
        out[",".join(map(str, p + (n - sum(p),)))] = {
            "formula": format_rational(formula),
            "oracle": format_rational(oracle),
            "match": formula == oracle,
            "nonnegative": formula >= 0,
        }
    return out

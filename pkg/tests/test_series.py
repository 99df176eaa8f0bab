from fractions import Fraction as F

import hypothesis.strategies as st
import pytest
from hypothesis import given

from corrineq.errors import DomainError
from corrineq.functional import FunctionalInstance, e_n
from corrineq.partitions import factorial
from corrineq.series import (
    FunctionSeries,
    ScalarSeries,
    check_nonnegativity,
    corollary_direct,
    corollary_via_en,
    exp,
    log1m,
    multisets,
    pow_rational,
)
from corrineq.spaces import ChainSpace, random_chain_space, random_fkg_measure, random_monotone_fn

ONE_MINUS_SQRT = [F(0), F(1, 2), F(1, 8), F(1, 16), F(5, 128), F(7, 256), F(21, 1024)]


def binomial_series(r, T):
    """Coefficients of (1 - t)^r from the generalised binomial theorem."""
    out, c = [], F(1)
    for k in range(T + 1):
        out.append(c * (-1) ** k)
        c = c * (r - k) / (k + 1)
    return out


def test_series_examples():
    p = ScalarSeries.from_list([0, F(1, 2)], 4)
    assert exp(log1m(p)).coeffs == (1, F(-1, 2), 0, 0, 0)
    s = ScalarSeries.from_list([1, -1], 3)
    assert pow_rational(s, F(1, 2)).coeffs == (1, F(-1, 2), F(-1, 8), F(-1, 16))
    assert (s * ScalarSeries.zero(3)) == ScalarSeries.zero(3)


@given(st.fractions(min_value=-3, max_value=3, max_denominator=10), st.integers(1, 7))
def test_pow_matches_binomial_theorem(r, T):
    s = ScalarSeries.from_list([1, -1], T)
    assert list(pow_rational(s, r).coeffs) == binomial_series(r, T)


series_tail = st.lists(st.fractions(max_denominator=9, min_value=-3, max_value=3), min_size=1, max_size=6)


@given(series_tail, st.fractions(max_denominator=7, min_value=-3, max_value=3).filter(bool))
def test_pow_round_trip(tail, a):
    s = ScalarSeries((F(1),) + tuple(tail))
    assert pow_rational(s, 1) == s
    assert pow_rational(pow_rational(s, a), 1 / a) == s


@given(series_tail)
def test_exp_log_inverse(tail):
    p = ScalarSeries((F(0),) + tuple(tail))
    assert exp(log1m(p)) == ScalarSeries.one(p.T) - p


def test_preconditions():
    with pytest.raises(DomainError):
        log1m(ScalarSeries.from_list([1, 1], 2))
    with pytest.raises(DomainError):
        exp(ScalarSeries.from_list([1], 2))
    with pytest.raises(DomainError):
        pow_rational(ScalarSeries.from_list([2, 1], 2), F(1, 2))


def test_corollary_examples(step_chain):
    single = ChainSpace((F(1),))
    p = FunctionSeries(single, ((F(3, 4),), (F(0),)))
    assert corollary_direct(p).coeffs == (0, F(3, 4), 0)
    step = FunctionSeries(step_chain, ((0, 1), (0, 0), (0, 0), (0, 0)))
    assert list(corollary_direct(step).coeffs) == ONE_MINUS_SQRT[:5]
    zero = FunctionSeries(step_chain, ((0, 0),) * 3)
    assert corollary_direct(zero) == ScalarSeries.zero(3)


def test_via_en_examples(step_chain):
    step = FunctionSeries(step_chain, ((0, 1), (0, 0), (0, 0), (0, 0), (0, 0), (0, 0)))
    via = corollary_via_en(step)
    assert list(via.coeffs) == ONE_MINUS_SQRT
    assert via[2] == F(1, 2) * (F(1, 2) - F(1, 4))
    sp = random_chain_space(3, 4)
    fns = tuple(random_monotone_fn(sp, s) for s in range(3))
    p = FunctionSeries(sp, fns)
    assert corollary_via_en(p)[1] == sum(m * v for m, v in zip(sp.mu, fns[0].values))


def test_multisets():
    assert sorted(multisets(4, 6)) == sorted([(4,), (1, 3), (2, 2), (1, 1, 2), (1, 1, 1, 1)])
    assert list(multisets(3, 1)) == [(1, 1, 1)]


@pytest.mark.parametrize("seed", range(8))
def test_routes_agree_on_chains(seed):
    sp = random_chain_space(1 + seed % 4, seed)
    p = FunctionSeries(sp, tuple(random_monotone_fn(sp, 50 + seed * 7 + k, method="repair")
                                 for k in range(5)))
    direct = corollary_direct(p)
    assert direct == corollary_via_en(p)
    assert check_nonnegativity(direct).ok


@pytest.mark.parametrize("seed", range(4))
def test_routes_agree_on_lattices(seed):
    lat = random_fkg_measure(2 + seed % 2, seed)
    p = FunctionSeries(lat, tuple(random_monotone_fn(lat, seed * 5 + k) for k in range(4)))
    assert corollary_direct(p) == corollary_via_en(p)


@pytest.mark.parametrize("seed", range(5))
def test_single_order_gives_en_over_factorial(seed):
    sp = random_chain_space(3, seed)
    f = random_monotone_fn(sp, seed)
    zero = (F(0),) * 3
    p = FunctionSeries(sp, (f,) + (zero,) * 4)
    s = corollary_direct(p)
    for n in range(1, 6):
        assert s[n] == e_n(FunctionalInstance(sp, (f,) * n)) / factorial(n)


def test_check_nonnegativity():
    assert check_nonnegativity(ScalarSeries(tuple(ONE_MINUS_SQRT))).ok
    assert check_nonnegativity(ScalarSeries.zero(4)).ok
    v = check_nonnegativity(ScalarSeries.from_list([0, 1, 0, F(-1, 8), -1], 4))
    assert (v.ok, v.first_negative, v.value) == (False, 3, F(-1, 8))

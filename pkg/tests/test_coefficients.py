from fractions import Fraction as F

import hypothesis.strategies as st
import pytest
from hypothesis import given

from corrineq.coefficients import (
    b_formula,
    b_oracle,
    base_case_certificates,
    block_layout,
    compositions,
    f_closed_form,
    f_oracle,
    f_partition_sum,
    prefixes,
    reconstruct_increment_polynomial,
    verify_e200,
)
from corrineq.functional import expand_e_n
from corrineq.spaces import ChainSpace, random_chain_space

from conftest import probability_vectors

mu_entries = st.fractions(min_value=-3, max_value=3, max_denominator=12)


def test_f_examples():
    half = (F(1, 2),)
    assert f_partition_sum((2,), half) == F(1, 2) - F(1, 4) == f_closed_form((2,), half)
    assert f_partition_sum((0, 0), (F(1, 3), F(2, 3))) == 0 == f_closed_form((0, 0), (F(1, 3), F(2, 3)))
    m1, m2 = F(2, 7), F(5, 7)
    assert f_partition_sum((1, 1), (m1, m2)) == -m1 * m2 == f_closed_form((1, 1), (m1, m2))
    assert f_closed_form((2, 1), (F(1), F(0))) == 0


@given(st.integers(1, 3), st.data())
def test_f_identity_arbitrary_mu(N, data):
    mu = tuple(data.draw(mu_entries) for _ in range(N))
    for total in range(7):
        for m in compositions(total, N):
            assert f_partition_sum(m, mu) == f_closed_form(m, mu)


@given(probability_vectors(1, 3))
def test_f_matches_brute_force_values_coefficient(mu):
    for total in range(1, 5):
        for m in compositions(total, len(mu)):
            assert f_oracle(m, mu) == f_closed_form(m, mu)


def test_b_examples():
    mu = (F(1, 3), F(2, 3))
    assert b_formula((0,), 1, mu) == F(2, 3)
    assert b_formula((0,), 2, mu) == F(2, 3) * F(1, 3)
    assert b_formula((1,), 2, mu) == F(2, 3) * (1 - F(1, 3) - F(2, 3)) == 0
    assert b_oracle((0,), 1, mu) == F(2, 3)
    assert b_oracle((1,), 1, mu) == 1
    assert b_oracle((1,), 2, mu) == 0


@pytest.mark.parametrize("N", [1, 2, 3])
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_b_formula_equals_oracle(N, n):
    for seed in range(3):
        mu = random_chain_space(N, 100 * N + 10 * n + seed).mu
        for p in prefixes(N, n):
            b = b_formula(p, n, mu)
            assert b == b_oracle(p, n, mu)
            assert b >= 0


def test_block_layout():
    assert block_layout((2, 0, 1)) == ((1, 1), (2, 1), (3, 3))


@given(probability_vectors(2, 3), st.integers(2, 4), st.randoms(use_true_random=False))
def test_coefficient_symmetry_under_relabelling(mu, n, rnd):
    poly = expand_e_n(ChainSpace(mu), n)
    for m in compositions(n, len(mu)):
        mono = block_layout(m)
        levels = [j for _, j in mono]
        rnd.shuffle(levels)
        permuted = tuple((i, j) for i, j in zip(range(1, n + 1), levels))
        assert poly.coefficient(permuted) == poly.coefficient(mono)


def test_e200_small_examples():
    rep = verify_e200(ChainSpace((F(1, 2), F(1, 2))), 2)
    assert rep.match and rep.nonnegative
    oracle = expand_e_n(ChainSpace((F(1, 2), F(1, 2))), 2)
    assert {c for _, c in oracle.items()} <= {F(0), F(1, 4)}
    for n in range(2, 5):
        rep = verify_e200(ChainSpace((F(1),)), n)
        assert rep.match and rep.monomials == 0


@pytest.mark.parametrize("seed", range(4))
def test_e200_random_three_points(seed):
    rep = verify_e200(random_chain_space(3, seed), 3)
    assert rep.match and rep.nonnegative and not rep.b_mismatches
    assert rep.to_json()["match"] is True


def test_reconstruction_equals_expansion():
    sp = ChainSpace((F(1, 5), F(3, 10), F(1, 2)))
    assert reconstruct_increment_polynomial(sp, 4) == expand_e_n(sp, 4)


def test_base_case_discrepancy():
    mu = (F(1, 3), F(2, 3))
    certs = base_case_certificates(mu)
    first, last = certs
    assert first["oracle"] == "1" and first["claimed"] == "1/3"
    assert not first["claim_matches_oracle"] and first["formula_matches_oracle"]
    assert last["oracle"] == last["claimed"] == "2/3"
    # on longer chains the value is the tail mass from the chosen level on
    mu3 = (F(1, 6), F(1, 3), F(1, 2))
    assert [c["oracle"] for c in base_case_certificates(mu3)] == ["1", "5/6", "1/2"]

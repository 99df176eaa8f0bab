from fractions import Fraction as F
import math

import hypothesis.strategies as st
import pytest
from hypothesis import given

from corrineq.errors import ConfigurationError, DomainError
from corrineq.functional import (
    FunctionalInstance,
    e_delta,
    e_lambda,
    e_n,
    e_sigma,
    expand_e_n,
    instance,
    instance_from_increments,
)
from corrineq.partitions import SetPartition
from corrineq.spaces import (
    ChainSpace,
    point_mass_chain,
    random_chain_space,
    random_fkg_measure,
    random_monotone_fn,
)

from conftest import monotone_values, probability_vectors


def mean(mu, vals):
    return sum(m * v for m, v in zip(mu, vals))


def oracle_e2(mu, f, g):
    return mean(mu, [a * b for a, b in zip(f, g)]) - mean(mu, f) * mean(mu, g)


def oracle_e3(mu, f, g, h):
    """Shapes (3), (2,1), (1,1,1) carry weights 2, -1, +1."""
    def E(*fs):
        return mean(mu, [math.prod(t) for t in zip(*fs)])

    return (2 * E(f, g, h)
            - E(f, g) * E(h) - E(f, h) * E(g) - E(g, h) * E(f)
            + E(f) * E(g) * E(h))


@st.composite
def chain_instances(draw, n_min=1, n_max=4, N_max=4):
    mu = draw(probability_vectors(1, N_max))
    n = draw(st.integers(n_min, n_max))
    fns = [draw(monotone_values(len(mu))) for _ in range(n)]
    return FunctionalInstance(ChainSpace(mu), tuple(fns))


def test_e_delta_examples(step_chain):
    inst = instance(step_chain, [(0, 1), (0, 1)])
    assert e_delta(inst, {1, 2}) == F(1, 2)
    assert e_delta(inst, [2]) == F(1, 2)
    pm = instance(point_mass_chain(3, 2), [(1, 2, 3), (0, 5, 7)])
    assert e_delta(pm, [1, 2]) == 10
    with pytest.raises(DomainError):
        e_delta(inst, [])
    with pytest.raises(DomainError):
        e_delta(inst, [3])


def test_e_sigma_examples(step_chain):
    inst = instance(step_chain, [(0, 1), (0, 1)])
    assert e_sigma(inst, SetPartition(((1,), (2,)))) == F(1, 4)
    assert e_sigma(inst, SetPartition(((1, 2),))) == F(1, 2)
    assert e_sigma(instance(step_chain, [(1, 3)]), SetPartition(((1,),))) == 2
    with pytest.raises(DomainError):
        e_sigma(inst, SetPartition(((1, 2, 3),)))


def test_e_lambda_examples(step_chain):
    inst2 = instance(step_chain, [(0, 1)] * 2)
    assert e_lambda(inst2, (1, 1)) == F(1, 4)
    inst3 = instance(step_chain, [(0, 1)] * 3)
    assert e_lambda(inst3, (2, 1)) == F(3, 4)
    assert e_lambda(inst3, (3,)) == e_delta(inst3, [1, 2, 3])
    with pytest.raises(DomainError):
        e_lambda(inst3, (2, 2))


def test_e_n_examples(step_chain):
    assert e_n(instance(step_chain, [(0, 1)] * 2)) == F(1, 4)
    mu = F(1, 2)
    assert e_n(instance(step_chain, [(0, 1)] * 3)) == F(3, 8) == mu * (1 - mu) * (2 - mu)


def test_e_n_cap(step_chain):
    with pytest.raises(ConfigurationError):
        e_n(instance(step_chain, [(0, 1)] * 8))


@given(chain_instances(2, 2))
def test_e2_matches_covariance(inst):
    f, g = (x.values for x in inst.functions)
    assert e_n(inst) == oracle_e2(inst.space.mu, f, g)


@given(chain_instances(3, 3))
def test_e3_matches_hand_expansion(inst):
    assert e_n(inst) == oracle_e3(inst.space.mu, *(x.values for x in inst.functions))


@given(chain_instances(1, 5))
def test_shape_and_sigma_paths_agree(inst):
    assert e_n(inst, path="shape") == e_n(inst, path="sigma")


@given(chain_instances(1, 5))
def test_lemma_nonnegativity(inst):
    assert e_n(inst) >= 0


@given(chain_instances(2, 4), st.randoms(use_true_random=False))
def test_symmetry(inst, rnd):
    fns = list(inst.functions)
    rnd.shuffle(fns)
    assert e_n(FunctionalInstance(inst.space, tuple(fns))) == e_n(inst)


@given(chain_instances(2, 4), st.data())
def test_multilinearity(inst, data):
    g = data.draw(monotone_values(inst.space.N))
    alpha = data.draw(st.fractions(0, 5, max_denominator=9))
    f1 = inst.functions[0].values
    rest = inst.functions[1:]
    summed = FunctionalInstance(inst.space, (tuple(a + b for a, b in zip(f1, g)),) + rest)
    other = FunctionalInstance(inst.space, (g,) + rest)
    scaled = FunctionalInstance(inst.space, (tuple(alpha * a for a in f1),) + rest)
    assert e_n(summed) == e_n(inst) + e_n(other)
    assert e_n(scaled) == alpha * e_n(inst)


@pytest.mark.parametrize("n", range(2, 7))
def test_degenerate_annihilation(n):
    for seed in range(5):
        pm = point_mass_chain(4, seed % 4 + 1)
        fns = [random_monotone_fn(pm, seed * 10 + i) for i in range(n)]
        assert e_n(instance(pm, fns)) == 0
        sp = random_chain_space(4, seed)
        consts = [(F(seed + i, 3),) * 4 for i in range(n)]
        assert e_n(instance(sp, consts)) == 0


def test_expand_examples(step_chain):
    mu = ChainSpace((F(1, 3), F(2, 3)))
    p = expand_e_n(mu, 2)
    assert p.coefficient([(1, 2), (2, 2)]) == F(2, 3) * F(1, 3)
    assert p.coefficient([(1, 1), (2, 1)]) == 0
    assert p.coefficient([(1, 1), (2, 2)]) == 0


@given(chain_instances(1, 4, N_max=3))
def test_expansion_reproduces_evaluation(inst):
    incs = [f.increments for f in inst.functions]
    poly = expand_e_n(inst.space, inst.n)
    assert poly.evaluate(incs) == e_n(inst)
    vals = expand_e_n(inst.space, inst.n, basis="values")
    assert vals.evaluate([f.values for f in inst.functions]) == e_n(inst)


def test_expansion_budget(step_chain):
    with pytest.raises(ConfigurationError):
        expand_e_n(random_chain_space(4, 0), 5, budget=100)


def test_instance_from_increments(step_chain):
    inst = instance_from_increments(step_chain, [[0, 1], [F(1, 2), 0]])
    assert inst.functions[1].values == (F(1, 2), F(1, 2))


def test_non_monotone_rejected(step_chain):
    with pytest.raises(DomainError):
        instance(step_chain, [(1, 0)])


@pytest.mark.parametrize("g", [2, 3, 4])
def test_harris_on_fkg_lattices(g):
    for seed in range(40):
        lat = random_fkg_measure(g, seed, mode=("generic", "sparse", "near_product")[seed % 3])
        fns = [random_monotone_fn(lat, 1000 + seed * 2 + i, method="repair" if seed % 2 else "mobius")
               for i in range(2)]
        inst = instance(lat, fns)
        assert e_n(inst) >= 0
        assert e_n(inst) == oracle_e2(lat.mu, *(f.values for f in fns))

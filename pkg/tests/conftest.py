from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import settings

settings.register_profile("ci", max_examples=60, deadline=None)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile("ci")


@st.composite
def probability_vectors(draw, min_size=1, max_size=4, max_weight=12):
    n = draw(st.integers(min_size, max_size))
    w = draw(st.lists(st.integers(0, max_weight), min_size=n, max_size=n))
    if sum(w) == 0:
        w[draw(st.integers(0, n - 1))] = 1
    total = sum(w)
    return tuple(Fraction(x, total) for x in w)


@st.composite
def monotone_values(draw, size, max_den=8):
    incs = draw(st.lists(st.fractions(min_value=0, max_value=4, max_denominator=max_den),
                         min_size=size, max_size=size))
    out, acc = [], Fraction(0)
    for a in incs:
        acc += a
        out.append(acc)
    return tuple(out)


@pytest.fixture
def step_chain():
    from corrineq.spaces import ChainSpace
    return ChainSpace((Fraction(1, 2), Fraction(1, 2)))

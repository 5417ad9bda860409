import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from impairloss.streams import MONTE_CARLO, PSO, RandomStream


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**64 - 1), st.integers(1, 50), st.integers(0, 200), st.integers(1, 60))
def test_rows_are_addressable(seed, width, start, count):
    s = RandomStream(seed)
    whole = s.uniforms(0, start + count, width)
    part = s.uniforms(start, count, width)
    np.testing.assert_array_equal(whole[start:], part)


def test_purposes_are_independent():
    a = RandomStream(7, MONTE_CARLO).uniforms(0, 4, 8)
    b = RandomStream(7, PSO).uniforms(0, 4, 8)
    assert not np.array_equal(a, b)


def test_generator_substreams_differ_and_repeat():
    s = RandomStream(3, PSO)
    assert s.generator(0).random() == s.generator(0).random()
    assert s.generator(0).random() != s.generator(1).random()


@pytest.mark.parametrize("seed", [-1, 2**64])
def test_seed_range(seed):
    with pytest.raises(ValueError):
        RandomStream(seed)


def test_uniform_range():
    u = RandomStream(1).uniforms(0, 1000, 7)
    assert u.shape == (1000, 7)
    assert u.min() >= 0.0 and u.max() < 1.0

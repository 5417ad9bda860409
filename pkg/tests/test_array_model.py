import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from impairloss import (
    ArrayGeometry,
    DirectionOfDeparture,
    ImpairmentRealization,
    nominal_positions,
    nominal_steering,
    perturbed_response,
)

from .strategies import thetas


@pytest.mark.parametrize(
    "n, spacing, expected",
    [
        (1, 0.5, [0.0]),
        (2, 0.5, [-0.25, 0.25]),
        (4, 0.5, [-0.75, -0.25, 0.25, 0.75]),
    ],
)
def test_nominal_positions(n, spacing, expected):
    geom = nominal_positions(n, spacing)
    assert geom.n_antennas == n
    np.testing.assert_allclose(geom.positions, expected, atol=1e-15)


@given(st.integers(1, 200), st.floats(0.01, 5.0))
def test_positions_centered_and_uniform(n, spacing):
    p = nominal_positions(n, spacing).as_array()
    assert abs(p.sum()) <= 1e-9 * n * spacing * n
    if n > 1:
        np.testing.assert_allclose(np.diff(p), spacing, rtol=1e-12)


@pytest.mark.parametrize("n, spacing", [(0, 0.5), (-2, 0.5), (4, 0.0), (4, -1.0)])
def test_nominal_positions_rejects(n, spacing):
    with pytest.raises(ValueError):
        nominal_positions(n, spacing)


def test_dod_unit_vector():
    dod = DirectionOfDeparture(math.pi / 6)
    np.testing.assert_allclose(dod.unit_vector, [math.cos(math.pi / 6), 0.5, 0.0])
    assert np.linalg.norm(dod.unit_vector) == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(ValueError):
        DirectionOfDeparture(-0.1)
    with pytest.raises(ValueError):
        DirectionOfDeparture(2.0)


def test_steering_broadside():
    w = nominal_steering(nominal_positions(2), DirectionOfDeparture(math.pi / 2))
    np.testing.assert_allclose(w, [1 / math.sqrt(2)] * 2, atol=1e-15)


def test_steering_endfire_two_elements():
    w = nominal_steering(nominal_positions(2), DirectionOfDeparture(0.0))
    np.testing.assert_allclose(w, np.array([1j, -1j]) / math.sqrt(2), atol=1e-15)
    # conjugate symmetry about the array center
    assert w[0] == pytest.approx(np.conj(w[1]))


@given(st.integers(1, 64), thetas)
def test_steering_unit_norm(n, theta):
    w = nominal_steering(nominal_positions(n), DirectionOfDeparture(theta))
    assert abs(np.linalg.norm(w) - 1.0) <= 1e-12


@given(st.integers(1, 64), thetas)
def test_ideal_response_is_scaled_steering(n, theta):
    geom, dod = nominal_positions(n), DirectionOfDeparture(theta)
    e = perturbed_response(geom, dod, ImpairmentRealization.nominal(n))
    w = nominal_steering(geom, dod)
    np.testing.assert_allclose(e, math.sqrt(n) * w, atol=1e-12)
    assert abs(abs(np.vdot(e, w)) - math.sqrt(n)) <= 1e-12


def test_single_element_response():
    r = ImpairmentRealization([0.9], [0.1], [0.0])
    e = perturbed_response(nominal_positions(1), DirectionOfDeparture(0.0), r)
    assert e[0] == pytest.approx(0.9 * np.exp(0.2j * np.pi), abs=1e-15)


def test_response_magnitudes_follow_gains():
    rng = np.random.default_rng(3)
    n = 8
    r = ImpairmentRealization(np.full(n, 0.8), rng.uniform(-0.1, 0.1, n), rng.uniform(-0.1, 0.1, n))
    e = perturbed_response(nominal_positions(n), DirectionOfDeparture(0.4), r)
    np.testing.assert_allclose(np.abs(e), 0.8, atol=1e-15)


def test_broadside_ignores_displacement():
    geom, dod = nominal_positions(6), DirectionOfDeparture(math.pi / 2)
    a = ImpairmentRealization([1.0] * 6, [0.05] * 6, [0.0] * 6)
    b = ImpairmentRealization([1.0] * 6, [0.05] * 6, [0.2, -0.2, 0.1, 0.0, -0.1, 0.15])
    np.testing.assert_allclose(perturbed_response(geom, dod, a), perturbed_response(geom, dod, b), atol=1e-15)


def test_response_length_mismatch():
    with pytest.raises(ValueError):
        perturbed_response(nominal_positions(3), DirectionOfDeparture(0.0), ImpairmentRealization.nominal(4))


def test_geometry_accepts_arbitrary_positions():
    geom = ArrayGeometry((0.0, 0.3, 1.1))
    assert geom.n_antennas == 3
    with pytest.raises(ValueError):
        ArrayGeometry(())

"""Nominal ULA geometry and steering vectors.

Lengths are in wavelengths, phases in cycles, angles in radians. The
direction of departure lies in the xy-plane and the array along x, so only
``cos(theta)`` enters the element phases.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ArrayGeometry:
    """Element positions of a linear array, centered on its center of mass.

    ``positions`` is normally produced by :func:`nominal_positions`, but any
    list of x-coordinates (in wavelengths) is accepted for testing.
    """

    positions: tuple
    element_spacing: float = 0.5

    def __post_init__(self):
        pos = tuple(float(p) for p in self.positions)
        if len(pos) < 1:
            raise ValueError("array needs at least one element")
        object.__setattr__(self, "positions", pos)

    @property
    def n_antennas(self) -> int:
        return len(self.positions)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.positions, dtype=float)


@dataclass(frozen=True)
class DirectionOfDeparture:
    theta: float

    def __post_init__(self):
        if not (0.0 <= self.theta <= np.pi / 2):
            raise ValueError(f"theta must lie in [0, pi/2], got {self.theta!r}")

    @classmethod
    def from_degrees(cls, deg: float) -> "DirectionOfDeparture":
        return cls(float(np.deg2rad(deg)))

    @property
    def unit_vector(self) -> np.ndarray:
        return np.array([np.cos(self.theta), np.sin(self.theta), 0.0])


def nominal_positions(n: int, spacing: float = 0.5) -> ArrayGeometry:
    """Centered ULA: ``p_i = (i - (N+1)/2) * spacing`` for ``i = 1..N``."""
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if not spacing > 0:
        raise ValueError(f"spacing must be positive, got {spacing!r}")
    n = int(n)
    idx = np.arange(1, n + 1, dtype=float)
    return ArrayGeometry(tuple((idx - (n + 1) / 2.0) * spacing), float(spacing))


def nominal_steering(geom: ArrayGeometry, dod: DirectionOfDeparture) -> np.ndarray:
    """Unit-norm steering vector ``exp(-j 2 pi p_i cos(theta)) / sqrt(N)``."""
    p = geom.as_array()
    return np.exp(-2j * np.pi * p * np.cos(dod.theta)) / np.sqrt(p.size)


def perturbed_response(geom: ArrayGeometry, dod: DirectionOfDeparture, r) -> np.ndarray:
    """Array response with per-element gain, phase and x-displacement errors.

    Entry ``i`` is ``rho_i exp(j 2 pi phi_i) exp(-j 2 pi (p_i + eps_i) cos(theta))``.
    Not normalized: with no impairment it equals ``sqrt(N)`` times the
    nominal steering vector.
    """
    if len(r) != geom.n_antennas:
        raise ValueError(
            f"realization has {len(r)} elements, geometry has {geom.n_antennas}"
        )
    p = geom.as_array()
    rho = np.asarray(r.rho, dtype=float)
    phi = np.asarray(r.phi, dtype=float)
    eps = np.asarray(r.eps_x, dtype=float)
    gain = rho * np.exp(2j * np.pi * phi)
    return gain * np.exp(-2j * np.pi * (p + eps) * np.cos(dod.theta))

"""Uniform per-antenna impairment model and its worst-case configuration."""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .streams import RandomStream

ENUMERATION_CAP = 16


class BoundsError(ValueError):
    """Impairment bounds violate the model's admissible region."""


class GainSpanError(BoundsError):
    pass


class NegativeHalfWidthError(BoundsError):
    pass


class PhaseBudgetError(BoundsError):
    pass


@dataclass(frozen=True)
class ImpairmentBounds:
    """Box of the uniform impairment model.

    ``delta_g`` is the gain span (gains in ``[1 - delta_g, 1]``), ``alpha_g``
    the phase half-width in cycles and ``delta_p`` the x-displacement
    half-width in wavelengths.
    """

    delta_g: float = 0.0
    alpha_g: float = 0.0
    delta_p: float = 0.0

    @property
    def phase_budget(self) -> float:
        return self.alpha_g + self.delta_p


def validate_bounds(b: ImpairmentBounds) -> ImpairmentBounds:
    if not (0.0 <= b.delta_g <= 1.0):
        raise GainSpanError(f"delta_g must lie in [0, 1], got {b.delta_g!r}")
    if not (b.alpha_g >= 0.0 and b.delta_p >= 0.0):
        raise NegativeHalfWidthError(
            f"alpha_g and delta_p must be >= 0, got {b.alpha_g!r}, {b.delta_p!r}"
        )
    if not (b.alpha_g + b.delta_p < 0.25):
        raise PhaseBudgetError(
            f"alpha_g + delta_p must be < 1/4, got {b.alpha_g + b.delta_p!r}"
        )
    return b


@dataclass(frozen=True)
class ImpairmentRealization:
    """One concrete array state: per-antenna gain, phase (cycles), x-shift (wavelengths)."""

    rho: tuple
    phi: tuple
    eps_x: tuple

    def __post_init__(self):
        rho, phi, eps = (tuple(float(v) for v in a) for a in (self.rho, self.phi, self.eps_x))
        if not (len(rho) == len(phi) == len(eps)):
            raise ValueError("rho, phi and eps_x must have equal length")
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "eps_x", eps)

    def __len__(self):
        return len(self.rho)

    @classmethod
    def nominal(cls, n: int) -> "ImpairmentRealization":
        return cls((1.0,) * n, (0.0,) * n, (0.0,) * n)

    def within(self, b: ImpairmentBounds, tol: float = 0.0) -> bool:
        rho, phi, eps = (np.asarray(a) for a in (self.rho, self.phi, self.eps_x))
        return bool(
            np.all(rho >= 1.0 - b.delta_g - tol)
            and np.all(rho <= 1.0 + tol)
            and np.all(np.abs(phi) <= b.alpha_g + tol)
            and np.all(np.abs(eps) <= b.delta_p + tol)
        )


def realizations_from_uniforms(b: ImpairmentBounds, u: np.ndarray, n: int):
    """Map uniform rows of width ``3n`` onto the impairment box.

    Returns ``(rho, phi, eps)`` arrays of shape ``(rows, n)``.
    """
    rho = 1.0 - b.delta_g * u[:, :n]
    phi = b.alpha_g * (2.0 * u[:, n : 2 * n] - 1.0)
    eps = b.delta_p * (2.0 * u[:, 2 * n : 3 * n] - 1.0)
    return rho, phi, eps


def sample_realization(
    b: ImpairmentBounds, n: int, stream: RandomStream, index: int = 0
) -> ImpairmentRealization:
    """Draw realization ``index`` of ``stream``: 3N independent uniforms.

    The result depends only on ``(stream.seed, stream.purpose, index)``.
    """
    validate_bounds(b)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    u = stream.uniforms(index, 1, 3 * n)
    rho, phi, eps = realizations_from_uniforms(b, u, n)
    return ImpairmentRealization(rho[0], phi[0], eps[0])


def _check_even(n: int):
    if n < 2 or n % 2:
        raise ValueError(f"worst-case construction needs an even antenna count, got {n!r}")


def canonical_pattern(n: int) -> tuple:
    _check_even(n)
    return (1,) * (n // 2) + (-1,) * (n // 2)


def is_balanced(pattern) -> bool:
    return all(p in (-1, 1) for p in pattern) and sum(pattern) == 0


def worst_case_realization(
    b: ImpairmentBounds, n: int, theta: float, pattern="canonical"
) -> ImpairmentRealization:
    """Worst-case array state for direction ``theta``.

    All gains sit at ``1 - delta_g``; antenna ``i`` gets ``eps_i = p_i delta_p``
    and ``phi_i = -p_i alpha_g`` so that its effective phase
    ``eps_i cos(theta) - phi_i`` equals ``p_i (delta_p cos(theta) + alpha_g)``.
    """
    validate_bounds(b)
    _check_even(n)
    if isinstance(pattern, str):
        if pattern != "canonical":
            raise ValueError(f"unknown pattern {pattern!r}")
        pattern = canonical_pattern(n)
    pattern = tuple(int(p) for p in pattern)
    if len(pattern) != n:
        raise ValueError(f"pattern length {len(pattern)} does not match n={n}")
    if not is_balanced(pattern):
        raise ValueError(f"sign pattern {pattern} is not balanced")
    if not (0.0 <= theta <= np.pi / 2):
        raise ValueError(f"theta must lie in [0, pi/2], got {theta!r}")
    p = np.asarray(pattern, dtype=float)
    # the construction is theta-independent; "+ 0.0" folds -0.0 into 0.0
    return ImpairmentRealization(
        np.full(n, 1.0 - b.delta_g), -p * b.alpha_g + 0.0, p * b.delta_p + 0.0
    )


def balanced_patterns(n: int, cap: int = ENUMERATION_CAP):
    """All ``C(n, n/2)`` sign patterns with equal numbers of +1 and -1."""
    _check_even(n)
    if n > cap:
        raise ValueError(f"n={n} exceeds the enumeration cap {cap}")
    out = []
    for plus in itertools.combinations(range(n), n // 2):
        p = [-1] * n
        for i in plus:
            p[i] = 1
        out.append(tuple(p))
    assert len(out) == math.comb(n, n // 2)
    return out

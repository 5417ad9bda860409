"""Analytic SNR-loss formulas.

All losses are power ratios relative to the impairment-free array, so the
channel amplitude and noise power cancel.
"""

import math
from dataclasses import dataclass

import numpy as np

from .impairments import ImpairmentBounds, validate_bounds

_SINC_TAYLOR = 1e-4
DB_FLOOR = 1e-30


def to_db(linear: float) -> float:
    if linear < 0:
        raise ValueError(f"power ratio must be >= 0, got {linear!r}")
    if linear == 0:
        return -math.inf
    return 10.0 * math.log10(linear)


@dataclass(frozen=True)
class LossValue:
    linear: float

    def __post_init__(self):
        if not (0.0 <= self.linear <= 1.0 + 1e-12):
            raise ValueError(f"loss ratio must lie in [0, 1], got {self.linear!r}")

    @property
    def db(self) -> float:
        return to_db(self.linear)


def sinc(x: float) -> float:
    """Unnormalized ``sin(x)/x`` with a Taylor branch near zero."""
    if abs(x) < _SINC_TAYLOR:
        x2 = x * x
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0
    return math.sin(x) / x


def correlation_magnitude(response, steering) -> float:
    """``|<response, steering>|`` with the response conjugated.

    Equals ``sqrt(N)`` for an ideal array and
    ``|sum_i rho_i exp(j 2 pi (eps_i cos(theta) - phi_i))| / sqrt(N)`` in general.
    """
    response = np.asarray(response)
    steering = np.asarray(steering)
    if response.shape != steering.shape:
        raise ValueError(f"length mismatch: {response.shape} vs {steering.shape}")
    return float(abs(np.vdot(response, steering)))


def per_realization_snr_loss(response, steering) -> LossValue:
    n = np.asarray(steering).size
    return LossValue(correlation_magnitude(response, steering) ** 2 / n)


def nominal_snr(n: int, beta: float = 1.0, sigma2: float = 1.0) -> float:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    if not sigma2 > 0:
        raise ValueError(f"noise power must be positive, got {sigma2!r}")
    return n * beta**2 / sigma2


def worst_phase(b: ImpairmentBounds, theta: float) -> float:
    """Largest effective per-antenna phase in radians, ``2 pi (delta_p cos(theta) + alpha_g)``."""
    return 2.0 * math.pi * (b.delta_p * math.cos(theta) + b.alpha_g)


def worst_case_correlation(b: ImpairmentBounds, theta: float, n: int) -> float:
    validate_bounds(b)
    return math.sqrt(n) * (1.0 - b.delta_g) * math.cos(worst_phase(b, theta))


def worst_case_snr_loss(b: ImpairmentBounds, theta: float) -> LossValue:
    """``(1 - delta_g)^2 cos^2(2 pi (delta_p cos(theta) + alpha_g))``; independent of N."""
    validate_bounds(b)
    return LossValue((1.0 - b.delta_g) ** 2 * math.cos(worst_phase(b, theta)) ** 2)


def mean_gain_square(delta_g: float) -> float:
    """E[rho^2] for rho ~ U(1 - delta_g, 1)."""
    return (3.0 - 3.0 * delta_g + delta_g**2) / 3.0


def squared_mean_gain(delta_g: float) -> float:
    """E[rho]^2 for rho ~ U(1 - delta_g, 1)."""
    return (4.0 - 4.0 * delta_g + delta_g**2) / 4.0


def average_snr_loss(b: ImpairmentBounds, theta: float, n: int) -> LossValue:
    """Expected power ratio over the uniform impairment model.

    Diagonal terms contribute ``E[rho^2]/N``; each of the ``N(N-1)`` cross
    terms contributes ``E[rho]^2`` times the squared characteristic functions
    of the position and phase errors.
    """
    validate_bounds(b)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    diag = mean_gain_square(b.delta_g) / n
    cross = (n - 1) * squared_mean_gain(b.delta_g) / n
    cf = sinc(2.0 * math.pi * b.delta_p * math.cos(theta)) ** 2 * sinc(2.0 * math.pi * b.alpha_g) ** 2
    return LossValue(diag + cross * cf)


def _phasor_sums(rho, phi, eps, theta):
    psi = 2.0 * np.pi * (eps * np.cos(theta) - phi)
    return np.sum(rho * np.cos(psi), axis=-1), np.sum(rho * np.sin(psi), axis=-1)


def batch_correlation(rho, phi, eps, theta: float) -> np.ndarray:
    """Vectorized correlation magnitude for realizations stacked as ``(rows, N)`` arrays."""
    re, im = _phasor_sums(rho, phi, eps, theta)
    return np.hypot(re, im) / math.sqrt(rho.shape[-1])


def batch_snr_loss(rho, phi, eps, theta: float) -> np.ndarray:
    """Vectorized power ratio ``|sum_i rho_i exp(j psi_i)|^2 / N^2``; exactly 1 for an ideal array."""
    n = rho.shape[-1]
    re, im = _phasor_sums(rho, phi, eps, theta)
    return (re * re + im * im) / (n * n)

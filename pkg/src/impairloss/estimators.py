"""Seeded Monte Carlo estimation of the average SNR loss."""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .closed_form import batch_snr_loss
from .impairments import ImpairmentBounds, realizations_from_uniforms, validate_bounds
from .streams import MONTE_CARLO, RandomStream

# fixed work-unit size: chunk boundaries never depend on the worker count
CHUNK = 4096
DEFAULT_SAMPLES = 20000


@dataclass(frozen=True)
class MonteCarloEstimate:
    mean_linear: float
    std_error: float
    n_samples: int
    seed: int


def sample_losses(b, n, theta, start, count, stream, threads=1) -> np.ndarray:
    """Losses of realizations ``start .. start+count-1`` of ``stream``."""
    out = np.empty(count)

    def work(lo):
        hi = min(lo + CHUNK, count)
        u = stream.uniforms(start + lo, hi - lo, 3 * n)
        out[lo:hi] = batch_snr_loss(*realizations_from_uniforms(b, u, n), theta)

    offsets = range(0, count, CHUNK)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(work, offsets))
    else:
        for lo in offsets:
            work(lo)
    return out


def _summarize(losses: np.ndarray, seed: int) -> MonteCarloEstimate:
    m = losses.size
    std = float(np.std(losses, ddof=1))
    return MonteCarloEstimate(float(np.mean(losses)), std / math.sqrt(m), m, seed)


def estimate_average_loss(
    b: ImpairmentBounds,
    n: int,
    theta: float,
    n_samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    threads: int = 1,
) -> MonteCarloEstimate:
    """Sample mean of the power ratio over ``n_samples`` realizations.

    Realization ``k`` is addressed by ``(seed, k)``, so the estimate is
    bit-identical for any ``threads``.
    """
    validate_bounds(b)
    if n_samples < 2:
        raise ValueError(f"n_samples must be >= 2, got {n_samples!r}")
    stream = RandomStream(seed, MONTE_CARLO)
    losses = sample_losses(b, n, theta, 0, int(n_samples), stream, threads)
    return _summarize(losses, seed)


def convergence_scan(b, n, theta, sample_counts, seed=0, threads=1):
    """One estimate per sample count, each on its own consecutive substream range.

    The first count starts at realization 0, so ``convergence_scan(..., [M])``
    reproduces ``estimate_average_loss(..., M)``.
    """
    counts = [int(c) for c in sample_counts]
    if not counts:
        raise ValueError("sample_counts is empty")
    if any(c < 2 for c in counts) or any(b2 <= a for a, b2 in zip(counts, counts[1:])):
        raise ValueError("sample counts must be increasing and >= 2")
    validate_bounds(b)
    stream = RandomStream(seed, MONTE_CARLO)
    out, start = [], 0
    for c in counts:
        out.append(_summarize(sample_losses(b, n, theta, start, c, stream, threads), seed))
        start += c
    return out

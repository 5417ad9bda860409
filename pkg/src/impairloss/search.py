"""Numerical minimizers of the correlation magnitude over the impairment box.

Corner enumeration is exact for small arrays. The particle swarm searches
the full continuous ``3N``-dimensional box and must find the corner
structure on its own, which makes it an independent check of the analytic
worst case.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .closed_form import batch_correlation
from .impairments import (
    ENUMERATION_CAP,
    ImpairmentBounds,
    ImpairmentRealization,
    realizations_from_uniforms,
    validate_bounds,
)
from .streams import PROBE, PSO, RandomStream

DEGENERACY_TOL = 1e-9


@dataclass(frozen=True)
class SearchResult:
    min_correlation: float
    argmin: ImpairmentRealization
    method: str
    evaluations: int
    n_optimal: int = 0
    history: tuple = field(default=(), repr=False)


@dataclass(frozen=True)
class PsoConfig:
    """Swarm settings.

    ``inertia`` is the starting (and largest) inertia weight; it adapts within
    ``[inertia_min, inertia]`` as the swarm improves or stalls. After
    ``stall_iterations`` iterations without improvement, every particle except
    the global best is re-scattered over the box.
    """

    n_particles: int = 64
    n_iterations: int = 600
    inertia: float = 1.1
    inertia_min: float = 0.1
    cognitive: float = 1.49
    social: float = 1.49
    n_restarts: int = 8
    seed: int = 0
    neighborhood_fraction: float = 0.25
    stall_iterations: int = 25

    def __post_init__(self):
        if self.n_particles < 2:
            raise ValueError("n_particles must be >= 2")
        if self.n_iterations < 1:
            raise ValueError("n_iterations must be >= 1")
        if self.n_restarts < 1:
            raise ValueError("n_restarts must be >= 1")
        if not 0.0 < self.inertia_min <= self.inertia:
            raise ValueError("need 0 < inertia_min <= inertia")
        if not 0.0 < self.neighborhood_fraction <= 1.0:
            raise ValueError("neighborhood_fraction must lie in (0, 1]")
        if self.stall_iterations < 1:
            raise ValueError("stall_iterations must be >= 1")


def corner_signs(n: int) -> np.ndarray:
    """All ``2**n`` rows of +/-1, row ``k`` holding the bits of ``k``."""
    k = np.arange(2**n)[:, None]
    return ((k >> np.arange(n)) & 1) * 2 - 1


def _pattern_realization(b, signs) -> ImpairmentRealization:
    p = np.asarray(signs, dtype=float)
    return ImpairmentRealization(np.full(p.size, 1.0 - b.delta_g), -p * b.alpha_g + 0.0, p * b.delta_p + 0.0)


def enumerate_corner_minimum(
    b: ImpairmentBounds, n: int, theta: float, cap: int = ENUMERATION_CAP
) -> SearchResult:
    """Exact minimum over all ``2**n`` extreme phase assignments.

    Gains sit at ``1 - delta_g``; each effective phase is
    ``+/- 2 pi (delta_p cos(theta) + alpha_g)``. ``n_optimal`` counts the
    sign patterns within ``DEGENERACY_TOL`` of the minimum.
    """
    validate_bounds(b)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    if n > cap:
        raise ValueError(f"n={n} exceeds the enumeration cap {cap}")
    signs = corner_signs(n)
    half = 2.0 * np.pi * (b.delta_p * np.cos(theta) + b.alpha_g)
    psi = signs * half
    r = 1.0 - b.delta_g
    corr = r * np.hypot(np.cos(psi).sum(axis=1), np.sin(psi).sum(axis=1)) / math.sqrt(n)
    best = int(np.argmin(corr))
    n_opt = int(np.count_nonzero(corr <= corr[best] + DEGENERACY_TOL))
    return SearchResult(
        float(corr[best]),
        _pattern_realization(b, signs[best]),
        "corner_enumeration",
        int(corr.size),
        n_optimal=n_opt,
    )


def _box(b: ImpairmentBounds, n: int):
    lo = np.concatenate([np.full(n, 1.0 - b.delta_g), np.full(n, -b.alpha_g), np.full(n, -b.delta_p)])
    hi = np.concatenate([np.ones(n), np.full(n, b.alpha_g), np.full(n, b.delta_p)])
    return lo, hi


def _swarm(b, n, theta, cfg: PsoConfig, rng: np.random.Generator):
    lo, hi = _box(b, n)
    width = hi - lo
    n_p, dim = cfg.n_particles, lo.size
    rows = np.arange(n_p)

    def objective(x):
        return batch_correlation(x[:, :n], x[:, n : 2 * n], x[:, 2 * n :], theta)

    def scatter():
        x = lo + width * rng.random((n_p, dim))
        v = width * (2.0 * rng.random((n_p, dim)) - 1.0)
        return x, v, objective(x)

    x, v, f = scatter()
    pbest, pbest_f = x.copy(), f.copy()
    best_f = float(pbest_f.min())
    history = [best_f]
    min_hood = max(2, int(cfg.neighborhood_fraction * n_p))
    hood, w, stall = min_hood, cfg.inertia, 0
    evaluations = n_p
    for _ in range(cfg.n_iterations):
        # each particle follows the best personal best among itself and `hood` random others
        others = np.argsort(rng.random((n_p, n_p)), axis=1)[:, : min(hood, n_p - 1)]
        cand = np.concatenate([others, rows[:, None]], axis=1)
        leader = pbest[cand[rows, np.argmin(pbest_f[cand], axis=1)]]
        r1 = rng.random((n_p, dim))
        r2 = rng.random((n_p, dim))
        v = w * v + cfg.cognitive * r1 * (pbest - x) + cfg.social * r2 * (leader - x)
        np.clip(v, -width, width, out=v)
        x = x + v
        hit = (x < lo) | (x > hi)
        v[hit] = 0.0
        np.clip(x, lo, hi, out=x)
        f = objective(x)
        evaluations += n_p
        improved = f < pbest_f
        pbest[improved] = x[improved]
        pbest_f[improved] = f[improved]

        cur = float(pbest_f.min())
        if cur < best_f:
            best_f = cur
            stall = max(0, stall - 1)
            hood = min_hood
            if stall < 2:
                w *= 2.0
            if stall > 5:
                w /= 2.0
            w = min(max(w, cfg.inertia_min), cfg.inertia)
        else:
            stall += 1
            hood = min(hood + min_hood, n_p - 1)
            if stall >= cfg.stall_iterations:
                keep = int(np.argmin(pbest_f))
                kx, kf = pbest[keep].copy(), pbest_f[keep]
                x, v, f = scatter()
                evaluations += n_p
                pbest, pbest_f = x.copy(), f.copy()
                x[0] = pbest[0] = kx
                pbest_f[0] = kf
                v[0] = 0.0
                best_f = float(pbest_f.min())
                hood, w, stall = min_hood, cfg.inertia, 0
        history.append(best_f)
    k = int(np.argmin(pbest_f))
    return float(pbest_f[k]), pbest[k].copy(), history, evaluations


def pso_minimize(
    b: ImpairmentBounds, n: int, theta: float, cfg: PsoConfig = PsoConfig(), threads: int = 1
) -> SearchResult:
    """Particle swarm over ``[1-dg,1]^N x [-ag,ag]^N x [-dp,dp]^N``.

    Adaptive random-neighbourhood swarm with synchronous updates; positions
    leaving the box are clamped to it and lose that velocity component.
    Restart ``r`` draws from substream ``r`` of ``cfg.seed``; the best restart
    wins (lowest index on ties), so the result does not depend on ``threads``.
    """
    validate_bounds(b)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    stream = RandomStream(cfg.seed, PSO)

    def run(r):
        return _swarm(b, n, theta, cfg, stream.generator(r))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            runs = list(pool.map(run, range(cfg.n_restarts)))
    else:
        runs = [run(r) for r in range(cfg.n_restarts)]
    best = min(range(len(runs)), key=lambda r: (runs[r][0], r))
    f, x, history, _ = runs[best]
    return SearchResult(
        float(f),
        ImpairmentRealization(x[:n], x[n : 2 * n], x[2 * n :]),
        "pso",
        sum(run[3] for run in runs),
        history=tuple(history),
    )


def random_interior_probe(
    b: ImpairmentBounds, n: int, theta: float, n_probes: int, seed: int = 0, chunk: int = 8192
) -> SearchResult:
    """Best of ``n_probes`` uniform samples of the full box (falsification probe)."""
    validate_bounds(b)
    if n_probes < 1:
        raise ValueError(f"n_probes must be >= 1, got {n_probes!r}")
    stream = RandomStream(seed, PROBE)
    best_f, best_row = math.inf, None
    for start in range(0, n_probes, chunk):
        count = min(chunk, n_probes - start)
        rho, phi, eps = realizations_from_uniforms(b, stream.uniforms(start, count, 3 * n), n)
        corr = batch_correlation(rho, phi, eps, theta)
        k = int(np.argmin(corr))
        if corr[k] < best_f:
            best_f, best_row = float(corr[k]), (rho[k], phi[k], eps[k])
    return SearchResult(best_f, ImpairmentRealization(*best_row), "random_probe", int(n_probes))

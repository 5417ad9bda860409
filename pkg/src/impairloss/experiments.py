"""Experiment configuration and the sweep / surface / worst-case drivers behind the CLI."""

import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields

import numpy as np
import yaml

from . import closed_form as cf
from .array_model import DirectionOfDeparture, nominal_positions, nominal_steering, perturbed_response
from .estimators import DEFAULT_SAMPLES, estimate_average_loss
from .impairments import (
    ENUMERATION_CAP,
    ImpairmentBounds,
    ImpairmentRealization,
    canonical_pattern,
    validate_bounds,
    worst_case_realization,
)
from .search import PsoConfig, enumerate_corner_minimum, pso_minimize

CONFIG_KEYS = (
    "n_antennas",
    "spacing",
    "delta_g",
    "alpha_g",
    "delta_p",
    "theta_start_deg",
    "theta_stop_deg",
    "theta_step_deg",
    "mc_samples",
    "pso_particles",
    "pso_iterations",
    "pso_restarts",
    "seed",
)

SWEEP_COLUMNS = (
    "theta_deg",
    "worst_theory_db",
    "worst_search_db",
    "avg_theory_db",
    "avg_mc_db",
    "avg_mc_stderr_linear",
)
SURFACE_COLUMNS = ("rho", "theta_deg", "correlation")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    n_antennas: int = 16
    spacing: float = 0.5
    delta_g: float = 0.1
    alpha_g: float = 0.1
    delta_p: float = 0.1
    theta_start_deg: float = 0.0
    theta_stop_deg: float = 90.0
    theta_step_deg: float = 1.0
    mc_samples: int = DEFAULT_SAMPLES
    pso_particles: int = PsoConfig.n_particles
    pso_iterations: int = PsoConfig.n_iterations
    pso_restarts: int = PsoConfig.n_restarts
    seed: int = 0

    def __post_init__(self):
        if int(self.n_antennas) != self.n_antennas or self.n_antennas < 1:
            raise ConfigError(f"n_antennas must be a positive integer, got {self.n_antennas!r}")
        if not self.spacing > 0:
            raise ConfigError(f"spacing must be positive, got {self.spacing!r}")
        if not (0.0 <= self.theta_start_deg <= 90.0 and 0.0 <= self.theta_stop_deg <= 90.0):
            raise ConfigError("theta grid must lie within [0, 90] degrees")
        if not self.theta_step_deg > 0:
            raise ConfigError(f"theta_step_deg must be positive, got {self.theta_step_deg!r}")
        if self.theta_stop_deg < self.theta_start_deg:
            raise ConfigError("theta_stop_deg must be >= theta_start_deg")
        if self.mc_samples < 2:
            raise ConfigError(f"mc_samples must be >= 2, got {self.mc_samples!r}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        try:
            validate_bounds(self.bounds)
            PsoConfig(self.pso_particles, self.pso_iterations, n_restarts=self.pso_restarts)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    @property
    def bounds(self) -> ImpairmentBounds:
        return ImpairmentBounds(self.delta_g, self.alpha_g, self.delta_p)

    @property
    def pso(self) -> PsoConfig:
        return PsoConfig(
            n_particles=self.pso_particles,
            n_iterations=self.pso_iterations,
            n_restarts=self.pso_restarts,
            seed=self.seed,
        )

    def theta_grid_deg(self) -> np.ndarray:
        span = self.theta_stop_deg - self.theta_start_deg
        count = int(math.floor(span / self.theta_step_deg + 1e-9)) + 1
        return self.theta_start_deg + self.theta_step_deg * np.arange(count)


def _coerce(name, value):
    kind = {f.name: f.type for f in fields(ExperimentConfig)}[name]
    if kind in (int, "int"):
        if isinstance(value, bool) or (isinstance(value, float) and not value.is_integer()):
            raise ConfigError(f"{name} must be an integer, got {value!r}")
        return int(value)
    if isinstance(value, bool):
        raise ConfigError(f"{name} must be a number, got {value!r}")
    return float(value)


def load_config(path=None, **overrides) -> ExperimentConfig:
    """Read a flat YAML mapping of ``CONFIG_KEYS``; keyword overrides win.

    ``None`` overrides are ignored so unset CLI flags fall through.
    """
    values = {}
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            try:
                data = yaml.safe_load(fh) or {}
            except yaml.YAMLError as exc:
                raise ConfigError(f"{path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: expected a flat key/value mapping")
        values.update(data)
    values.update({k: v for k, v in overrides.items() if v is not None})
    unknown = sorted(set(values) - set(CONFIG_KEYS))
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    try:
        coerced = {k: _coerce(k, v) for k, v in values.items()}
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    return ExperimentConfig(**coerced)


def fmt(x: float) -> str:
    return f"{x:.12g}"


def fmt_db(linear: float) -> str:
    if linear < cf.DB_FLOOR:
        return "-inf"
    return fmt(10.0 * math.log10(linear))


def render_csv(columns, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(row) + "\n")
    return buf.getvalue()


@dataclass(frozen=True)
class SweepRow:
    theta_deg: float
    worst_theory: float
    worst_search: float
    avg_theory: float
    avg_mc: float
    avg_mc_stderr: float

    def cells(self):
        return (
            fmt(self.theta_deg),
            fmt_db(self.worst_theory),
            fmt_db(self.worst_search),
            fmt_db(self.avg_theory),
            fmt_db(self.avg_mc),
            fmt(self.avg_mc_stderr),
        )


def sweep_point(cfg: ExperimentConfig, theta_deg: float, search=True, monte_carlo=True) -> SweepRow:
    """All four loss estimates at one angle (linear ratios; search/MC columns NaN when skipped)."""
    theta = math.radians(theta_deg)
    b, n = cfg.bounds, cfg.n_antennas
    worst = cf.worst_case_snr_loss(b, theta).linear
    avg = cf.average_snr_loss(b, theta, n).linear
    found = mc = se = math.nan
    if search:
        found = pso_minimize(b, n, theta, cfg.pso).min_correlation ** 2 / n
    if monte_carlo:
        est = estimate_average_loss(b, n, theta, cfg.mc_samples, cfg.seed)
        mc, se = est.mean_linear, est.std_error
    return SweepRow(float(theta_deg), worst, found, avg, mc, se)


def sweep_rows(cfg: ExperimentConfig, threads: int = 1, search=True, monte_carlo=True):
    grid = cfg.theta_grid_deg()

    def one(t):
        return sweep_point(cfg, float(t), search, monte_carlo)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(one, grid))
    return [one(t) for t in grid]


def sweep_csv(cfg: ExperimentConfig, threads: int = 1) -> str:
    return render_csv(SWEEP_COLUMNS, (r.cells() for r in sweep_rows(cfg, threads)))


def surface_correlation(n, spacing, delta_p, rho, theta) -> float:
    """|S| with every gain at ``rho``, no phase error and the canonical +/- ``delta_p`` split."""
    geom = nominal_positions(n, spacing)
    dod = DirectionOfDeparture(theta)
    p = np.asarray(canonical_pattern(n), dtype=float)
    r = ImpairmentRealization(np.full(n, rho), np.zeros(n), p * delta_p)
    return cf.correlation_magnitude(perturbed_response(geom, dod, r), nominal_steering(geom, dod))


def surface_rows(cfg: ExperimentConfig, rho_values=None, rho_points: int = 11):
    """``(rho, theta_deg, |S|)`` over the gain grid and the config's angle grid."""
    lo = 1.0 - cfg.delta_g
    if rho_values is None:
        if rho_points < 1:
            raise ConfigError("rho_points must be >= 1")
        rho_values = np.linspace(lo, 1.0, rho_points) if rho_points > 1 else np.array([lo])
    rho_values = [float(r) for r in rho_values]
    bad = [r for r in rho_values if not (lo - 1e-12 <= r <= 1.0 + 1e-12)]
    if bad:
        raise ConfigError(f"rho values {bad} lie outside [{lo}, 1]")
    rows = []
    for rho in rho_values:
        for t in cfg.theta_grid_deg():
            c = surface_correlation(cfg.n_antennas, cfg.spacing, cfg.delta_p, rho, math.radians(t))
            rows.append((rho, float(t), c))
    return rows


def surface_csv(cfg: ExperimentConfig, rho_values=None, rho_points: int = 11) -> str:
    rows = surface_rows(cfg, rho_values, rho_points)
    return render_csv(SURFACE_COLUMNS, ((fmt(a), fmt(b), fmt(c)) for a, b, c in rows))


def worst_report(cfg: ExperimentConfig, theta_deg: float) -> str:
    theta = math.radians(theta_deg)
    b, n = cfg.bounds, cfg.n_antennas
    loss = cf.worst_case_snr_loss(b, theta)
    lines = [
        f"N = {n}, delta_g = {fmt(b.delta_g)}, alpha_g = {fmt(b.alpha_g)}, "
        f"delta_p = {fmt(b.delta_p)}, theta = {fmt(theta_deg)} deg",
        f"worst-case SNR loss: {fmt(loss.linear)} (linear), {fmt_db(loss.linear)} dB",
    ]
    if n % 2 == 0:
        r = worst_case_realization(b, n, theta)
        geom = nominal_positions(n, cfg.spacing)
        lines.append("canonical worst-case array (antenna, position, rho, phi, eps_x):")
        for i, (pos, rho, phi, eps) in enumerate(zip(geom.positions, r.rho, r.phi, r.eps_x), 1):
            lines.append(f"  {i:3d}  {fmt(pos):>8}  {fmt(rho):>6}  {fmt(phi):>6}  {fmt(eps):>6}")
        if n <= ENUMERATION_CAP:
            res = enumerate_corner_minimum(b, n, theta)
            closed = cf.worst_case_correlation(b, theta, n)
            lines.append(
                f"corner enumeration: min |S| = {fmt(res.min_correlation)} "
                f"(closed form {fmt(closed)}, |diff| = {abs(res.min_correlation - closed):.3e})"
            )
            lines.append(f"optimal sign patterns: {res.n_optimal} (C({n},{n // 2}) = {math.comb(n, n // 2)})")
    else:
        lines.append("odd N: no closed-form worst-case array; value shown is the even-N formula")
        if n <= ENUMERATION_CAP:
            res = enumerate_corner_minimum(b, n, theta)
            lines.append(f"corner enumeration: min |S| = {fmt(res.min_correlation)}, "
                         f"loss {fmt_db(res.min_correlation ** 2 / n)} dB")
    return "\n".join(lines) + "\n"


def average_report(cfg: ExperimentConfig, theta_deg: float, threads: int = 1) -> str:
    theta = math.radians(theta_deg)
    b, n = cfg.bounds, cfg.n_antennas
    theory = cf.average_snr_loss(b, theta, n).linear
    est = estimate_average_loss(b, n, theta, cfg.mc_samples, cfg.seed, threads)
    z = (est.mean_linear - theory) / est.std_error if est.std_error > 0 else 0.0
    return (
        f"N = {n}, theta = {fmt(theta_deg)} deg\n"
        f"average SNR loss (closed form): {fmt(theory)} (linear), {fmt_db(theory)} dB\n"
        f"Monte Carlo ({est.n_samples} samples, seed {est.seed}): {fmt(est.mean_linear)} "
        f"+/- {fmt(est.std_error)} (linear), {fmt_db(est.mean_linear)} dB, z = {z:+.3f}\n"
    )

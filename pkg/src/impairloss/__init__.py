"""Beamforming SNR loss of a uniform linear array under per-antenna hardware impairments."""

from .array_model import (
    ArrayGeometry,
    DirectionOfDeparture,
    nominal_positions,
    nominal_steering,
    perturbed_response,
)
from .closed_form import (
    LossValue,
    average_snr_loss,
    correlation_magnitude,
    nominal_snr,
    per_realization_snr_loss,
    sinc,
    worst_case_snr_loss,
)
from .estimators import MonteCarloEstimate, convergence_scan, estimate_average_loss
from .impairments import (
    ImpairmentBounds,
    ImpairmentRealization,
    balanced_patterns,
    sample_realization,
    validate_bounds,
    worst_case_realization,
)
from .search import (
    PsoConfig,
    SearchResult,
    enumerate_corner_minimum,
    pso_minimize,
    random_interior_probe,
)
from .streams import RandomStream

__version__ = "0.1.0"

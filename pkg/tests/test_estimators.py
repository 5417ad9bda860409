import math

import numpy as np
import pytest

from impairloss import ImpairmentBounds, average_snr_loss, convergence_scan, estimate_average_loss


def test_no_impairment_is_exact():
    est = estimate_average_loss(ImpairmentBounds(), 8, 0.4, 1000, seed=99)
    assert est.mean_linear == 1.0
    assert est.std_error == 0.0
    assert est.n_samples == 1000 and est.seed == 99


def test_matches_closed_form(reference_bounds):
    est = estimate_average_loss(reference_bounds, 16, 0.0, 20000, seed=1)
    assert abs(est.mean_linear - average_snr_loss(reference_bounds, 0.0, 16).linear) < 3 * est.std_error


def test_thread_count_does_not_change_bits(reference_bounds):
    one = estimate_average_loss(reference_bounds, 16, 0.3, 20000, seed=5, threads=1)
    eight = estimate_average_loss(reference_bounds, 16, 0.3, 20000, seed=5, threads=8)
    assert one == eight


def test_std_error_definition(reference_bounds):
    from impairloss.estimators import sample_losses
    from impairloss.streams import RandomStream

    losses = sample_losses(reference_bounds, 4, 0.2, 0, 500, RandomStream(2))
    est = estimate_average_loss(reference_bounds, 4, 0.2, 500, seed=2)
    assert est.mean_linear == pytest.approx(losses.mean(), abs=1e-15)
    assert est.std_error == pytest.approx(losses.std(ddof=1) / math.sqrt(500), rel=1e-12)


@pytest.mark.parametrize("m", [0, 1])
def test_rejects_small_sample(reference_bounds, m):
    with pytest.raises(ValueError):
        estimate_average_loss(reference_bounds, 4, 0.0, m)


def test_rejects_bad_bounds():
    with pytest.raises(ValueError):
        estimate_average_loss(ImpairmentBounds(0.1, 0.2, 0.2), 4, 0.0, 100)


def test_convergence_scan_scaling(reference_bounds):
    small, big = convergence_scan(reference_bounds, 16, 0.0, [100, 10000], seed=3)
    assert 5.0 <= small.std_error / big.std_error <= 15.0


def test_convergence_scan_first_count_matches_estimate(reference_bounds):
    (scan,) = convergence_scan(reference_bounds, 16, 0.0, [20000], seed=4)
    assert scan == estimate_average_loss(reference_bounds, 16, 0.0, 20000, seed=4)


def test_convergence_scan_no_impairment():
    for est in convergence_scan(ImpairmentBounds(), 6, 0.0, [10, 100, 1000], seed=0):
        assert est.mean_linear == 1.0


@pytest.mark.parametrize("counts", [[], [100, 50], [1, 10]])
def test_convergence_scan_rejects(reference_bounds, counts):
    with pytest.raises(ValueError):
        convergence_scan(reference_bounds, 4, 0.0, counts)


def test_std_error_scales_over_two_decades(reference_bounds):
    scans = convergence_scan(reference_bounds, 16, 0.5, [200, 2000, 20000], seed=8)
    for a, b in zip(scans, scans[1:]):
        ratio = a.std_error / b.std_error
        assert math.sqrt(10) / 2 <= ratio <= 2 * math.sqrt(10)


@pytest.mark.slow
def test_statistical_acceptance_over_seeds(reference_bounds):
    theory = average_snr_loss(reference_bounds, 0.7, 16).linear
    inside = 0
    for seed in range(100):
        est = estimate_average_loss(reference_bounds, 16, 0.7, 5000, seed)
        inside += abs(est.mean_linear - theory) < 4 * est.std_error
    assert inside >= 99

import math

import numpy as np
import pytest

from jchmf import bath
from jchmf.errors import BadDiscretization, WindowTooShort


@pytest.fixture(scope="module")
def reference_run():
    spec = bath.make_bath(0.01, 2001, 1.0)
    series = bath.propagate_survival(spec, 400.0, 801)
    return spec, series


def test_make_bath_golden_rule_inversion():
    spec = bath.make_bath(0.01, 2001, 1.0, omega_c=1000.0)
    assert spec.spacing == 1e-3
    # |eta| = sqrt(gamma * spacing / pi)
    assert abs(spec.coupling - math.sqrt(0.01 * 1e-3 / math.pi)) < 1e-18
    assert abs(spec.coupling - 1.7841241161527712e-3) < 1e-12
    assert abs(spec.gamma_target - 0.01) < 1e-16
    assert abs(spec.recurrence_time - 2.0 * math.pi / 1e-3) < 1e-9
    freqs = spec.mode_frequencies()
    assert freqs[spec.n_modes // 2] == 1000.0
    assert spec.omega_min == 999.0 and spec.omega_max == 1001.0


def test_make_bath_coupling_scales_with_rate():
    narrow = bath.make_bath(0.0025, 2001, 1.0)
    wide = bath.make_bath(0.01, 2001, 1.0)
    assert abs(narrow.coupling / wide.coupling - 0.5) < 1e-12


def test_make_bath_rejects_bad_grids():
    with pytest.raises(BadDiscretization):
        bath.make_bath(0.01, 101, 0.02)  # band narrower than 20 linewidths
    with pytest.raises(BadDiscretization):
        bath.make_bath(0.01, 100, 1.0)  # even mode count
    with pytest.raises(BadDiscretization):
        bath.make_bath(0.01, 99, 1.0)  # too few modes
    with pytest.raises(BadDiscretization):
        bath.make_bath(1.0, 101, 35.0)  # recurrence before 5 decay times
    with pytest.raises(ValueError):
        bath.make_bath(0.0, 2001, 1.0)


def test_propagate_initial_condition(reference_run):
    _, series = reference_run
    assert abs(abs(series.amplitude[0]) - 1.0) < 1e-12
    assert series.times[0] == 0.0


def test_propagate_decoupled_bath_is_stationary():
    spec = bath.BathSpec(n_modes=201, omega_min=999.0, omega_max=1001.0,
                         coupling=0.0, omega_c=1000.0)
    series = bath.propagate_survival(spec, 300.0, 121)
    assert np.max(np.abs(np.abs(series.amplitude) - 1.0)) < 1e-12


def test_propagate_respects_recurrence_window():
    spec = bath.make_bath(0.05, 201, 1.0)
    with pytest.raises(BadDiscretization):
        bath.propagate_survival(spec, 0.6 * spec.recurrence_time, 41)
    with pytest.raises(ValueError):
        bath.propagate_survival(spec, 10.0, 1)


def test_propagate_norm_conserved(reference_run):
    _, series = reference_run
    assert float(np.max(np.abs(series.norm - 1.0))) < 1e-10


def test_propagate_matches_exponential_law(reference_run):
    _, series = reference_run
    idx = int(np.argmin(np.abs(series.times - 100.0)))
    assert series.times[idx] == 100.0
    survival = abs(series.amplitude[idx])**2
    assert abs(survival - math.exp(-2.0)) < 0.05 * math.exp(-2.0)


def test_propagate_magnitude_non_increasing(reference_run):
    _, series = reference_run
    magnitudes = np.abs(series.amplitude)
    assert float(np.max(np.diff(magnitudes))) < 1e-6


def test_fit_recovers_target_rate(reference_run):
    _, series = reference_run
    gamma_fit = bath.fit_decay_rate(series)
    assert abs(gamma_fit - 0.01) / 0.01 < 0.05


def test_fit_window_excludes_quadratic_region(reference_run):
    # short times decay quadratically, sitting above the pure exponential law
    _, series = reference_run
    gamma_fit = bath.fit_decay_rate(series)
    t = series.times
    log_p = np.log(np.abs(series.amplitude)**2)
    early = (t > 0.0) & (t <= 2.0)
    assert np.all(log_p[early] > -2.0 * gamma_fit * t[early])


def test_discretization_error_shrinks_with_mode_count():
    # the continuum limit at this fixed band carries a small rate
    # renormalization ~2*gamma/(pi*W); measure convergence toward it
    fits = {}
    for n in (501, 2001, 3001):
        spec = bath.make_bath(0.01, n, 1.0)
        fits[n] = bath.fit_decay_rate(bath.propagate_survival(spec, 400.0, 801))
    reference = fits[3001]
    assert abs(fits[501] - reference) > abs(fits[2001] - reference)
    for value in fits.values():
        assert abs(value - 0.01) / 0.01 < 0.01


def test_fit_exact_exponential_input():
    times = np.linspace(0.0, 400.0, 801)
    series = bath.SurvivalSeries(times=times,
                                 amplitude=np.exp(-0.01 * times).astype(complex),
                                 norm=np.ones_like(times))
    assert abs(bath.fit_decay_rate(series) - 0.01) < 1e-12


def test_fit_rejects_flat_series():
    times = np.linspace(0.0, 400.0, 401)
    series = bath.SurvivalSeries(times=times,
                                 amplitude=np.ones_like(times, dtype=complex),
                                 norm=np.ones_like(times))
    with pytest.raises(WindowTooShort):
        bath.fit_decay_rate(series)


def test_fit_rejects_short_series():
    times = np.linspace(0.0, 100.0, 201)  # only one decay time of 0.01
    series = bath.SurvivalSeries(times=times,
                                 amplitude=np.exp(-0.01 * times).astype(complex),
                                 norm=np.ones_like(times))
    with pytest.raises(WindowTooShort):
        bath.fit_decay_rate(series)


def test_series_requires_increasing_times():
    with pytest.raises(ValueError):
        bath.SurvivalSeries(times=np.array([0.0, 2.0, 1.0]),
                            amplitude=np.ones(3, dtype=complex),
                            norm=np.ones(3))

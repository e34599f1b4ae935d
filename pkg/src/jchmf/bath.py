"""Microscopic check that a lossy cavity mode decays at the golden-rule rate.

A single cavity mode is coupled linearly and uniformly to a flat band of
discretized bath modes. Exact eigen-propagation of the single-excitation
sector yields the survival amplitude of the bare cavity excitation; a
least-squares fit of its decay recovers the target rate.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import numerics
from .errors import BadDiscretization, WindowTooShort


@dataclass(frozen=True)
class BathSpec:
    """Flat discretized bath: uniform mode grid and uniform coupling.

    The golden-rule decay rate is pi*coupling^2/spacing; the finite grid
    revives the excitation after the recurrence time 2*pi/spacing, so any
    fit window must end before half of it.
    """

    n_modes: int
    omega_min: float
    omega_max: float
    coupling: float
    omega_c: float

    def __post_init__(self) -> None:
        if self.n_modes < 3:
            raise ValueError("n_modes must be at least 3")
        if not self.omega_min < self.omega_c < self.omega_max:
            raise ValueError("omega_c must lie inside the band")
        if self.coupling < 0.0:
            raise ValueError("coupling must be non-negative")

    @property
    def spacing(self) -> float:
        return (self.omega_max - self.omega_min) / (self.n_modes - 1)

    @property
    def gamma_target(self) -> float:
        return math.pi * self.coupling**2 / self.spacing

    @property
    def recurrence_time(self) -> float:
        return 2.0 * math.pi / self.spacing

    def mode_frequencies(self) -> np.ndarray:
        return np.linspace(self.omega_min, self.omega_max, self.n_modes)


def make_bath(gamma_target: float, n_modes: int, half_bandwidth: float,
              omega_c: float = 1000.0) -> BathSpec:
    """Bath spec whose golden-rule rate equals gamma_target.

    Args:
        gamma_target: wanted decay rate (> 0).
        n_modes: odd mode count >= 101, gridded symmetrically about omega_c.
        half_bandwidth: half width of the flat band, at least 20*gamma_target.
        omega_c: system mode frequency.

    Raises:
        BadDiscretization: grid too coarse, too narrow, or recurrence too
            early (half recurrence time below 5 decay times).
    """
    if gamma_target <= 0.0:
        raise ValueError("gamma_target must be positive")
    if n_modes < 101 or n_modes % 2 == 0:
        raise BadDiscretization("need an odd mode count of at least 101")
    if half_bandwidth < 20.0 * gamma_target:
        raise BadDiscretization("band must span at least 20 target linewidths")
    spacing = 2.0 * half_bandwidth / (n_modes - 1)
    if math.pi / spacing < 5.0 / gamma_target:
        raise BadDiscretization("half recurrence time below 5 decay times")
    coupling = math.sqrt(gamma_target * spacing / math.pi)
    return BathSpec(n_modes=n_modes, omega_min=omega_c - half_bandwidth,
                    omega_max=omega_c + half_bandwidth, coupling=coupling,
                    omega_c=omega_c)


@dataclass(frozen=True)
class SurvivalSeries:
    """Sampled survival amplitude of the bare cavity excitation.

    norm tracks the total single-excitation norm per sample (exactly 1 for
    closed-system propagation, up to eigensolver orthogonality error).
    """

    times: np.ndarray
    amplitude: np.ndarray
    norm: np.ndarray

    def __post_init__(self) -> None:
        if len(self.times) != len(self.amplitude) or len(self.times) != len(self.norm):
            raise ValueError("times, amplitude, and norm must align")
        if len(self.times) >= 2 and not np.all(np.diff(self.times) > 0):
            raise ValueError("times must be strictly increasing")


def propagate_survival(spec: BathSpec, t_end: float,
                       n_samples: int = 801) -> SurvivalSeries:
    """Exact survival amplitude e_c(t) on a uniform grid [0, t_end].

    Diagonalizes the (n_modes+1)-dimensional real-symmetric
    single-excitation matrix once; the initial state is the bare cavity
    excitation. t_end must stay below half the recurrence time.
    """
    if n_samples < 2:
        raise ValueError("need at least 2 samples")
    if t_end <= 0.0:
        raise ValueError("t_end must be positive")
    if t_end > 0.5 * spec.recurrence_time:
        raise BadDiscretization("t_end runs into the finite-size recurrence")
    dim = spec.n_modes + 1
    h = np.zeros((dim, dim))
    h[0, 0] = spec.omega_c
    h[0, 1:] = spec.coupling
    h[1:, 0] = spec.coupling
    h[np.arange(1, dim), np.arange(1, dim)] = spec.mode_frequencies()
    eig = numerics.eig_symmetric(h)
    overlaps = eig.vectors[0, :]

    times = np.linspace(0.0, t_end, n_samples)
    phases = np.exp(-1j * np.outer(eig.values, times))
    site_amps = eig.vectors @ (overlaps[:, None] * phases)
    amplitude = site_amps[0, :].copy()
    norm = np.linalg.norm(site_amps, axis=0)
    return SurvivalSeries(times=times, amplitude=amplitude, norm=norm)


def fit_decay_rate(series: SurvivalSeries) -> float:
    """Decay rate from a linear fit of ln|e_c|^2 over [0.5, 3] decay times.

    A first whole-series fit estimates the rate; the final fit window skips
    the quadratic short-time region and must be fully covered by the
    series, else WindowTooShort.
    """
    t = np.asarray(series.times, dtype=float)
    log_p = np.log(np.clip(np.abs(series.amplitude)**2, 1e-300, None))
    slope_est = np.polyfit(t, log_p, 1)[0]
    gamma_est = -0.5 * float(slope_est)
    if gamma_est <= 0.0:
        raise WindowTooShort("series shows no measurable decay")
    if t[-1] < 3.0 / gamma_est:
        raise WindowTooShort("series must span 3 decay times of the estimate")
    mask = (t >= 0.5 / gamma_est) & (t <= 3.0 / gamma_est)
    if int(mask.sum()) < 2:
        raise WindowTooShort("fit window holds fewer than 2 samples")
    slope = np.polyfit(t[mask], log_p[mask], 1)[0]
    return -0.5 * float(slope)

"""Numerical single-site mean-field oracle and the fluctuation models.

Builds the decoupled site Hamiltonian on a truncated photon ladder and
iterates the order parameter to self-consistency. The solver runs in the
lossless limit only; dissipative numbers come from the perturbative engine.
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from . import numerics, perturbation
from .errors import (BracketInvalid, DissipativeNotSupported, NotConverged,
                     NotNormalized)
from .model import ModelParams, mott_lobe_interval, _require_resonant

SiteState = np.ndarray


@dataclass(frozen=True)
class TruncatedBasis:
    """Product basis (photon number 0..n_max) x (atom g/e), photon-major."""

    n_max: int

    def __post_init__(self) -> None:
        if self.n_max < 2:
            raise ValueError("n_max must be at least 2")

    @property
    def dimension(self) -> int:
        return 2 * (self.n_max + 1)

    @property
    def states(self) -> tuple[tuple[int, str], ...]:
        return tuple((n, s) for n in range(self.n_max + 1) for s in ("g", "e"))

    def index(self, n_photons: int, atom: str) -> int:
        return 2 * n_photons + (0 if atom == "g" else 1)


def photon_lowering(basis: TruncatedBasis) -> np.ndarray:
    """Photon annihilation operator on the truncated product basis."""
    dim = basis.dimension
    op = np.zeros((dim, dim))
    for n in range(1, basis.n_max + 1):
        for atom in ("g", "e"):
            op[basis.index(n - 1, atom), basis.index(n, atom)] = math.sqrt(n)
    return op


def excitation_number(basis: TruncatedBasis) -> np.ndarray:
    """Diagonal of the total (photon + atom) excitation number operator."""
    return np.array([n + (0 if s == "g" else 1) for n, s in basis.states],
                    dtype=float)


def build_mf_hamiltonian(params: ModelParams, psi: float,
                         basis: TruncatedBasis) -> np.ndarray:
    """Single-site mean-field Hamiltonian at order parameter psi.

    Atom-cavity block structure plus the decoupled hopping
    -zkappa*psi*(b + b^dag) and the constant zkappa*psi^2, minus mu times
    the excitation number. Lossless limit only.
    """
    if params.gamma > 0.0:
        raise DissipativeNotSupported("mean-field solver runs at gamma = 0")
    dim = basis.dimension
    h = np.zeros((dim, dim))
    mu = params.mu
    const = params.zkappa * psi * psi
    for n, atom in basis.states:
        i = basis.index(n, atom)
        excited = atom == "e"
        h[i, i] = (n * params.omega_c + (params.omega_a if excited else 0.0)
                   - mu * (n + excited) + const)
        if atom == "g" and n >= 1:
            j = basis.index(n - 1, "e")
            h[i, j] = h[j, i] = params.beta * math.sqrt(n)
        if n + 1 <= basis.n_max:
            j = basis.index(n + 1, atom)
            h[i, j] = h[j, i] = -params.zkappa * psi * math.sqrt(n + 1)
    return h


@dataclass(frozen=True)
class MeanFieldSolution:
    """Converged order parameter, ground energy, state, and diagnostics."""

    psi: float
    energy: float
    state: SiteState
    iterations: int
    converged: bool
    n_mean: float
    n_var: float


class _SiteSolver:
    """Cached pieces of H(psi) = H(0) - zkappa*psi*(b + b^dag) + zkappa*psi^2.

    The hot loop binds LAPACK eigh directly; the contract eigensolver in
    numerics backs the one-off spectra and the bath propagation.
    """

    def __init__(self, params: ModelParams, basis: TruncatedBasis) -> None:
        self.zkappa = params.zkappa
        self.h_zero = build_mf_hamiltonian(params, 0.0, basis)
        lowering = photon_lowering(basis)
        self.hop = lowering + lowering.T
        self.diag = np.arange(basis.dimension)

    def ground(self, psi: float) -> tuple[float, np.ndarray]:
        if psi == 0.0:
            h = self.h_zero
        else:
            h = self.h_zero - (self.zkappa * psi) * self.hop
            h[self.diag, self.diag] += self.zkappa * psi * psi
        values, vectors = np.linalg.eigh(h)
        return float(values[0]), vectors[:, 0]


def solve_self_consistent(params: ModelParams, basis: TruncatedBasis,
                          mixing: float = 0.5, psi0: float = 0.1,
                          tol: float = 1e-10,
                          max_iter: int = 10_000) -> MeanFieldSolution:
    """Fixed-point iteration psi <- (1-m)*psi + m*<b> with linear mixing.

    When the iterate and the psi = 0 branch disagree, the one with the
    lower ground energy wins; this keeps the classification robust where
    plain iteration critically slows near the transition.
    """
    if params.gamma > 0.0:
        raise DissipativeNotSupported("mean-field solver runs at gamma = 0")
    solver = _SiteSolver(params, basis)
    lowering = photon_lowering(basis)
    psi = psi0
    hit_tol = False
    iterations = max_iter
    for k in range(1, max_iter + 1):
        _, state = solver.ground(psi)
        b_expect = float(state @ (lowering @ state))
        psi_next = (1.0 - mixing) * psi + mixing * b_expect
        delta = abs(psi_next - psi)
        psi = psi_next
        if psi < 1e-12:
            psi = 0.0
            hit_tol = True
            iterations = k
            break
        if delta < tol:
            hit_tol = True
            iterations = k
            break

    energy_zero, state_zero = solver.ground(0.0)
    if psi > 1e-8:
        energy_it, state_it = solver.ground(psi)
        if energy_it < energy_zero:
            n_mean, n_var, _ = observables(state_it, basis)
            return MeanFieldSolution(psi=psi, energy=energy_it, state=state_it,
                                     iterations=iterations, converged=hit_tol,
                                     n_mean=n_mean, n_var=n_var)
    n_mean, n_var, _ = observables(state_zero, basis)
    return MeanFieldSolution(psi=0.0, energy=energy_zero, state=state_zero,
                             iterations=iterations, converged=True,
                             n_mean=n_mean, n_var=n_var)


def numeric_boundary(params: ModelParams, basis: TruncatedBasis,
                     bracket: tuple[float, float] = (1e-4, 0.4),
                     tol: float = 1e-5, psi_threshold: float = 1e-6,
                     max_iter: int = 3000) -> float:
    """Critical zkappa from bisection on the onset of psi > psi_threshold.

    Probe solves cap at max_iter and fall back on the energy tie-break;
    the cap moves the measured onset by well under the bisection tol.
    """
    if params.gamma > 0.0:
        raise DissipativeNotSupported("mean-field solver runs at gamma = 0")
    lo_mu, hi_mu = mott_lobe_interval(params)
    if not lo_mu < params.mu_tilde < hi_mu:
        raise BracketInvalid(f"mu_tilde {params.mu_tilde} outside the lobe")
    lo, hi = bracket
    if not 0.0 <= lo < hi:
        raise BracketInvalid("bracket must satisfy 0 <= lo < hi")

    def spreads(zkappa: float) -> MeanFieldSolution:
        return solve_self_consistent(replace(params, zkappa=zkappa), basis,
                                     max_iter=max_iter)

    sol_lo = spreads(lo)
    sol_hi = spreads(hi)
    if not sol_lo.converged or not sol_hi.converged:
        raise NotConverged("bracket endpoint solve did not converge")
    if sol_lo.psi > psi_threshold or sol_hi.psi <= psi_threshold:
        raise BracketInvalid("bracket does not straddle the onset")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if spreads(mid).psi > psi_threshold:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def observables(state: SiteState, basis: TruncatedBasis,
                norm_tol: float = 1e-8) -> tuple[float, float, complex]:
    """(n_mean, n_var, <b>) of a normalized state on the truncated basis."""
    vec = np.asarray(state)
    if vec.shape != (basis.dimension,):
        raise ValueError("state dimension does not match the basis")
    weights = np.abs(vec)**2
    if abs(float(weights.sum()) - 1.0) > norm_tol:
        raise NotNormalized("state norm deviates from 1")
    n_diag = excitation_number(basis)
    n_mean = float(weights @ n_diag)
    n_var = max(float(weights @ n_diag**2) - n_mean * n_mean, 0.0)
    b_expect = complex(np.conj(vec) @ (photon_lowering(basis) @ vec))
    return n_mean, n_var, b_expect


def leakage_fluctuation(params: ModelParams, t: float) -> float:
    """Site occupation spread from photon loss alone.

    Two-outcome model: the initial excitation survives with probability
    p = exp(-gamma*t), giving a Bernoulli spread sqrt(p*(1-p)). This is a
    modeling choice, not a closed-form result of the theory.
    """
    _require_resonant(params)
    if t < 0.0:
        raise ValueError("t must be non-negative")
    p = math.exp(-params.gamma * t)
    return math.sqrt(p * (1.0 - p))


def total_fluctuation(params: ModelParams, t: float) -> float:
    """Hopping and leakage occupation spreads combined in quadrature."""
    leak = leakage_fluctuation(params, t)
    _, hop_var = perturbation.perturbed_site_state(params, t).occupation_stats()
    if hop_var == 0.0:
        return leak
    return math.sqrt(hop_var + leak * leak)

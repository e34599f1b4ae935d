"""Closed-form dissipative mean-field theory of the delocalization transition.

Second-order perturbation theory around the singly-excited dressed site
state, on resonance and at unit filling. Loss enters three ways: the
order-parameter prefactor exp(-gamma*t), the decaying effective hopping
zkappa*exp(-2*gamma*t), and gamma^2 broadening of the channel denominators.
"""

import math
from dataclasses import dataclass, replace

from . import numerics
from .errors import NeverCritical, OutsideLobe, ZeroGamma, ZeroHopping
from .model import ModelParams, SQRT2, mott_lobe_interval, _require_resonant

# virtual channels from the singly-excited site state: photon loss to the
# emptied site |0> and photon gain to the doubly-excited dressed state
MEL_EMPTY = 1.0 / SQRT2          # <0| B |single>
MEL_DOUBLE = (1.0 + SQRT2) / 2.0  # <single| B |double>
W_EMPTY = MEL_EMPTY**2
W_DOUBLE = MEL_DOUBLE**2


def channel_gaps(params: ModelParams) -> tuple[float, float]:
    """Grand-canonical energy gaps to the two virtual channels.

    gap_empty = -(1 + mu_tilde)*beta, gap_double = (mu_tilde + sqrt2 - 1)*beta.
    Both are negative exactly on the localized lobe.
    """
    _require_resonant(params)
    gap_empty = -(1.0 + params.mu_tilde) * params.beta
    gap_double = (params.mu_tilde + SQRT2 - 1.0) * params.beta
    return gap_empty, gap_double


@dataclass(frozen=True)
class ChiParts:
    """Ingredients of the self-consistency function at one (params, t).

    chi < 0 means delocalized (finite order parameter); theta > 0 always.
    """

    gap_empty: float
    gap_double: float
    theta: float
    chi: float
    effective_hopping: float


def chi_theta(params: ModelParams, t: float = 0.0) -> ChiParts:
    """Evaluate the self-consistency function chi and the weight theta.

    Time enters only through the effective hopping zkappa*exp(-2*gamma*t).
    Raises ZeroHopping at zkappa = 0 where chi has a pole.
    """
    if t < 0.0:
        raise ValueError("t must be non-negative")
    if params.zkappa == 0.0:
        raise ZeroHopping("chi has a 1/zkappa pole; classify at zero hopping instead")
    g1, g2 = channel_gaps(params)
    gam = params.gamma
    d1 = g1 * g1 + gam * gam
    d2 = g2 * g2 + gam * gam
    theta = W_EMPTY / d1 + W_DOUBLE / d2
    zk_eff = params.zkappa * math.exp(-2.0 * gam * t)
    chi = W_EMPTY * g1 / d1 + W_DOUBLE * g2 / d2 + 1.0 / zk_eff
    return ChiParts(gap_empty=g1, gap_double=g2, theta=theta, chi=chi,
                    effective_hopping=zk_eff)


def classify(params: ModelParams, t: float = 0.0) -> str:
    """'superfluid' if chi < 0 at (params, t), else 'localized'."""
    if params.zkappa == 0.0:
        return "localized"
    return "superfluid" if chi_theta(params, t).chi < 0.0 else "localized"


def order_parameter(params: ModelParams, t: float = 0.0) -> float:
    """Order parameter psi(t) = exp(-gamma*t) * sqrt(-chi / (zkappa*theta)).

    Defined as exactly 0 wherever chi >= 0 (and at zero hopping), which
    makes psi total and continuous through the transition.
    """
    _require_resonant(params)
    if params.zkappa == 0.0:
        return 0.0
    parts = chi_theta(params, t)
    if parts.chi >= 0.0:
        return 0.0
    return math.exp(-params.gamma * t) * math.sqrt(
        -parts.chi / (params.zkappa * parts.theta))


def boundary_kappa(params: ModelParams, t: float = 0.0) -> float:
    """Critical scaled hopping zkappa_c at which chi changes sign.

    Closed form exp(2*gamma*t) / (-W_EMPTY*g1/d1 - W_DOUBLE*g2/d2); the
    params' own zkappa is ignored. Raises OutsideLobe off the lobe.
    """
    lo, hi = mott_lobe_interval(params)
    if not lo < params.mu_tilde < hi:
        raise OutsideLobe(f"mu_tilde {params.mu_tilde} outside ({lo}, {hi})")
    g1, g2 = channel_gaps(params)
    gam = params.gamma
    denom = -(W_EMPTY * g1 / (g1 * g1 + gam * gam)
              + W_DOUBLE * g2 / (g2 * g2 + gam * gam))
    if denom <= 0.0:
        raise OutsideLobe("boundary denominator is not positive")
    return math.exp(2.0 * gam * t) / denom


def lobe_tip(params: ModelParams, t: float = 0.0,
             tol: float = 1e-8) -> tuple[float, float]:
    """(mu_tilde_star, zkappa_star) maximizing boundary_kappa over the lobe.

    Golden-section search; unimodality (hence a global maximum) is
    guaranteed in the lossless case.
    """
    lo, hi = mott_lobe_interval(params)
    return numerics.maximize_scalar(
        lambda mu: boundary_kappa(replace(params, mu_tilde=mu), t),
        (lo, hi), tol=tol)


@dataclass(frozen=True)
class CriticalTime:
    """Exact chi(t)=0 root plus the logarithmic closed-form estimate.

    The estimate uses the lossless critical hopping and agrees with the
    root up to relative gamma^2/beta^2 corrections.
    """

    root: float
    estimate: float


def critical_time(params: ModelParams) -> CriticalTime:
    """Time at which a delocalized initial state crosses the boundary."""
    _require_resonant(params)
    if params.gamma <= 0.0:
        raise ZeroGamma("no sweep occurs without loss")
    if params.zkappa == 0.0 or chi_theta(params, 0.0).chi >= 0.0:
        raise NeverCritical("state is localized already at t = 0")
    ideal = boundary_kappa(replace(params, gamma_a=0.0, gamma_c=0.0), 0.0)
    estimate = math.log(params.zkappa / ideal) / (2.0 * params.gamma)

    def chi_at(t: float) -> float:
        return chi_theta(params, t).chi

    t_hi = max(estimate, 1.0 / params.gamma)
    for _ in range(200):
        if chi_at(t_hi) > 0.0:
            break
        t_hi *= 2.0
    root = numerics.find_root(chi_at, (0.0, t_hi), tol=1e-8 / params.gamma)
    return CriticalTime(root=root, estimate=estimate)


@dataclass(frozen=True)
class PerturbedState:
    """Unnormalized site state over {empty, single, double} dressed levels.

    amp_single is fixed at 1; the damped-basis expectation of the lowering
    mode is evaluated with the transpose pairing (no conjugation), to first
    order in the small amplitudes.
    """

    amp_empty: complex
    amp_single: complex
    amp_double: complex
    mel_empty: float = MEL_EMPTY
    mel_double: float = MEL_DOUBLE

    @property
    def norm_sq(self) -> float:
        return (abs(self.amp_single)**2 + abs(self.amp_empty)**2
                + abs(self.amp_double)**2)

    def b_expect(self) -> complex:
        """First-order lowering-mode expectation in the damped basis.

        Real part reproduces the self-consistency value (= psi exactly on
        the chi = 0 surface); imaginary part is the loss-induced component
        zkappa_eff * gamma * theta * psi.
        """
        return self.amp_empty * self.mel_empty + self.amp_double * self.mel_double

    def occupation_stats(self) -> tuple[float, float]:
        """(mean, variance) of the excitation number of the normalized state."""
        n2 = self.norm_sq
        p_single = abs(self.amp_single)**2 / n2
        p_double = abs(self.amp_double)**2 / n2
        mean = p_single + 2.0 * p_double
        second = p_single + 4.0 * p_double
        return mean, max(second - mean * mean, 0.0)


def perturbed_site_state(params: ModelParams, t: float = 0.0) -> PerturbedState:
    """Second-order perturbed site state at time t.

    On the localized side (psi = 0) the state is the pure singly-excited
    level. The channel amplitudes carry the complex denominators
    -gap - i*gamma of the damped basis.
    """
    psi = order_parameter(params, t)
    if psi == 0.0:
        return PerturbedState(amp_empty=0j, amp_single=1.0 + 0j, amp_double=0j)
    g1, g2 = channel_gaps(params)
    gam = params.gamma
    zk_eff = params.zkappa * math.exp(-2.0 * gam * t)
    amp_empty = zk_eff * psi * MEL_EMPTY / (-g1 - 1j * gam)
    amp_double = zk_eff * psi * MEL_DOUBLE / (-g2 - 1j * gam)
    return PerturbedState(amp_empty=amp_empty, amp_single=1.0 + 0j,
                          amp_double=amp_double)

"""Physical parameters and the analytic single-site atom-cavity structure.

Internal unit system: the atom-cavity coupling beta is the energy unit
(beta = 1 by default), and the chemical potential is carried as the scaled
offset mu_tilde = (mu - omega_c) / beta.
"""

import math
from dataclasses import dataclass

from . import numerics
from .errors import NonzeroDetuning

SQRT2 = math.sqrt(2.0)

# commutator defect gamma_c/omega_c at or below this is "high-Q": the
# lowering mode is approximately bosonic
HIGH_Q_DEFECT = 1e-3


@dataclass(frozen=True)
class ModelParams:
    """All rates of the lossy cavity array, in units of the coupling beta.

    omega_a defaults to omega_c (resonant cavity). zkappa is the scaled
    total nearest-neighbor hopping z*kappa/beta.
    """

    omega_c: float = 1000.0
    omega_a: float | None = None
    beta: float = 1.0
    gamma_a: float = 0.0
    gamma_c: float = 0.0
    mu_tilde: float = -0.5
    z: int = 4
    zkappa: float = 0.0

    def __post_init__(self) -> None:
        if self.omega_a is None:
            object.__setattr__(self, "omega_a", self.omega_c)
        if self.omega_c <= 0.0:
            raise ValueError("omega_c must be positive")
        if self.beta <= 0.0:
            raise ValueError("beta must be positive")
        if self.gamma_a < 0.0 or self.gamma_c < 0.0:
            raise ValueError("decay rates must be non-negative")
        if self.zkappa < 0.0:
            raise ValueError("zkappa must be non-negative")
        if self.z < 1:
            raise ValueError("z must be at least 1")

    @classmethod
    def from_mu(cls, mu: float, **kwargs) -> "ModelParams":
        """Build from a raw chemical potential instead of mu_tilde."""
        omega_c = kwargs.pop("omega_c", 1000.0)
        beta = kwargs.get("beta", 1.0)
        return cls(omega_c=omega_c, mu_tilde=(mu - omega_c) / beta, **kwargs)

    @property
    def delta(self) -> float:
        """Detuning omega_c - omega_a."""
        return self.omega_c - self.omega_a

    @property
    def gamma(self) -> float:
        """Total single-excitation decay rate gamma_a + gamma_c."""
        return self.gamma_a + self.gamma_c

    @property
    def mu(self) -> float:
        """Raw chemical potential omega_c + mu_tilde * beta."""
        return self.omega_c + self.mu_tilde * self.beta

    @property
    def kappa(self) -> float:
        return self.zkappa / self.z


@dataclass(frozen=True)
class DressedLevel:
    """One dressed level: branch sign, excitation number, complex energy.

    -imag(energy) is the amplitude decay rate of the level.
    """

    branch: int
    n: int
    energy: complex


def _require_resonant(params: ModelParams) -> None:
    if params.delta != 0.0:
        raise NonzeroDetuning(f"requires delta = 0, got {params.delta}")


def jc_energy(params: ModelParams, n: int, branch: int = -1) -> float:
    """Lossless dressed-level energy for n excitations on one site.

    n = 0 is the supplemented ground state with energy 0 (branch ignored).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return 0.0
    if branch not in (-1, 1):
        raise ValueError("branch must be +1 or -1")
    half_delta = 0.5 * params.delta
    split = math.sqrt(n * params.beta**2 + half_delta**2)
    return n * params.omega_c + branch * split - half_delta


def total_decay(params: ModelParams, n: int) -> float:
    """Total decay rate n*(gamma_a + gamma_c) of the n-excitation manifold.

    Only defined on resonance.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    _require_resonant(params)
    return n * (params.gamma_a + params.gamma_c)


def complex_dressed_spectrum(params: ModelParams, n: int) -> tuple[DressedLevel, DressedLevel]:
    """Both complex eigenvalues of the lossy n-excitation block.

    The block spans {|n photons, atom g>, |n-1 photons, atom e>} with the
    complex mode frequencies omega_c - i*gamma_c and omega_a - i*gamma_a
    on the diagonal and the real coupling sqrt(n)*beta off it. Returned
    (minus, plus) ascending by real part; reduces to jc_energy when lossless.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    omega_cav = params.omega_c - 1j * params.gamma_c
    omega_atom = params.omega_a - 1j * params.gamma_a
    coupling = math.sqrt(n) * params.beta
    block = [[n * omega_cav, coupling],
             [coupling, (n - 1) * omega_cav + omega_atom]]
    result = numerics.eig_complex(block)
    low, high = result.values[0], result.values[1]
    return (DressedLevel(branch=-1, n=n, energy=complex(low)),
            DressedLevel(branch=+1, n=n, energy=complex(high)))


def commutator_defect(params: ModelParams) -> float:
    """Deviation gamma_c/omega_c of the lowering mode from bosonic commutation."""
    return params.gamma_c / params.omega_c


def mott_lobe_interval(params: ModelParams) -> tuple[float, float]:
    """Open mu_tilde interval of the unit-filling localized lobe at zero loss."""
    _require_resonant(params)
    return (-1.0, 1.0 - SQRT2)

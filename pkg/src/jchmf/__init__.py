"""Superfluid-Mott crossover of lossy coupled atom-cavity arrays.

Closed-form dissipative mean-field theory (order parameter, boundary,
critical time), an independent numerical self-consistency oracle, and a
microscopic discretized-bath validation of the lossy-mode reduction.
"""

from . import errors
from .bath import BathSpec, SurvivalSeries, fit_decay_rate, make_bath, propagate_survival
from .gutzwiller import (MeanFieldSolution, TruncatedBasis,
                         build_mf_hamiltonian, leakage_fluctuation,
                         numeric_boundary, observables, solve_self_consistent,
                         total_fluctuation)
from .model import (DressedLevel, ModelParams, commutator_defect,
                    complex_dressed_spectrum, jc_energy, mott_lobe_interval,
                    total_decay)
from .numerics import EigenResult, eig_complex, eig_symmetric, find_root, maximize_scalar
from .perturbation import (ChiParts, CriticalTime, PerturbedState,
                           boundary_kappa, channel_gaps, chi_theta, classify,
                           critical_time, lobe_tip, order_parameter,
                           perturbed_site_state)
from .sweep import RunConfig, SeriesTable, write_csv

__version__ = "0.1.0"

"""Dense eigensolvers, bracketed root finding, and bounded scalar maximization.

Every kernel is deterministic: identical inputs give bit-identical outputs.
The eigensolvers record a residual and enforce the contract
max ||A v - lambda v|| <= 1e-10 ||A|| for dimensions up to 64.
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.linalg
import scipy.optimize

from .errors import BracketInvalid, NoConvergence, NotSymmetric

SYMMETRY_RTOL = 1e-12
RESIDUAL_CONTRACT = 1e-10
CONTRACT_DIM = 64

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_INVPHI2 = (3.0 - math.sqrt(5.0)) / 2.0


@dataclass(frozen=True)
class EigenResult:
    """Eigenpairs plus the worst relative residual max ||A v - lambda v||."""

    values: np.ndarray
    vectors: np.ndarray
    max_residual: float


def _residual(matrix: np.ndarray, values: np.ndarray, vectors: np.ndarray) -> float:
    dim = matrix.shape[0]
    if dim <= 256:
        cols = np.arange(dim)
    else:
        # sampled columns keep the check O(dim^2) for large propagation matrices
        cols = np.unique(np.linspace(0, dim - 1, 64).astype(int))
    defect = matrix @ vectors[:, cols] - vectors[:, cols] * values[cols]
    norms = np.linalg.norm(vectors[:, cols], axis=0)
    return float(np.max(np.linalg.norm(defect, axis=0) / norms))


def eig_symmetric(matrix: np.ndarray) -> EigenResult:
    """All eigenpairs of a real symmetric matrix, values ascending.

    Raises NotSymmetric if the input deviates from its transpose by more
    than 1e-12 relative, NoConvergence if the residual contract is violated
    (enforced for dimensions <= 64).
    """
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    dim = a.shape[0]
    if dim > 4096:
        raise ValueError("dimension above supported 4096")
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    if scale > 0.0 and float(np.max(np.abs(a - a.T))) > SYMMETRY_RTOL * scale:
        raise NotSymmetric("matrix is not symmetric to 1e-12 relative")
    values, vectors = scipy.linalg.eigh(a)
    res = _residual(a, values, vectors)
    norm = float(np.max(np.abs(values))) if dim else 0.0
    if dim <= CONTRACT_DIM and norm > 0.0 and res > RESIDUAL_CONTRACT * norm:
        raise NoConvergence(f"residual {res:.3e} exceeds contract for dim {dim}")
    return EigenResult(values=values, vectors=vectors, max_residual=res)


def eig_complex(matrix: np.ndarray) -> EigenResult:
    """All eigenvalues and right eigenvectors of a dense complex matrix.

    Values are sorted by (real, imag) for determinism. Dimension is capped
    at 64; the residual contract is enforced.
    """
    a = np.asarray(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    if a.shape[0] > CONTRACT_DIM:
        raise ValueError("dimension above supported 64")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    try:
        values, vectors = np.linalg.eig(a)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    order = np.lexsort((values.imag, values.real))
    values = values[order]
    vectors = vectors[:, order]
    res = _residual(a, values, vectors)
    norm = float(np.linalg.norm(a, 2)) if a.size else 0.0
    if norm > 0.0 and res > RESIDUAL_CONTRACT * norm:
        raise NoConvergence(f"residual {res:.3e} exceeds contract")
    return EigenResult(values=values, vectors=vectors, max_residual=res)


def find_root(f: Callable[[float], float], bracket: tuple[float, float],
              tol: float = 1e-10) -> float:
    """Root of f inside a sign-changing bracket (bisection/secant hybrid)."""
    lo, hi = float(bracket[0]), float(bracket[1])
    if not lo < hi:
        raise BracketInvalid("bracket must satisfy lo < hi")
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise BracketInvalid("f has the same sign at both bracket ends")
    return float(scipy.optimize.brentq(f, lo, hi, xtol=tol, maxiter=200))


def maximize_scalar(f: Callable[[float], float], interval: tuple[float, float],
                    tol: float = 1e-8) -> tuple[float, float]:
    """Golden-section maximization of f on an interval, to tol in x.

    Returns (x_star, f(x_star)). Probes stay strictly inside the interval;
    the iteration schedule is fixed by tol, so results are deterministic.
    """
    a, b = float(interval[0]), float(interval[1])
    if not a < b:
        raise ValueError("interval must satisfy lo < hi")
    h = b - a
    if h > tol:
        n = int(math.ceil(math.log(tol / h) / math.log(_INVPHI)))
        c = a + _INVPHI2 * h
        d = a + _INVPHI * h
        yc = f(c)
        yd = f(d)
        for _ in range(n - 1):
            if yc > yd:
                b, d, yd = d, c, yc
                h = _INVPHI * h
                c = a + _INVPHI2 * h
                yc = f(c)
            else:
                a, c, yc = c, d, yd
                h = _INVPHI * h
                d = a + _INVPHI * h
                yd = f(d)
    x_star = 0.5 * (a + b)
    return x_star, f(x_star)

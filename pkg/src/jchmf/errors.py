"""Domain-specific exceptions shared across the package."""


class JchmfError(Exception):
    """Base class for all errors raised by this package."""


class NonzeroDetuning(JchmfError):
    """Operation is only defined for a cavity on resonance with the atom."""


class ZeroHopping(JchmfError):
    """The self-consistency function has a pole at zero hopping."""


class OutsideLobe(JchmfError):
    """Chemical potential lies outside the unit-filling localized lobe."""


class NeverCritical(JchmfError):
    """The system starts localized, so no sweep through criticality occurs."""


class ZeroGamma(JchmfError):
    """Lossless evolution never crosses the boundary; no critical time."""


class BadDiscretization(JchmfError):
    """Bath mode grid cannot resolve the requested decay."""


class WindowTooShort(JchmfError):
    """Time series does not cover the decay-fit window."""


class DissipativeNotSupported(JchmfError):
    """The numerical self-consistency solver runs in the lossless limit only."""


class NotConverged(JchmfError):
    """A required self-consistent solve did not converge."""


class BracketInvalid(JchmfError):
    """Root or onset bracket does not enclose a sign change."""


class NotNormalized(JchmfError):
    """State vector is not normalized."""


class NotSymmetric(JchmfError):
    """Matrix fails the symmetry check."""


class NoConvergence(JchmfError):
    """Eigenvalue iteration failed or violated its residual contract."""

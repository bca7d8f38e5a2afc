"""Exception types shared across the package."""


class NumericalFailure(Exception):
    """Base class for numerical failures (degeneracies, missing roots, poles)."""


class CycleInconsistency(NumericalFailure):
    """No reversibility measure exists: some cycle has inconsistent weight products."""


class NonSymmetrizable(NumericalFailure):
    """Operator is not symmetric under the measure-weighted similarity transform."""


class ConvergenceFailure(NumericalFailure):
    """Eigendecomposition failed its residual or orthonormality contract."""


class DegenerateLowStates(NumericalFailure):
    """Ground or first excited state is degenerate; overlap analysis is undefined."""


class PoleProximity(NumericalFailure):
    """Green function evaluated too close to a spectral pole."""


class EigenvalueOnSpectrum(NumericalFailure):
    """Hamiltonian eigenvalue coincides with the scaled Laplacian spectrum."""


class NoRootInRange(NumericalFailure):
    """No sign change of the target function inside the scanned coupling range."""


class NotAtGammaE(NumericalFailure):
    """Supplied coupling does not satisfy E0 = -E1 to the required accuracy."""


class ConfigError(Exception):
    """Invalid experiment configuration; the message names the offending key."""

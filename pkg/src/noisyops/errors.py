"""Exception types raised across the package."""


class NoisyOpsError(Exception):
    """Base class for all errors raised by :mod:`noisyops`."""


class DimensionMismatch(NoisyOpsError, ValueError):
    pass


class NotHermitian(NoisyOpsError, ValueError):
    pass


class NotUnitary(NoisyOpsError, ValueError):
    pass


class InvalidKraus(NoisyOpsError, ValueError):
    """Kraus operators violate trace preservation."""


class NotPSD(NoisyOpsError, ValueError):
    pass


class NotTracePreserving(NoisyOpsError, ValueError):
    pass


class NotUnital(NoisyOpsError, ValueError):
    pass


class NotCP(NoisyOpsError, ValueError):
    """Input is not completely positive (e.g. Pauli weights far below zero)."""


class NotRotation(NoisyOpsError, ValueError):
    pass


class KTooSmall(NoisyOpsError, ValueError):
    """Requested number of terms / environment dimension is below what is needed."""


class DegenerateWeights(NoisyOpsError, ValueError):
    pass


class InconsistentAlpha(NoisyOpsError, ValueError):
    pass


class NotMajorized(NoisyOpsError, ValueError):
    pass


class NonUniformWeights(NoisyOpsError, ValueError):
    pass


class ConvergenceFailure(NoisyOpsError, RuntimeError):
    """Internal iteration failed to reach its target; indicates a bug."""


class TheoremViolation(NoisyOpsError, AssertionError):
    """A numerically robust counterexample to a proven statement was observed."""


class ParseError(NoisyOpsError, ValueError):
    pass

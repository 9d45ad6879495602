"""Exception types shared across the package."""


class QsvtError(Exception):
    """Base class for package-specific failures."""


class ValidationError(QsvtError, ValueError):
    """An input violates a documented precondition."""


class DegenerateSpectrumError(ValidationError):
    """Adjacent singular values are too close to separate reliably."""


class FullyThresholdedError(QsvtError):
    """Every singular value sits at or below the threshold, or the
    post-selected outcome has vanishing probability."""


class ConvergenceError(QsvtError):
    """The Newton iteration failed to settle for one or more labels."""


class UncomputeResidualError(QsvtError):
    """Registers L/C retained probability mass after uncomputation,
    usually a config mismatch between the forward and reverse passes."""


class NormalizationError(QsvtError):
    """A state drifted off unit norm; internal numerical guard."""

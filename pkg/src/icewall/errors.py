"""Shared exception and warning types."""


class SingularParameterError(ValueError):
    """Parameters sit on (or too close to) a zero of a required sine factor."""


class SizeLimitError(ValueError):
    """Requested lattice size exceeds what the chosen method can handle."""


class BranchError(ValueError):
    """A principal-branch function was evaluated where the branch is ambiguous."""


class PrecisionWarning(UserWarning):
    """The determinant condition estimate ate more than half the mantissa."""


class ConvergenceWarning(UserWarning):
    """A quadrature/truncation tail estimate exceeds the requested tolerance."""

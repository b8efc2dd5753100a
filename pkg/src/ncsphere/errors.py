"""Shared exception types."""


class NCSphereError(Exception):
    """Base class for all package errors."""


class ConfigurationError(NCSphereError):
    """Invalid numerical configuration (cutoffs, grids, tolerances)."""


class DegenerateModulusError(NCSphereError):
    """Modular parameter at a branch point (lambda in {0, 1, inf})."""


class NumericError(NCSphereError):
    """Iteration failed to converge; carries diagnostics in args."""


class PoleError(NCSphereError):
    """Evaluation at (or too close to) a pole of the expression."""


class DegenerateError(NCSphereError):
    """Geometric input outside the locus where the construction is defined."""


class RegimeError(NCSphereError):
    """Parameters outside the real even regime required by the operation."""


class UsageError(NCSphereError):
    """Inconsistent arguments (role mismatch, malformed input)."""


class ClassificationError(NCSphereError):
    """Moduli point falls in a stratum the operation does not support."""


class PreconditionError(NCSphereError):
    """Input violates a stated precondition (point off its locus)."""

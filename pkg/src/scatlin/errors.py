"""Exception types shared across the package."""


class ScatlinError(Exception):
    """Base class for all library errors."""


class ParameterError(ScatlinError):
    """An argument violates a documented precondition."""


class ModulusError(ScatlinError):
    """A field modulus override is reducible or has the wrong degree."""


class FeasibilityError(ScatlinError):
    """The requested exhaustive computation is too large for this field size."""


class DegenerateInputError(ScatlinError):
    """A rational formula was evaluated at a point where its denominator vanishes."""

"""Exception types shared across the library."""


class NumericalError(RuntimeError):
    """A numerical procedure failed to meet its advertised tolerance."""


class QuadratureError(NumericalError):
    """Quadrature did not converge or could not certify its error."""


class BracketingError(NumericalError):
    """A root search found no sign change in the scanned window."""

    def __init__(self, message, window=None):
        super().__init__(message)
        self.window = window


class ExtrapolationError(NumericalError):
    """Richardson extrapolation did not settle.

    The attempted diagonal sequence is attached for diagnosis.
    """

    def __init__(self, message, sequence=None):
        super().__init__(message)
        self.sequence = list(sequence) if sequence is not None else []

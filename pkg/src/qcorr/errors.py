"""Exception types shared across the package."""


class QcorrError(Exception):
    """Base class for all errors raised by qcorr."""


class InvalidArgumentError(QcorrError, ValueError):
    pass


class ResourceLimitError(QcorrError):
    """Requested size exceeds what exhaustive or dense routines support."""


class NormalizationError(QcorrError, ValueError):
    pass


class NotAStateError(QcorrError, ValueError):
    """A spectral value is negative beyond tolerance.

    The offending 2n-bit index and the eigenvalue are kept on the instance.
    """

    def __init__(self, index: int, value: float, nbits: int):
        self.index = index
        self.value = value
        self.bits = format(index, f"0{nbits}b")
        super().__init__(f"positivity violated: negative eigenvalue {value:.3e} at index {self.bits}")


class InfiniteDivergenceError(QcorrError, ArithmeticError):
    """Relative entropy is +inf because the support condition fails."""


class SingularMapError(QcorrError, ArithmeticError):
    pass


class DomainError(QcorrError, ValueError):
    pass


class PreconditionError(QcorrError, ValueError):
    pass


class UnboundedFamilyError(QcorrError, ValueError):
    pass


class SamplingError(QcorrError, RuntimeError):
    pass


class InvariantError(QcorrError, AssertionError):
    """An internal cross-check between two computation routes failed."""

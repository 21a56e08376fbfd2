"""Exception types shared across the package."""


class QGreedyError(Exception):
    """Base class for all toolkit errors."""


class InvalidVectorError(QGreedyError, ValueError):
    """Coefficient array rejected: wrong shape or non-finite entries."""


class DimensionMismatchError(QGreedyError, ValueError):
    """Vector length does not match the ambient dimension."""


class InvalidExponentError(QGreedyError, ValueError):
    """Gauge exponent outside its admissible range."""


class InvalidWeightError(QGreedyError, ValueError):
    """Weight sequence rejected: non-positive entries or a primitive weight
    that is not strictly increasing."""


class NotABasisError(QGreedyError, ValueError):
    """Vector/dual system fails a basis invariant (biorthogonality,
    invertibility, or degenerate rows)."""


class BasisFileError(QGreedyError, ValueError):
    """Basis JSON file violates the expected schema."""


class CombinatorialOverflowError(QGreedyError, RuntimeError):
    """Exact enumeration would exceed the supported problem size."""


class PreconditionError(QGreedyError, ValueError):
    """Operation precondition violated (e.g. an unnormalized pair family)."""

"""Exception types raised across the package.

Kept in one module so callers can branch on failure class (the CLI maps
these onto its exit-code contract).
"""


class AstarNormError(Exception):
    """Base class for every error raised by astarnorm."""


class ParseError(AstarNormError):
    """Raised when a problem file or envelope does not match the documented schema."""


class NotHermitian(AstarNormError):
    """Input matrix is not Hermitian within the stated tolerance."""


class NoConvergence(AstarNormError):
    """An iterative kernel exceeded its iteration cap."""


class NotPsd(AstarNormError):
    """Matrix has an eigenvalue below the positive-semidefinite tolerance."""


class NotInvertible(AstarNormError):
    """Matrix has an eigenvalue at or below the invertibility threshold."""


class NotPositiveDefinite(AstarNormError):
    """Weight candidate is not positive and invertible."""


class DimensionMismatch(AstarNormError):
    """Operands do not share the weight's dimension."""


class NotUnitVector(AstarNormError):
    """Vector does not have Euclidean norm 1 within tolerance."""


class LambdaOutOfRange(AstarNormError):
    """The interpolation parameter must lie in [0, 1]."""


class NotAPositive(AstarNormError):
    """Operand is not a-positive, but the operation requires it."""


class NotParallel(AstarNormError):
    """Operation requires a parallel pair and the inputs are not parallel."""


class DimensionTooLarge(AstarNormError):
    """Brute-force oracles are capped at dimension 4."""


class ZeroDirection(AstarNormError):
    """Direction element has (a,lambda)-norm too close to zero."""

"""Exception hierarchy for qsvtlab."""


class QsvtLabError(Exception):
    """Base class for all qsvtlab errors."""


class NotSquare(QsvtLabError):
    """Operation requires a square matrix."""


class NotHermitian(QsvtLabError):
    """Matrix is not Hermitian within tolerance."""


class NotPSD(QsvtLabError):
    """Matrix has an eigenvalue below the allowed negative tolerance."""


class NotUnitary(QsvtLabError):
    """Matrix is not unitary within tolerance."""


class NotContraction(QsvtLabError):
    """Spectral norm exceeds 1 beyond tolerance and rescaling was not requested."""


class ConvergenceFailure(QsvtLabError):
    """An iterative factorization did not converge."""


class DimensionMismatch(QsvtLabError):
    """Shapes of operators and subspace splits are inconsistent."""


class RelationViolation(QsvtLabError):
    """A block identity that unitarity forces does not hold within tolerance."""


class MissingFinalPhase(QsvtLabError):
    """An odd product was requested from a schedule without a trailing angle."""


class PhaseConventionViolation(QsvtLabError):
    """A singular triple does not satisfy the <f, A h> = sigma alignment."""


class DegenerateScaling(QsvtLabError):
    """A singular value sits outside the open interval that the 1/sigma and
    1/sqrt(1 - sigma^2) basis scalings require."""


class OutOfRange(QsvtLabError):
    """Scalar argument outside its admissible interval."""


class ConfigInvalid(QsvtLabError):
    """Suite configuration violates its invariants."""


class ParseError(QsvtLabError):
    """A matrix or schedule file is malformed; the message names the field."""


class UnknownDemo(QsvtLabError):
    """Requested demo instance name is not registered."""

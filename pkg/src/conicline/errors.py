"""Exception hierarchy shared by the engine modules."""


class EngineError(Exception):
    """Base class for every error this package raises on purpose."""


# -- exact arithmetic ---------------------------------------------------------

class SingularMatrixError(EngineError):
    """A coordinate change matrix has determinant zero."""


class ZeroPolynomialError(EngineError):
    """An operation that needs a nonzero polynomial received zero."""


class NonHomogeneousError(EngineError):
    """A homogeneous form was required."""


# -- zero-dimensional ideal machinery -----------------------------------------

class NotZeroDimensionalError(EngineError):
    """The ideal has infinitely many solutions in its chart."""


class CommonComponentError(EngineError):
    """Two input curves share a component (nonconstant common factor)."""


class VerificationMismatchError(EngineError):
    """Two independent coordinate changes produced different point counts.

    This cannot happen for valid input; it signals an internal bug.
    """


# -- arrangement validation ----------------------------------------------------

class ValidationError(EngineError):
    """Base class for arrangement validation failures."""


class DegenerateConicError(ValidationError):
    """A conic record does not define a smooth conic."""


class DegenerateLineError(ValidationError):
    """A line record with all coefficients zero."""


class DuplicateComponentError(ValidationError):
    """Two components are proportional (the union would not be reduced)."""


class EmptyArrangementError(ValidationError):
    """An arrangement with no components."""


# -- resolution engine ---------------------------------------------------------

class ResolutionNotStabilizedError(EngineError):
    """The graded syzygy search did not settle into a consistent resolution.

    Signals either an internal bug or input outside the supported shape
    (projective dimension above three, runaway generator degrees).
    """


class ClassificationInconsistencyError(EngineError):
    """A 2-syzygy curve whose exponents do not sum to degree - 1."""


# -- CLI / serialization --------------------------------------------------------

class ParseError(EngineError):
    """Positioned syntax error in an arrangement file."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where = f" ({where})"
        super().__init__(f"{message}{where}")


class DegenerateWindowError(EngineError):
    """A drawing window with empty interior."""

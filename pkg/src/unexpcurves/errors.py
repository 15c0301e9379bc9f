"""Exception hierarchy shared by every module.

Every error raised on purpose by the toolkit derives from ``ToolkitError`` so the
command line front end can map them to exit code 1.
"""


class ToolkitError(Exception):
    """Base class for computation errors."""


# exact arithmetic
class DivisionByZero(ToolkitError, ZeroDivisionError):
    pass


class FieldMismatch(ToolkitError, TypeError):
    pass


class UnsupportedField(ToolkitError):
    pass


# polynomials and points
class SingularTransform(ToolkitError):
    pass


class PointInZ(ToolkitError):
    pass


class DegenerateProbe(ToolkitError):
    pass


# invariants
class RampViolation(ToolkitError):
    pass


class CriteriaDisagree(ToolkitError):
    pass


# curves
class UnexpectedKernelDim(ToolkitError):
    pass


class StructureViolation(ToolkitError):
    pass


class OutOfRange(ToolkitError):
    pass


class CharDividesDegree(ToolkitError):
    pass


class CharacteristicObstruction(ToolkitError):
    pass


class GcdDegreeMismatch(ToolkitError):
    pass


# arrangements and Lefschetz
class NoStabilization(ToolkitError):
    pass


class CharacteristicUnsupported(ToolkitError):
    pass


# catalog and cli
class FieldConstraintViolated(ToolkitError):
    pass


class UnknownName(ToolkitError):
    pass


class OracleMismatch(ToolkitError):
    pass


class ParseError(ToolkitError, ValueError):
    pass

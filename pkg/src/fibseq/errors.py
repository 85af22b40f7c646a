"""Exception hierarchy.

Every error the engine raises deliberately derives from FibseqError so the
command-line layer can map "user input was bad" to a single exit code.
Internal assertion violations (contracts the mathematics guarantees) raise
InternalCheckError instead; seeing one is a bug, not a usage error.
"""


class FibseqError(Exception):
    """Base class for all validation and usage errors."""


class MatrixShapeError(FibseqError):
    """Operands have incompatible shapes or ragged input data."""


class MalformedSubquotient(FibseqError):
    """Boundary generators do not lie in the cycle span."""


class NotWellDefined(FibseqError):
    """An ambient matrix does not carry cycles/boundaries where required."""


class Incomposable(FibseqError):
    """Two homs were combined although the middle objects differ."""


class NotInvertible(FibseqError):
    """Inversion was requested for a hom that is not an isomorphism."""


class ComplexValidationError(FibseqError):
    """A chain complex violates its invariants; names the offending degree."""


class ChainMapValidationError(FibseqError):
    """A chain map fails the commuting-square condition at some degree."""


class NegativeDegree(FibseqError):
    """A non-negative complex would acquire support below degree 0."""


class WrongVariant(FibseqError):
    """An operation received a complex of the wrong grading variant."""


class NotCommuting(FibseqError):
    """A square (or a universal-map request) fails to commute."""


class NotFiberSequence(FibseqError):
    """A fiber-sequence-only operation got a square that is not one."""


class IncompatibleRestrictions(FibseqError):
    """Two long fiber sequences do not extend the same morphism."""


class WorkspaceError(FibseqError):
    """Workspace file is malformed or contains dangling references."""


class InternalCheckError(AssertionError):
    """A mathematically guaranteed invariant failed; indicates a bug."""

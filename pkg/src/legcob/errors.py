"""Exception types shared across the package."""

from __future__ import annotations


class LegcobError(Exception):
    """Base class for all package-specific errors."""


class UnknownGenerator(LegcobError):
    """A monomial references a name absent from the DGA's generator table."""


class BudgetExceeded(LegcobError):
    """An exhaustive enumeration would exceed its configured cap."""


class NotAnAugmentation(LegcobError):
    """The candidate map fails epsilon(d a) = 0 for some generator."""


class DegreeInconsistency(LegcobError):
    """An enumerated disk violates the degree-drop-by-one rule."""


class CompileFailure(LegcobError):
    """The compiled DGA failed validation (search or input defect)."""


class SplittingNotPreserved(LegcobError):
    """The twisted codifferential mixes component-pair blocks."""


class DimensionMismatch(LegcobError):
    """Block cohomology dimensions differ where a cylinder forces an iso."""


class InsufficientAssignments(LegcobError):
    """A chain map is missing assignments required by the operation."""


class ConstantPartNonzero(LegcobError):
    """The twisted cobordism map has a nonvanishing word-length-0 part."""


class Undetermined(LegcobError):
    """A partial chain map does not determine the requested value."""


class ImageClassZero(LegcobError):
    """The image class vanishes in cohomology, so no finite bound follows."""


class ImageNotCocycle(LegcobError):
    """A chain-level image fails the cocycle check."""


class NotACocycle(LegcobError):
    """Capacity was requested for a vector that is not a cocycle."""


class PreconditionFailed(LegcobError):
    """A hypothesis of the invoked bound does not hold."""


class MixedLambda(LegcobError):
    """Derivative constraints in one profile problem have different lambdas."""


class MalformedConstraint(LegcobError):
    """A profile constraint is structurally invalid."""


class MalformedInput(LegcobError):
    """Input data violates a schema or ordering requirement."""

"""Exception types shared across the package."""


class DimensionMismatchError(ValueError):
    """Vector or matrix dimensions do not agree."""


class GroupMismatchError(ValueError):
    """Operands belong to different groups."""


class NotNormalizedError(ValueError):
    """Operation requires both group-algebra elements to contain the identity."""


class NonSurjectiveError(ValueError):
    """The generator map does not cover the whole group; decompose first."""


class DecomposableCodeError(ValueError):
    """Operation requires an indecomposable code; decompose first."""


class NotApplicableError(ValueError):
    """The partition applicability condition fails for this lattice and radius."""


class BudgetExceededError(RuntimeError):
    """An enumeration exceeded its configured budget."""


class CleaningPreconditionError(RuntimeError):
    """A nontrivial logical operator lives inside the region to be cleaned."""


class InternalConsistencyError(RuntimeError):
    """A mathematically guaranteed invariant failed; the run is not trustworthy."""

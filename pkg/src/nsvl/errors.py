"""Exception types shared across the package.

Every failure mode that callers are expected to branch on gets its own
class; the CLI maps them onto distinct exit codes.
"""


class NsvlError(Exception):
    """Base class for all package errors."""


class DomainError(NsvlError):
    """Evaluation requested outside the validity domain of a function or field."""


class ConvergenceError(NsvlError):
    """An iterative kernel failed to reach its tolerance within the iteration cap."""


class ParamError(NsvlError):
    """A family parameter set violates one of its invariants."""


class BranchError(DomainError):
    """A point lies outside the branch of a multi-valued expression (e.g. log of a non-positive argument)."""


class CaseError(NsvlError):
    """No cataloged invariant triple exists for the given constants pattern."""


class DegenerateVorticityError(NsvlError):
    """|omega| below the floor: the alignment angle is 0/0 there."""


class DegenerateStretchError(NsvlError):
    """S omega vanishes: the alignment angle is undefined."""


class UnsupportedFamilyError(NsvlError):
    """Operation not available for the requested solution family."""


class NotImplementedAnalytic(NsvlError):
    """Analytic derivatives are not provided; caller should fall back to finite differences."""


class EmptyGridError(NsvlError):
    """A grid specification produced no points."""


class AllPointsRejectedError(NsvlError):
    """Every grid point failed the validity guard."""


class EmptyLevelSetError(NsvlError):
    """The requested level does not intersect the sampled invariant range."""


class SingularMatrixError(NsvlError):
    """Closed-form trajectory with a constant shift requested for a singular coefficient matrix."""


class UsageError(NsvlError):
    """Bad command line or configuration input; carries the offending token."""


class IoError(NsvlError):
    """Output could not be written."""

"""Exception hierarchy.

Two families are kept apart on purpose: :class:`InvalidInputError` means the
caller handed in something the operation does not accept, while
:class:`InvariantViolation` means a computation that is guaranteed to
succeed on valid input did not, i.e. a bug.
"""


class K3TwistError(Exception):
    """Base class for all package errors."""


class InvalidInputError(K3TwistError, ValueError):
    """Rejected input."""


class AmbientMismatchError(InvalidInputError):
    """Vectors or sublattices live in different ambient lattices."""


class DegenerateFormError(InvalidInputError):
    """The bilinear form is degenerate where a nondegenerate one is needed."""


class NoSolutionError(InvalidInputError):
    """A linear system over the integers has no solution."""


class IsometryError(InvalidInputError):
    """A map does not preserve the bilinear forms."""


class ParityError(InvalidInputError):
    """A Gram matrix that must be even has an odd diagonal entry."""


class SaturationError(InvalidInputError):
    """A sublattice required to be primitive is not."""


class AdmissibilityError(InvalidInputError):
    """A Mukai vector fails one of the algebraic/primitive/isotropic tests."""

    def __init__(self, failed, message=None):
        self.failed = tuple(failed)
        if message is None:
            message = "Mukai vector is not " + ", not ".join(self.failed)
        super().__init__(message)


class InvariantViolation(K3TwistError, RuntimeError):
    """A guaranteed postcondition failed; indicates an implementation bug."""

"""Exception hierarchy.

Input problems (bad fixtures, violated preconditions, exceeded bounds) map to
CLI exit code 1; failed theorem checks map to exit code 2.
"""

from __future__ import annotations


class HopfGaloisError(Exception):
    """Base class for all library errors."""

    exit_code = 1

    def __init__(self, message: str, **detail):
        super().__init__(message)
        self.detail = detail

    def as_dict(self) -> dict:
        out = {"error": type(self).__name__, "message": str(self)}
        out.update({k: v for k, v in self.detail.items() if v is not None})
        return out


class InputError(HopfGaloisError):
    """The caller supplied data that does not satisfy a documented contract."""


class FieldMismatchError(InputError):
    pass


class DimensionError(InputError):
    pass


class PreconditionError(InputError):
    pass


class BoundExceededError(InputError):
    pass


class InvariantViolation(InputError):
    """A structure failed one of its defining invariants.

    ``name`` identifies the violated invariant; ``witness`` (optional) points at
    the basis indices or group elements exhibiting the failure.
    """

    def __init__(self, name: str, message: str | None = None, witness=None):
        super().__init__(message or name, invariant=name, witness=witness)
        self.name = name
        self.witness = witness


class NonSplitError(HopfGaloisError):
    """Eigenvalue search could not split a subspace over the base field."""


class CorrespondenceError(HopfGaloisError):
    """A theorem-level assertion failed. This falsifies the implementation, not the input."""

    exit_code = 2

"""Exception types shared across the package."""

from __future__ import annotations


class LieExpError(Exception):
    """Base class for all errors raised by lieexp."""


class InputError(LieExpError, ValueError):
    """Malformed or inconsistent user input (bad file, unknown name, shape mismatch)."""


class ValidationError(LieExpError):
    """A structural check failed: Jacobi identity, ideal/subalgebra test, split check.

    Internal post-validation failures also land here; they indicate a bug and
    carry the offending data in ``witness``.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class BudgetExceeded(LieExpError):
    """A search ran out of its state or coefficient budget."""

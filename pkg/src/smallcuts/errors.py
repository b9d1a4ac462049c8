"""Exception types shared across the package."""


class SmallCutsError(Exception):
    """Base class for all package errors."""


class InputError(SmallCutsError, ValueError):
    """Malformed user input: unknown labels, bad files, missing table rows."""


class ContractError(SmallCutsError):
    """A documented precondition or internal invariant was violated."""


class BackendError(SmallCutsError, RuntimeError):
    """A minimization backend could not produce a certified answer."""


class BudgetExceeded(SmallCutsError):
    """An enumeration would exceed its configured size budget."""

"""Exception types shared across the package."""


class PolycountError(Exception):
    pass


class UsageError(PolycountError, ValueError):
    """Bad arguments: mixed fields, malformed input, violated preconditions."""


class DomainError(PolycountError, ArithmeticError):
    """A mathematically impossible request, e.g. inverting zero."""


class BudgetExceeded(PolycountError):
    """Work would exceed the configured enumeration budget."""

    def __init__(self, message, needed=None, budget=None):
        super().__init__(message)
        self.needed = needed
        self.budget = budget

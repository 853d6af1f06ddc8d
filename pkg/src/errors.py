class HermiteMCError(Exception):
    """Base class for library errors."""


class ContractError(HermiteMCError, ValueError):
    """A precondition of an operation was violated by the caller."""


class DomainError(HermiteMCError, ValueError):
    """An input lies outside the mathematical domain (e.g. non-finite x)."""


class NumericFailure(HermiteMCError, RuntimeError):
    """A computation produced non-finite or otherwise unusable numbers."""

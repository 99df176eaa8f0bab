"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the mathematical domain of an operation."""


class ConfigurationError(ValueError):
    """A size parameter exceeds a configured cap or budget."""


class ContractError(ValueError):
    """A structural contract (e.g. multilinearity) would be violated."""

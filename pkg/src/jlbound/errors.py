"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class ConvergenceError(RuntimeError):
    """An iterative numerical routine failed to converge."""

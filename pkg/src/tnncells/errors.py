"""Error types shared across the package."""


class DomainError(ValueError):
    """Input is outside an operation's domain (bad index, wrong shape, ...)."""


class ResourceGuardError(RuntimeError):
    """An enumeration or search exceeded its configured resource guard."""


class ConsistencyError(RuntimeError):
    """Two routes that must agree by theorem produced different answers.

    Raised by cross-validating operations; a ConsistencyError is always a bug
    (or a counterexample), never a user error.
    """

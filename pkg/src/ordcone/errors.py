class OrdconeError(ValueError):
    """Raised when an operation's precondition or input contract is violated.

    Messages start with a stable lowercase prefix (``"empty domain"``,
    ``"not a polytope"``, ...) that callers and the CLI may match on.
    """

"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Malformed input: bad file syntax, invalid graph/tree/arrangement data,
    violated preconditions (wrong ground set, infeasible anchor, ...)."""


class LimitError(RuntimeError):
    """Instance exceeds a configured resource cap (solver size limits)."""

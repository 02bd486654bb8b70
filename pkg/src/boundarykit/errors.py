"""Exception types shared across the package."""


class InputError(ValueError):
    """A caller violated an operation's precondition or supplied bad data."""


class NotInSpanError(InputError):
    """The target edge vector is not in the span of the generating set."""

class GhseqError(ValueError):
    """Bad input to one of the sequence operations."""


class InvariantViolation(RuntimeError):
    """A mathematical invariant that must always hold was found broken.

    The CLI maps this to exit code 2 so that regressions are distinguishable
    from usage mistakes.
    """

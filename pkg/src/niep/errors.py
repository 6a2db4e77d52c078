"""Exception types shared across the package."""


class GateError(ValueError):
    """A sufficient condition required by a construction does not hold.

    ``condition`` names the violated hypothesis (e.g. ``"cc2"``) so callers
    and the CLI can report it.
    """

    def __init__(self, condition, message):
        super().__init__(f"{condition} violated: {message}")
        self.condition = condition


class EigenConvergenceError(RuntimeError):
    """QR iteration exhausted its budget.

    ``partial`` holds the eigenvalues that did converge.
    """

    def __init__(self, message, partial):
        super().__init__(message)
        self.partial = partial

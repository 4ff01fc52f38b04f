"""Exception types shared across the package."""


class FdeintError(Exception):
    """Base class for errors raised by fdeint."""


class SeriesConvergenceError(FdeintError):
    """A power series failed to reach the requested tolerance."""


class NonUniformGridError(FdeintError):
    """A scheme that requires uniform time steps was given a non-uniform grid."""


class SchemeFailureError(FdeintError):
    """A scheme produced a non-finite value while stepping.

    Carries the offending step index and time so blow-ups can be localized.
    """

    def __init__(self, scheme_name: str, step: int, time: float):
        self.scheme_name = scheme_name
        self.step = step
        self.time = time
        super().__init__(
            f"{scheme_name} produced a non-finite value at step {step} (t = {time!r})"
        )

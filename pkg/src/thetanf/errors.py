"""Exception hierarchy shared by all thetanf modules."""


class ThetaNFError(Exception):
    """Base class for every error raised by thetanf."""


class DimensionError(ThetaNFError, ValueError):
    pass


class NotPositiveDefinite(ThetaNFError, ValueError):
    """Raised when an LDL pivot is not positive.

    ``index`` is the 1-based size of the first leading minor that fails.
    """

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"not positive definite (leading minor {index})")


class SingularForm(ThetaNFError, ValueError):
    pass


class UnsupportedRank(ThetaNFError, ValueError):
    pass


class Unsupported(ThetaNFError, ValueError):
    pass


class NotSeparable(ThetaNFError, ValueError):
    pass


class NotAnOrder(ThetaNFError, ValueError):
    pass


class NotMaximal(ThetaNFError, ValueError):
    def __init__(self, p):
        self.p = p
        super().__init__(f"power order is not maximal at p={p}; supply an integral basis")


class DiscMismatch(ThetaNFError, ValueError):
    def __init__(self, claimed, computed):
        self.claimed = claimed
        self.computed = computed
        super().__init__(f"claimed discriminant {claimed} but computed {computed}")


class NotTotallyReal(ThetaNFError, ValueError):
    pass


class InvariantViolation(ThetaNFError, AssertionError):
    """A proven identity failed at runtime; always indicates a bug upstream."""


class ParseError(ThetaNFError, ValueError):
    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class NonMonic(ThetaNFError, ValueError):
    pass


class DegreeOutOfRange(ThetaNFError, ValueError):
    pass

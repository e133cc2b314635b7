"""Exception hierarchy shared by every module of the engine."""


class GossamerError(Exception):
    """Base class for all engine errors."""


class ParseError(GossamerError):
    def __init__(self, message, offset=0, expected=()):
        self.offset = offset
        self.expected = tuple(expected)
        detail = message
        if self.expected:
            detail += " (expected one of: %s)" % ", ".join(self.expected)
        super().__init__("at offset %d: %s" % (offset, detail))


class FactorialDomainError(GossamerError):
    """A ``fact`` argument is not the main variable plus a rational constant."""


class AssumptionNeeded(GossamerError):
    """A sign query could not be resolved from the current assumptions."""

    def __init__(self, query):
        self.query = query
        super().__init__("cannot decide sign of %s; add an assumption" % query)


class PrecisionExhausted(GossamerError):
    """The truncation budget could not separate the terms that matter."""


class NeedMorePrecision(PrecisionExhausted):
    # Internal signal: retry with a larger truncation budget.
    pass


class DivisionByExactZero(GossamerError, ZeroDivisionError):
    pass


class UndefinedAtPoint(GossamerError):
    pass


class DepthLimit(GossamerError):
    pass


class ConditionViolated(GossamerError):
    def __init__(self, condition):
        self.condition = condition
        super().__init__("side condition failed: %s" % condition)


class UnsupportedRow(GossamerError):
    pass


class NotIndeterminate(GossamerError):
    pass

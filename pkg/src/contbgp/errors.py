"""Exception hierarchy shared by every evaluator and the line-protocol readers."""


class BGPError(Exception):
    """Base class for all errors raised by this package."""


class InvalidQuery(BGPError, ValueError):
    """A query or pattern violates a structural rule (duplicates, bad positions)."""


class AssumptionViolation(BGPError):
    """A strict stream inserted a present triple or deleted an absent one."""

    def __init__(self, time, op, triple):
        self.time = time
        self.op = op
        self.triple = triple
        verb = "insert of present" if op.value == "ins" else "delete of absent"
        super().__init__(f"t={time}: {verb} triple {triple}")


class OutOfOrderTimestamp(BGPError):
    def __init__(self, time, last):
        self.time = time
        self.last = last
        super().__init__(f"timestamp {time} does not exceed previous timestamp {last}")


class ClassMismatch(BGPError):
    """The query class is incompatible with the requested evaluator."""


class UnknownNode(BGPError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class NoVariables(BGPError):
    """A variable-partition operation was asked about a ground query."""


class BindingMismatch(BGPError):
    """A seed binding does not cover exactly the variables of its pattern."""


class IllegalHistory(BGPError):
    """A delta history retracts an answer that is not live (or re-adds a live one)."""


class ParseError(BGPError):
    def __init__(self, line_no, reason):
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"line {line_no}: {reason}")


class NonMonotonicTime(ParseError):
    def __init__(self, line_no, reason="timestamp does not strictly increase"):
        super().__init__(line_no, reason)


class VariablePredicate(ParseError):
    def __init__(self, line_no, reason="predicate must not be a variable"):
        super().__init__(line_no, reason)


class DuplicatePattern(ParseError):
    def __init__(self, line_no, reason="duplicate triple pattern"):
        super().__init__(line_no, reason)


class OutputMismatch(ParseError):
    def __init__(self, line_no, reason="OUTPUT must list exactly the query variables"):
        super().__init__(line_no, reason)

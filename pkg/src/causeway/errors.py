"""Exception taxonomy shared across the package.

Every failure mode callers are expected to handle has a named class; all
inherit from :class:`CausewayError` so CLI/service layers can catch one base.
"""


class CausewayError(Exception):
    """Base class for all structured errors raised by this package."""


# --- graph construction ---

class CycleDetected(CausewayError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("cycle detected: " + " -> ".join(self.cycle))


class UnknownEndpoint(CausewayError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"edge endpoint {name!r} is not a declared variable")


class DuplicateEdge(CausewayError):
    def __init__(self, src, dst):
        self.edge = (src, dst)
        super().__init__(f"duplicate edge {src} -> {dst}")


class SelfLoop(CausewayError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"self-loop on {name!r}")


class UnknownVariable(CausewayError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"unknown variable {name!r}")


class UnknownLevel(CausewayError):
    def __init__(self, variable, level, row=None):
        self.variable = variable
        self.level = level
        self.row = row
        where = f" (row {row})" if row is not None else ""
        super().__init__(f"level {level!r} is not declared for {variable!r}{where}")


# --- file parsing ---

class ParseError(CausewayError):
    def __init__(self, message, line=None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)


# --- dataset ---

class HeaderMismatch(CausewayError):
    def __init__(self, expected, got):
        self.expected = list(expected)
        self.got = list(got)
        super().__init__(
            f"header does not match schema: expected columns {sorted(expected)}, got {sorted(got)}"
        )


class MissingCell(CausewayError):
    """A required value is absent: a CSV cell, or a CPT row or combo."""

    def __init__(self, row, column=None):
        self.row = row
        self.column = column
        if column is None:
            super().__init__(str(row))
        else:
            super().__init__(f"missing value at row {row}, column {column!r}")


class OverlappingRoles(CausewayError):
    def __init__(self, names):
        self.names = sorted(names)
        super().__init__(f"variables used in more than one role: {self.names}")


# --- testing ---

class DegenerateTable(CausewayError):
    def __init__(self, variable):
        self.variable = variable
        super().__init__(f"fewer than 2 observed levels for {variable!r}")


class SchemaMismatch(CausewayError):
    pass


# --- estimation ---

class PerfectSeparation(CausewayError):
    def __init__(self, predictor):
        self.predictor = predictor
        super().__init__(
            f"perfect separation detected (diverging coefficient on {predictor!r})"
        )


class DegenerateOutcome(CausewayError):
    def __init__(self, outcome, level):
        self.outcome = outcome
        self.level = level
        super().__init__(f"outcome {outcome!r} has a single observed class ({level!r})")


class NonFinite(CausewayError):
    pass


class InvalidAdjustment(CausewayError):
    def __init__(self, message):
        super().__init__(message)


class TooManyFailures(CausewayError):
    def __init__(self, failed, total):
        self.failed = failed
        self.total = total
        super().__init__(f"{failed}/{total} bootstrap replicates failed to fit")


# --- structural models ---

class IncompleteAssignment(CausewayError):
    def __init__(self, missing):
        self.missing = sorted(missing)
        super().__init__(f"assignment missing variables: {self.missing}")


class ZeroDenominator(CausewayError):
    pass

"""Exception hierarchy shared by all signrank modules."""


class SignRankError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(SignRankError, ValueError):
    """An argument violates a documented precondition (bad value, mixed
    field contexts, division by zero, non-square input, ...)."""


class ResourceExhausted(SignRankError):
    """A combinatorial search exceeded its configured size or node budget."""


class PatternFormatError(SignRankError, ValueError):
    """Malformed pattern or configuration file.  Carries 1-based line and
    column of the offending character when known."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{message} ({where})"
        super().__init__(message)


class VerticalHyperplane(DomainError):
    """A hyperplane has zero last coefficient; encoding requires a rotation
    first.  ``index`` is the 0-based hyperplane index."""

    def __init__(self, index):
        self.index = index
        super().__init__(
            f"hyperplane {index + 1} is vertical (last coefficient is zero); "
            "apply avoid_vertical first"
        )


class RankMismatch(SignRankError):
    """Numerical rank of the input matrix differs from the requested rank."""


class NumericalDegeneracy(SignRankError):
    """Randomized rotation retries failed to reach a non-degenerate state."""


class SingularSystem(SignRankError):
    """The coefficient matrix of a zero-column solve is singular; the caller
    should re-perturb the free entries and retry."""


class Overdetermined(SignRankError):
    """A column of the condensed pattern carries more zeros than the rank
    budget allows.  ``column`` is 0-based; messages print it 1-based."""

    def __init__(self, column, count, limit):
        self.column = column
        self.count = count
        self.limit = limit
        super().__init__(
            f"Overdetermined: column {column + 1} has {count} zeros > r-1 = {limit}"
        )


class PrecisionExhausted(SignRankError):
    """The denominator schedule ran out before an exact sign match was found.
    Inconclusive: says nothing about rational realizability."""


class FixtureCorrupt(SignRankError):
    """A stored fixture failed its exact re-verification."""

"""Exception taxonomy shared by every module."""


class HeckeError(Exception):
    """Base class for all library errors."""


class KindMismatch(HeckeError):
    """An element does not belong to the group it was used with."""


class NoCanonicalizer(HeckeError):
    """The pair supplies neither a coset canonicalizer nor a bucket invariant."""


class Diverged(HeckeError):
    """A coset enumeration exhausted its budget before closing.

    This is deliberately non-committal: the enumeration may be genuinely
    infinite, or the budget may simply be too small.  The caller cannot
    distinguish the two cases.
    """

    def __init__(self, frontier_size, explored):
        self.frontier_size = frontier_size
        self.explored = explored
        super().__init__(
            f"enumeration did not close (explored {explored} cosets, "
            f"{frontier_size} still on the frontier)"
        )


class BudgetExceeded(HeckeError):
    """A ball construction or word enumeration hit its budget."""


class NotFinite(HeckeError):
    """An exhaustive operation was asked of an infinite group."""


class BallTooSmall(HeckeError):
    """The interior of a truncation ball is empty for the requested check."""


class UnknownName(HeckeError):
    """No built-in pair with that name."""


class BadParameter(HeckeError):
    """A built-in pair was requested with an invalid parameter."""


class ParseError(HeckeError):
    """A config file or element literal could not be parsed."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", col {column})" if column is not None else ")")
        super().__init__(message + where)


class ValidationError(HeckeError):
    """A loaded pair failed its subgroup sanity checks."""

"""Exception hierarchy shared by all ordroots modules.

Two base classes matter for the CLI: ``PreconditionError`` (exit code 2)
and ``CapExceeded`` (exit code 3). Everything else is a plain bug.
"""


class OrdrootsError(Exception):
    pass


class PreconditionError(OrdrootsError):
    """An operation was called on inputs outside its contract."""


class CapExceeded(OrdrootsError):
    """A configured size cap (degree, rank, enumeration) was exceeded."""


class DimensionMismatch(PreconditionError):
    pass


class NotCommutative(PreconditionError):
    def __init__(self, i, j):
        super().__init__(f"basis pair ({i},{j}) does not commute")
        self.witness = (i, j)


class NotAssociative(PreconditionError):
    def __init__(self, i, j, k):
        super().__init__(f"basis triple ({i},{j},{k}) is not associative")
        self.witness = (i, j, k)


class NoUnit(PreconditionError):
    pass


class InfiniteIndex(PreconditionError):
    """The ideal lattice is not of full rank, so the quotient is infinite."""


class NotASubring(PreconditionError):
    """A lattice handed to a ring constructor is not multiplicatively closed."""


class NotReduced(PreconditionError):
    def __init__(self, witness):
        super().__init__("ring has a nonzero nilpotent element")
        self.witness = witness


class NotSupported(PreconditionError):
    """Inseparable polynomial over a non-reduced ring, or similar dead end."""


class DegreeCapExceeded(CapExceeded):
    pass


class RankCapExceeded(CapExceeded):
    pass


class EnumerationCapExceeded(CapExceeded):
    pass


class NeedsFactorization(OrdrootsError):
    """An integer resisted factoring; the verdict would not be trustworthy."""

    def __init__(self, cofactor):
        super().__init__(f"unfactored cofactor {cofactor}")
        self.cofactor = cofactor


class PreconditionFailed(PreconditionError):
    """A gadget family precondition failed; names the violated condition."""

    def __init__(self, condition):
        super().__init__(condition)
        self.condition = condition


class ShapeMismatch(PreconditionError):
    pass


class NotDivisible(PreconditionError):
    pass


class NotAUnitSolution(PreconditionError):
    pass

"""Exception hierarchy shared by all hwlab modules."""


class HWLabError(Exception):
    """Base class for every error raised by hwlab."""


class DomainError(HWLabError, ValueError):
    """An input violates a mathematical precondition."""


class DistinctnessError(DomainError):
    """Entries that must be pairwise distinct coincide."""


class ArityError(DomainError):
    """A tuple has fewer entries than the operation requires."""


class PositivityError(DomainError):
    """An entry that must be strictly positive is not."""


class InsufficientDataError(DomainError):
    """Too few terms were supplied to decide the question asked."""


class SingularSystemError(DomainError):
    """An exact linear system turned out to be singular."""


class CollisionError(DomainError):
    """Two lattice points produce the same exponential rate."""


class SizeError(DomainError):
    """An enumeration would exceed its configured cap."""


class ToleranceError(HWLabError):
    """A numerical routine could not reach the requested tolerance."""


class ConvergenceError(ToleranceError):
    """A series failed to converge within the term cap."""

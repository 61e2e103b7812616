"""Exception hierarchy shared by the library and the CLI."""


class PreconditionError(ValueError):
    """An operation was called on input outside its domain."""


class CyclicGraphError(PreconditionError):
    """The graph has an undirected cycle where a forest is required."""


class NotAPathError(PreconditionError):
    """A component that must be a finite path is not one."""


class NotAHomomorphismError(PreconditionError):
    """A map fails to send edges to edges (or breaks orientation)."""


class GapTooSmallError(PreconditionError):
    """The minimal gap size does not exceed twice the target stage length."""

    def __init__(self, message, mgs=None, required=None):
        super().__init__(message)
        self.mgs = mgs
        self.required = required


class InfeasibleWalkError(PreconditionError):
    """No walk with the requested number of steps joins the two vertices."""


class OutsideDomainError(PreconditionError):
    """A vertex has no projection to the requested stage."""


class NotBipartiteError(Exception):
    """Raised by two_color; ``cycle`` is an odd closed walk (first vertex repeated last)."""

    def __init__(self, cycle):
        super().__init__(f"odd cycle of length {len(cycle) - 1}")
        self.cycle = cycle


class ParityViolationError(Exception):
    """Two members of A are joined by an odd walk; ``walk`` witnesses it."""

    def __init__(self, x, y, walk):
        super().__init__(f"odd walk of length {len(walk) - 1} between members of A")
        self.x = x
        self.y = y
        self.walk = walk


class InsufficientGrowthError(Exception):
    """The homomorphism pipeline cannot choose a large enough layer."""

    def __init__(self, step, required, best):
        super().__init__(
            f"step {step}: need mgs > {required}, best available layer has mgs {best}"
        )
        self.step = step
        self.required = required
        self.best = best

"""Exception types raised by the solver toolkit."""


class MwisError(Exception):
    """Base class for all toolkit errors."""


class MalformedInput(MwisError):
    """Graph description is syntactically or structurally invalid."""


class ZeroWeight(MwisError):
    """A supplied vertex weight is zero or negative."""


class DeadVertex(MwisError):
    """Operation addressed a vertex that is no longer alive."""


class AdjacentMembers(MwisError):
    """Contraction attempted on a set containing an edge."""


class InvalidKernelSolution(MwisError):
    """Kernel solution is not an independent set of the kernel graph."""


class CapExceeded(MwisError):
    """Exact subsolver budget exhausted; treat conservatively."""


class BudgetExceeded(MwisError):
    """Conflict-analysis budget exhausted; treat conservatively."""


class AdjacentPair(MwisError):
    """Covering simultaneity queried for an adjacent vertex pair."""


class DegenerateConstraint(MwisError):
    """Exclusion constraint requested for an isolated vertex."""


class NotInCover(MwisError):
    """Score queried for a vertex outside the current cover."""


class EmptyCover(MwisError):
    """Removal phase invoked on an empty cover."""


class NotIndependent(MwisError):
    """Solution contains an adjacent pair."""

    def __init__(self, u: int, v: int):
        super().__init__(f"vertices {u} and {v} are adjacent")
        self.u = u
        self.v = v


class UnknownVertex(MwisError):
    """Solution references a vertex id outside the graph."""


class BadBounds(MwisError):
    """Weight generation bounds violate 1 <= lo <= hi."""

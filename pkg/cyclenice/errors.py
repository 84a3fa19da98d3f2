"""
Exception hierarchy for the cycle-nice toolkit.

Every error carries an ``exit_code`` that the command-line entry point
returns when the error reaches it, the same way an HTTP layer maps
exceptions to status codes.
"""
from typing import Optional


class CycleNiceError(Exception):
    """Base class for all library errors."""
    exit_code = 2

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class GraphFormatError(CycleNiceError):
    """Input could not be parsed, read or written."""
    exit_code = 3


class GraphStructureError(CycleNiceError):
    """A graph or vertex/edge reference violates a structural requirement."""


class LoopError(GraphStructureError):
    """An edge joins a vertex to itself."""


class BadVertexSet(GraphStructureError):
    pass


class EmptySet(GraphStructureError):
    pass


class FullSet(GraphStructureError):
    pass


class NoSuchEdge(GraphStructureError):
    pass


class NoSuchVertex(GraphStructureError):
    pass


class NotACut(GraphStructureError):
    pass


class NotConnected(GraphStructureError):
    pass


class Not2Connected(GraphStructureError):
    pass


class NotACycle(GraphStructureError):
    pass


class StepError(CycleNiceError):
    """A construction step cannot be applied to the current graph."""


class BadParity(StepError):
    pass


class EmptySide(StepError):
    pass


class BadPartition(StepError):
    pass


class BadMultiplicity(StepError):
    pass


class NotAdmissible(StepError):
    pass


class ReplayError(StepError):
    """A step of a construction sequence failed during replay."""

    def __init__(self, step_index: int, cause: CycleNiceError):
        super().__init__(f"step {step_index}: {cause.detail}")
        self.step_index = step_index
        self.cause = cause


class PreconditionFailed(CycleNiceError):
    pass


class ResourceCapError(CycleNiceError):
    """A configured search limit was reached before an answer was found."""
    exit_code = 4


class CapExceeded(ResourceCapError):

    def __init__(self, cap: int, what: str = "even cycles"):
        super().__init__(f"more than {cap} {what}")
        self.cap = cap


class BudgetExceeded(ResourceCapError):

    def __init__(self, budget: int):
        super().__init__(f"ear search exceeded its budget of {budget} nodes")
        self.budget = budget


class Stuck(ResourceCapError):

    def __init__(self, proposals: int, step_index: Optional[int] = None):
        where = f" at step {step_index}" if step_index is not None else ""
        super().__init__(f"no valid step found after {proposals} proposals{where}")
        self.proposals = proposals


class InvariantViolation(CycleNiceError):
    """An internal consistency check failed; this indicates a bug."""

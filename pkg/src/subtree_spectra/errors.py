"""Exception hierarchy shared by all subtree_spectra modules."""


class SubtreeSpectraError(Exception):
    """Base class for every error raised by this package."""


class MalformedLine(SubtreeSpectraError):
    """An edge-list line could not be parsed as two vertex indices."""


class NotATree(SubtreeSpectraError):
    """Edge set has the wrong count, a cycle, or is disconnected."""


class InvalidParameters(SubtreeSpectraError):
    """Family parameters violate the family's constraints."""


class VertexOutOfRange(SubtreeSpectraError):
    """Vertex index is not in 0..n-1."""


class OrderOutOfRange(SubtreeSpectraError):
    """Requested tree order is outside the supported range."""


class OrderTooLargeForOracle(SubtreeSpectraError):
    """Brute-force oracle refused: enumeration budget would be exceeded."""


class OverflowAtPrecision(SubtreeSpectraError):
    """A coefficient does not fit the active floating-point precision."""


class InternalInvariantViolation(SubtreeSpectraError):
    """Two independent computations of the same quantity disagree."""


class NoConvergence(SubtreeSpectraError):
    """Root iteration exhausted its budget at every available precision."""


class CounterexampleFound(SubtreeSpectraError):
    """A verification sweep found a violating tree.

    Carries enough context to reproduce: the order, the tree id within
    the enumeration of that order, and a human-readable witness.
    """

    def __init__(self, message, n=None, tree_id=None, witness=None):
        super().__init__(message)
        self.n = n
        self.tree_id = tree_id
        self.witness = witness


class BudgetExhausted(SubtreeSpectraError):
    """A search ran out of budget; carries the best result achieved."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best

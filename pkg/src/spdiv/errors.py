"""Exception types raised by the library.

Input and format problems derive from :class:`InputError`; failures of the
numerical machinery derive from :class:`ComputationError`.  The CLI maps the
former to exit code 1 and the latter to exit code 2.
"""


class SpdivError(Exception):
    """Base class for all library errors."""


class InputError(SpdivError):
    """Malformed input: files, matrices, parameters."""


class ComputationError(SpdivError):
    """A numerical operation could not be completed."""


# --- metric validation -------------------------------------------------------

class MetricError(InputError):
    """A distance matrix violates a metric axiom."""


class NonzeroDiagonal(MetricError):
    def __init__(self, i, value=None):
        self.i = i
        detail = "" if value is None else f" (value {value!r})"
        super().__init__(f"diagonal entry d[{i}][{i}] must be zero{detail}")


class NegativeDistance(MetricError):
    def __init__(self, i, j):
        self.i, self.j = i, j
        super().__init__(f"distance d[{i}][{j}] is negative")


class AsymmetricEntry(MetricError):
    def __init__(self, i, j):
        self.i, self.j = i, j
        super().__init__(f"d[{i}][{j}] != d[{j}][{i}]")


class TriangleViolation(MetricError):
    def __init__(self, i, j, k):
        self.i, self.j, self.k = i, j, k
        super().__init__(f"triangle inequality fails: d[{i}][{j}] > d[{i}][{k}] + d[{k}][{j}]")


# --- graph parsing -----------------------------------------------------------

class GraphFormatError(InputError):
    """Problem in an edge-list file; carries the 1-based line number."""

    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}")


class ParseError(GraphFormatError):
    pass


class SelfLoop(GraphFormatError):
    def __init__(self, line):
        super().__init__(line, "self-loops are not allowed")


class VertexOutOfRange(GraphFormatError):
    def __init__(self, line, vertex, n):
        self.vertex = vertex
        super().__init__(line, f"vertex {vertex} outside [0, {n})")


# --- parameter validation ----------------------------------------------------

class InvalidK(InputError):
    def __init__(self, k, n, lo=1):
        self.k, self.n = k, n
        super().__init__(f"k must be in [{lo}, {n}], got {k}")


class InvalidTheta(InputError):
    def __init__(self, theta):
        self.theta = theta
        super().__init__(f"kernel parameter must be positive, got {theta}")


class DuplicateIndex(InputError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"subset lists index {index} more than once")


class IndexOutOfRange(InputError):
    def __init__(self, index, n):
        self.index = index
        super().__init__(f"index {index} outside [0, {n})")


class EmptySubset(InputError):
    def __init__(self):
        super().__init__("operation requires a nonempty subset")


# --- numerical failures ------------------------------------------------------

class SingularSimilarity(ComputationError):
    """Similarity matrix is singular or too ill-conditioned to solve.

    Typically caused by duplicate or near-duplicate points (distance 0)."""


class DegenerateDenominator(ComputationError):
    def __init__(self, value):
        self.value = value
        super().__init__(f"closed-form denominator too small: {value!r}")


class InstanceTooLarge(ComputationError):
    def __init__(self, count, cap):
        self.count, self.cap = count, cap
        super().__init__(f"enumeration of {count} subsets exceeds cap {cap}")


class DominanceViolated(ComputationError):
    def __init__(self, t, row_sum):
        self.t, self.row_sum = t, row_sum
        super().__init__(f"row dominance fails at t={t!r} (off-diagonal row sum {row_sum!r} >= 1)")


class NotDominant(ComputationError):
    def __init__(self, row_sum):
        self.row_sum = row_sum
        super().__init__(f"matrix is not row-dominant (off-diagonal row sum {row_sum!r} >= 1)")

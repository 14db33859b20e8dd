"""Exception types raised by the interpolation pipeline."""


class ShepBernError(Exception):
    """Base class for numerical/build failures."""


class GeometryError(ShepBernError):
    """Degenerate triangle where a non-degenerate one is required."""


class CoverageError(ShepBernError):
    """Evaluation point not covered by any node's disk of influence."""

    def __init__(self, point):
        self.point = point
        super().__init__(f"point {point} is outside every radius of influence")


class AssociationError(ShepBernError):
    """No valid triangle could be associated with a node."""

    def __init__(self, node, reason):
        self.node = node
        super().__init__(f"node {node}: {reason}")


class FitError(ShepBernError):
    """Weighted least-squares fit failed at a node."""

    def __init__(self, node, reason):
        self.node = node
        super().__init__(f"node {node}: {reason}")

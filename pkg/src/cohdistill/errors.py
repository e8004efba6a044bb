"""Exception types shared across the package."""


class CohdistillError(Exception):
    """Base class for all package-specific errors."""


class LabelCollision(CohdistillError):
    """Tensor factors share a subsystem name."""


class LabelNotFound(CohdistillError):
    """A named subsystem is not present on the state."""


class InvalidPartition(CohdistillError):
    """A subsystem partition is empty, overlapping, or not a cover."""


class NotHermitian(CohdistillError):
    """Matrix fails the Hermiticity tolerance."""


class InvalidState(CohdistillError):
    """Density-matrix invariants (trace, Hermiticity, positivity) are violated."""


class DomainError(CohdistillError):
    """Scalar argument outside its mathematical domain."""


class DimensionError(CohdistillError):
    """Operator has the wrong dimension for the requested operation."""


class PurityRequired(CohdistillError):
    """Operation is defined for pure states only."""


class OrderingUnavailable(CohdistillError):
    """No mutual-information ordering witnesses the pure-state shortcut."""


class InvalidInitialization(CohdistillError):
    """Channel ancilla is already populated with a state other than |0>."""

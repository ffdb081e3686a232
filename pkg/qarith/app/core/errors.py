"""Exception types raised by the circuit toolkit."""

from __future__ import annotations


class QarithError(Exception):
    """Base class for all toolkit errors."""


class MalformedOperationError(QarithError):
    """An operation violates the arity or wiring rules of its gate kind."""


class UnsupportedWidthError(QarithError):
    """A builder was asked for an operand width it cannot construct."""


class PolicyError(QarithError):
    """An expansion policy does not fit the circuit it is applied to."""


class NotOdbEligibleError(QarithError):
    """A Toffoli pair does not satisfy the compute/uncompute pattern."""


class CapacityError(QarithError):
    """A simulation would exceed the configured width cap."""


class ShapeError(QarithError):
    """Two circuits cannot be aligned for an equivalence check."""


class DisconnectedGraphError(QarithError):
    """Path-length metrics are undefined on a disconnected graph."""


class FormulaDomainError(QarithError):
    """A closed-form cost formula was evaluated outside its domain."""


class GraphFormatError(QarithError):
    """A coupling-graph file is malformed or describes a non-simple graph."""

"""
Exception hierarchy shared by the library and the command line.
"""


class ComponentGraphError(Exception):
    """Base exception for every error raised by this package."""
    pass


class UnsupportedCardinalityError(ComponentGraphError):
    """Field cardinality outside the baked-in table; choose a smaller field."""
    pass


class EmptyInputError(ComponentGraphError):
    """A cone was requested for an empty element set."""
    pass


class MissingBoundError(ComponentGraphError):
    """The poset lacks the least (or greatest) element an operation needs."""
    pass


class NoZeroError(MissingBoundError):
    """The poset has no least element."""
    pass


class NotALatticeError(ComponentGraphError):
    """Some pair of elements has no meet or no join."""
    pass


class PartialOrderError(ComponentGraphError):
    """Relation is not reflexive, antisymmetric and transitive."""
    pass


class InvalidElementError(ComponentGraphError):
    """Element is not part of the poset."""
    pass


class GraphError(ComponentGraphError):
    """Adjacency data does not describe a simple graph with unique labels."""
    pass


class NonTransitiveRelationError(ComponentGraphError):
    """The twin relation used for a quotient is not transitive on this graph."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class TooLargeError(ComponentGraphError):
    """Input exceeds a configured vertex cap."""

    def __init__(self, message, size=None, cap=None):
        super().__init__(message)
        self.size = size
        self.cap = cap


class ConfigError(ComponentGraphError):
    """Invalid command line configuration."""
    pass

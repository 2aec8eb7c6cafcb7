"""Exception types raised by the library."""


class DomainError(ValueError):
    """Parameters outside the domain where a formula is defined."""


class CapExceeded(ValueError):
    """Colour count too large for the dense (vertex, mask) state space."""

    def __init__(self, k, cap):
        super().__init__(f"k={k} exceeds the state-space cap of {cap} colours")
        self.k = k
        self.cap = cap


class BudgetExhausted(RuntimeError):
    """The exact search visited more leaves than its budget allows."""

    def __init__(self, nodes_explored):
        super().__init__(f"search budget exhausted after {nodes_explored} leaves")
        self.nodes_explored = nodes_explored


class PathTooLong(ValueError):
    """A path has more edges than there are colours to make it rainbow."""


class GraphFormatError(ValueError):
    """Malformed graph or colouring text file."""

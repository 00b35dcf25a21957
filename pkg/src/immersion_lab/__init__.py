"""Multigraph immersions, edge-tangles and Erdos-Posa style packing/covering at desk scale."""

from .errors import Budget, CapacityError, InputError
from .multigraph import Edge, EdgeCut, Multigraph
from .verdict import Verdict

__all__ = ["Budget", "CapacityError", "InputError", "Edge", "EdgeCut", "Multigraph", "Verdict"]
__version__ = "0.1.0"

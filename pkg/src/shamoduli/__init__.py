"""Exact computations for moduli of stable line arrangements with a fixed line."""
from .errors import BudgetExceeded, PreconditionError, ShaModuliError
from .projgeom import LineArrangement, ProjLine, ProjPoint, arrangement_from_s
from .sha import Sha, ShaComponent, dual_graph, is_stable, stable_replacement
from .weights import WeightVector

__all__ = [
    "BudgetExceeded",
    "LineArrangement",
    "PreconditionError",
    "ProjLine",
    "ProjPoint",
    "Sha",
    "ShaComponent",
    "ShaModuliError",
    "WeightVector",
    "arrangement_from_s",
    "dual_graph",
    "is_stable",
    "stable_replacement",
]
__version__ = "0.1.0"

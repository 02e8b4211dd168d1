"""Exact computations in U_v^+(w) for type A_n: dual PBW and dual canonical
bases, the Δ_v(i, j) family, and its quantum cluster structure."""

__version__ = "0.1.0"

from .roota import Context
from .laurent import HalfLaurent
from .pbw import DualPBWElement, algebra, straighten
from .dcb import dcb_element, delta_v
from .cluster import ClassicalPoly, delta_classical, exchange_graph

__all__ = [
    "Context", "HalfLaurent", "DualPBWElement", "algebra", "straighten",
    "dcb_element", "delta_v", "ClassicalPoly", "delta_classical", "exchange_graph",
]

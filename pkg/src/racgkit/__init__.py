"""Right-angled Coxeter groups, their finite cyclic extensions, and cube-complex actions."""

from .graphs import DefiningGraph, load_graph
from .words import normalize

__all__ = ["DefiningGraph", "load_graph", "normalize"]
__version__ = "0.1.0"

"""Iterative point location across catalogs of rectangle tilings.

One query point is located in the tiling of every vertex along a connected
subgraph of a catalog graph, much faster than locating it from scratch at
each vertex.  See the README for the structure zoo and regime dispatcher.
"""

from .counters import WorkCounters
from .errors import Ofc2dError
from .geometry import Point, Rect, Segment, Tiling, trapezoidal_decompose

__all__ = [
    "Ofc2dError",
    "Point",
    "Rect",
    "Segment",
    "Tiling",
    "WorkCounters",
    "trapezoidal_decompose",
]

__version__ = "0.1.0"

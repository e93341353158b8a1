"""Ground truth: independent per-vertex point location by linear scan.

Shares nothing with the indexed structures beyond rect containment, so a bug
in any fast path cannot leak into the reference answers.
"""

from .catalog.model import QueryAnswer
from .geometry import tiling_locate_naive


def oracle_query(catalog, q, vertices) -> QueryAnswer:
    out = {}
    for vid in vertices:
        catalog.check_vertex(vid)
        out[vid] = tiling_locate_naive(catalog.vertices[vid].tiling, q)
    return QueryAnswer(out)

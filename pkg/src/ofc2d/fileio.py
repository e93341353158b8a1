"""Line-oriented text formats for catalog instances and query workloads.

Catalog file::

    tree <n_vertices> <degree>          (or ``graph``)
    root <vid>                          (tree only)
    adj <vid> <neighbor> <neighbor>...  (one line per vertex)
    vertex <vid> <n_rects>              (one section per vertex)
    bbox <xlo> <xhi> <ylo> <yhi>
    rect <id> <xlo> <xhi> <ylo> <yhi>   (n_rects lines)

Query file, one query per line::

    path <q.x> <q.y> <v1> <v2> ...
    subgraph <q.x> <q.y> { <v1> <v2> ... }

Witness sidecar, one line per rectangle::

    rect <id> <class> <group> <layer> <vertex>

Blank lines and ``#`` comments are ignored everywhere.  Malformed input
raises ParseError with the offending path and 1-based line number.
"""

from __future__ import annotations

from .catalog.model import (
    CatalogGraph,
    CatalogTree,
    CatalogVertex,
    PathQuery,
    SubgraphQuery,
)
from .errors import ParseError
from .geometry import Point, Rect, Tiling


class _Lines:
    def __init__(self, path):
        self.path = path
        with open(path) as f:
            raw = f.readlines()
        self.items = [(i + 1, ln.split("#", 1)[0].split())
                      for i, ln in enumerate(raw)]
        self.items = [(no, toks) for no, toks in self.items if toks]
        self.pos = 0

    def next(self, expect=None):
        if self.pos >= len(self.items):
            last = self.items[-1][0] if self.items else 0
            raise ParseError(self.path, last + 1, "unexpected end of file")
        no, toks = self.items[self.pos]
        self.pos += 1
        if expect is not None and toks[0] != expect:
            raise ParseError(self.path, no, f"expected '{expect}', got '{toks[0]}'")
        return no, toks

    def ints(self, toks, no, start=1):
        try:
            return [int(t) for t in toks[start:]]
        except ValueError:
            raise ParseError(self.path, no, f"non-integer field in {toks!r}")


def save_catalog(cat, path):
    is_tree = isinstance(cat, CatalogTree)
    degree = cat.degree if isinstance(cat, CatalogGraph) else max(
        (len(v.adjacency) for v in cat.vertices.values()), default=0)
    with open(path, "w") as f:
        f.write(f"{'tree' if is_tree else 'graph'} {len(cat.vertices)} {degree}\n")
        if is_tree:
            f.write(f"root {cat.root}\n")
        for vid in sorted(cat.vertices):
            adj = " ".join(str(a) for a in cat.vertices[vid].adjacency)
            f.write(f"adj {vid} {adj}".rstrip() + "\n")
        for vid in sorted(cat.vertices):
            t = cat.vertices[vid].tiling
            f.write(f"vertex {vid} {len(t)}\n")
            b = t.bbox
            f.write(f"bbox {b.xlo} {b.xhi} {b.ylo} {b.yhi}\n")
            for r in t.rects:
                f.write(f"rect {r.id} {r.xlo} {r.xhi} {r.ylo} {r.yhi}\n")


def load_catalog(path):
    ls = _Lines(path)
    no, toks = ls.next()
    if toks[0] not in ("tree", "graph") or len(toks) != 3:
        raise ParseError(path, no, f"bad header {toks!r}")
    kind = toks[0]
    n_vertices, degree = ls.ints(toks, no)
    root = None
    if kind == "tree":
        no, toks = ls.next("root")
        (root,) = ls.ints(toks, no)
    adjacency = {}
    for _ in range(n_vertices):
        no, toks = ls.next("adj")
        vals = ls.ints(toks, no)
        adjacency[vals[0]] = tuple(vals[1:])
    vertices = {}
    for _ in range(n_vertices):
        no, toks = ls.next("vertex")
        vid, k = ls.ints(toks, no)
        if vid not in adjacency:
            raise ParseError(path, no, f"tiling for unknown vertex {vid}")
        no, toks = ls.next("bbox")
        bb = ls.ints(toks, no)
        if len(bb) != 4:
            raise ParseError(path, no, "bbox needs 4 coordinates")
        bbox = Rect(-1, *bb)
        rects = []
        for _ in range(k):
            no, toks = ls.next("rect")
            vals = ls.ints(toks, no)
            if len(vals) != 5:
                raise ParseError(path, no, "rect needs id + 4 coordinates")
            rects.append(Rect(*vals))
        vertices[vid] = CatalogVertex(vid, Tiling(bbox, rects), adjacency[vid])
    if len(vertices) != n_vertices:
        raise ParseError(path, 1, "duplicate vertex sections")
    if kind == "tree":
        return CatalogTree(vertices, root)
    return CatalogGraph(vertices, degree)


def save_queries(queries, path):
    with open(path, "w") as f:
        for q in queries:
            if isinstance(q, PathQuery):
                f.write(f"path {q.q.x} {q.q.y} " + " ".join(map(str, q.path)) + "\n")
            else:
                inner = " ".join(str(v) for v in sorted(q.vertex_set))
                f.write(f"subgraph {q.q.x} {q.q.y} {{ {inner} }}\n")


def load_queries(path):
    ls = _Lines(path)
    out = []
    while ls.pos < len(ls.items):
        no, toks = ls.next()
        if toks[0] == "path":
            vals = ls.ints(toks, no)
            if len(vals) < 3:
                raise ParseError(path, no, "path query needs a point and a vertex")
            out.append(PathQuery(Point(vals[0], vals[1]), tuple(vals[2:])))
        elif toks[0] == "subgraph":
            if len(toks) < 6 or toks[3] != "{" or toks[-1] != "}":
                raise ParseError(path, no, "subgraph query needs {{ v... }}")
            try:
                x, y = int(toks[1]), int(toks[2])
                vs = frozenset(int(t) for t in toks[4:-1])
            except ValueError:
                raise ParseError(path, no, f"non-integer field in {toks!r}")
            out.append(SubgraphQuery(Point(x, y), vs))
        else:
            raise ParseError(path, no, f"unknown query kind '{toks[0]}'")
    return out


def save_witness(wit, path):
    with open(path, "w") as f:
        for rid in sorted(wit.boxes):
            i, j, layer = wit.shape[rid]
            f.write(f"rect {rid} {i} {j} {layer} {wit.vertex_of[rid]}\n")


def load_witness_shapes(path):
    """Sidecar loader: rect id -> (class, group, layer, vertex)."""
    ls = _Lines(path)
    out = {}
    while ls.pos < len(ls.items):
        no, toks = ls.next("rect")
        vals = ls.ints(toks, no)
        if len(vals) != 5:
            raise ParseError(path, no, "witness line needs 5 integers")
        out[vals[0]] = tuple(vals[1:])
    return out

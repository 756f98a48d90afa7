"""Grade arithmetic and the 1-critical bifiltered graph representation.

A grade is a point (s, t) in the plane, partially ordered coordinate-wise.
Every edge of a bifiltered graph carries a unique critical grade at which it
enters the filtration; vertices are present at all grades.  The graph is
stored as symmetric adjacency lists of (neighbor, grade) pairs, each list
sorted strictly increasing by neighbor id, so that neighborhood computations
reduce to merged scans of sorted lists.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from typing import Iterator, NamedTuple, Sequence, TextIO

Grade = tuple[float, float]

#: Grade of a missing edge: above every finite grade, absorbing under join.
#: Valid as a query result, never as a stored edge grade.
NEVER: Grade = (math.inf, math.inf)


def leq(g1: Grade, g2: Grade) -> bool:
    """Coordinate-wise partial order on grades."""
    return g1[0] <= g2[0] and g1[1] <= g2[1]


def join(g1: Grade, g2: Grade) -> Grade:
    """Least upper bound: the coordinate-wise maximum.  NEVER absorbs."""
    return (max(g1[0], g2[0]), max(g1[1], g2[1]))


def is_finite(g: Grade) -> bool:
    return math.isfinite(g[0]) and math.isfinite(g[1])


class Edge(NamedTuple):
    u: int
    v: int
    grade: Grade


class EdgeNeighbor(NamedTuple):
    """A common neighbor w of an edge e, with the grade at which it becomes
    an edge neighbor: entry = join(crit({a,w}), crit({b,w}), crit(e))."""

    w: int
    entry: Grade


class BifilteredGraph:
    """1-critical bifiltered graph over vertices 0..n-1.

    Adjacency lists hold (neighbor, grade) pairs sorted by neighbor id and
    stay sorted across in-place edge removals.  Instances are safe to share
    read-only; mutation (edge removal) must be exclusive.
    """

    __slots__ = ("n", "adj")

    def __init__(self, n: int):
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        self.n = n
        self.adj: list[list[tuple[int, Grade]]] = [[] for _ in range(n)]

    # -- queries ---------------------------------------------------------

    def edge_count(self) -> int:
        return sum(len(lst) for lst in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def grade_of(self, u: int, v: int) -> Grade:
        """Critical grade of edge {u, v}, or NEVER if the edge is absent."""
        lst = self.adj[u]
        i = bisect_left(lst, (v,))
        if i < len(lst) and lst[i][0] == v:
            return lst[i][1]
        return NEVER

    def has_edge(self, u: int, v: int) -> bool:
        return self.grade_of(u, v) != NEVER

    def edges(self) -> Iterator[Edge]:
        """All edges as Edge(u, v, grade) with u < v, sorted by (u, v)."""
        for u, lst in enumerate(self.adj):
            for v, g in lst:
                if v > u:
                    yield Edge(u, v, g)

    def edge_list(self) -> list[Edge]:
        return list(self.edges())

    # -- mutation --------------------------------------------------------

    def add_edge(self, u: int, v: int, grade: Grade) -> None:
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
        if not is_finite(grade):
            raise ValueError(f"edge ({u}, {v}) has non-finite grade {grade}")
        self._insert_half(u, v, grade)
        self._insert_half(v, u, grade)

    def _insert_half(self, u: int, v: int, grade: Grade) -> None:
        lst = self.adj[u]
        i = bisect_left(lst, (v,))
        if i < len(lst) and lst[i][0] == v:
            raise ValueError(f"duplicate edge pair ({min(u, v)}, {max(u, v)})")
        lst.insert(i, (v, grade))

    def remove_edge(self, u: int, v: int) -> None:
        """Delete edge {u, v} in place, preserving adjacency sortedness."""
        self._remove_half(u, v)
        self._remove_half(v, u)

    def _remove_half(self, u: int, v: int) -> None:
        lst = self.adj[u]
        i = bisect_left(lst, (v,))
        if i >= len(lst) or lst[i][0] != v:
            raise ValueError(f"edge ({u}, {v}) not in graph")
        del lst[i]

    def copy(self) -> "BifilteredGraph":
        g = BifilteredGraph(self.n)
        g.adj = [list(lst) for lst in self.adj]
        return g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BifilteredGraph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __repr__(self) -> str:
        return f"BifilteredGraph(n={self.n}, m={self.edge_count()})"


def graph_from_edges(n: int, edges: Sequence[Edge | tuple]) -> BifilteredGraph:
    """Build a bifiltered graph from (u, v, grade) triples.

    Rejects ids outside 0..n-1 and duplicate unordered pairs.
    """
    g = BifilteredGraph(n)
    for e in edges:
        u, v, grade = e
        g.add_edge(u, v, (float(grade[0]), float(grade[1])))
    return g


def edge_neighborhood(graph: BifilteredGraph, e: Edge) -> list[EdgeNeighbor]:
    """Common neighbors of e's endpoints with their entry grades.

    A single merged scan of the two sorted adjacency lists; output sorted by
    vertex id.  entry(w) = join(crit({a,w}), crit({b,w}), crit(e)).
    """
    a, b, (es, et) = e.u, e.v, e.grade
    if graph.grade_of(a, b) != e.grade:
        raise ValueError(f"edge ({a}, {b}) with grade {e.grade} not in graph")
    la, lb = graph.adj[a], graph.adj[b]
    out: list[EdgeNeighbor] = []
    i = j = 0
    na, nb = len(la), len(lb)
    while i < na and j < nb:
        wa, ga = la[i]
        wb, gb = lb[j]
        if wa < wb:
            i += 1
        elif wb < wa:
            j += 1
        else:
            entry = (max(ga[0], gb[0], es), max(ga[1], gb[1], et))
            out.append(EdgeNeighbor(wa, entry))
            i += 1
            j += 1
    return out


def subgraph_at(graph: BifilteredGraph, g: Grade) -> list[set[int]]:
    """Plain graph at grade g: adjacency sets containing exactly the edges
    with crit(e) <= g.  Vertices are present at all grades."""
    gs, gt = g
    out: list[set[int]] = [set() for _ in range(graph.n)]
    for u, lst in enumerate(graph.adj):
        row = out[u]
        for v, (s, t) in lst:
            if s <= gs and t <= gt:
                row.add(v)
    return out


# -- edge-list text format ------------------------------------------------
#
# Header line "n m", then m lines "u v s t" (whitespace-separated, 0-based
# ids, grades as decimal floats).  Input and output of collapse runs.


def write_edge_list(graph: BifilteredGraph, sink: TextIO) -> None:
    edges = graph.edge_list()
    sink.write(f"{graph.n} {len(edges)}\n")
    for u, v, (s, t) in edges:
        sink.write(f"{u} {v} {s!r} {t!r}\n")


def read_edge_list(source: TextIO) -> BifilteredGraph:
    lines = [ln for ln in (raw.strip() for raw in source) if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty edge-list input")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"malformed header {lines[0]!r}, expected 'n m'")
    n, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise ValueError(f"header promises {m} edges, found {len(lines) - 1}")
    g = BifilteredGraph(n)
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 4:
            raise ValueError(f"malformed edge line {ln!r}, expected 'u v s t'")
        u, v = int(parts[0]), int(parts[1])
        g.add_edge(u, v, (float(parts[2]), float(parts[3])))
    return g

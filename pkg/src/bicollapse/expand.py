"""Triangle enumeration and scc2020 export of the dimension <= 2 clique bifiltration.

A (k+1)-clique of the graph enters the clique complex when its last edge
does, so every triangle carries the join of its three edge grades.  The
exporter emits the standard scc2020 text layout (format tag, parameter
count, block sizes for dimensions 2, 1, 0, then one generator line per
simplex with its grade and facet indices) so the file can feed external
minimal-presentation tools.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Sequence

import numpy as np

from .core import BifilteredGraph, Grade, join

FORMAT_TAG = "scc2020"


@dataclass(frozen=True, order=True)
class GradedTriangle:
    """3-clique u < v < w graded at the join of its three edges."""

    u: int
    v: int
    w: int
    grade: Grade

    def __post_init__(self) -> None:
        if not self.u < self.v < self.w:
            raise ValueError(f"triangle vertices must increase, got {(self.u, self.v, self.w)}")


def enumerate_triangles(graph: BifilteredGraph) -> list[GradedTriangle]:
    """Every 3-clique exactly once, sorted by (u, v, w).

    Walks each edge (u, v) and intersects the two sorted adjacency lists,
    keeping only common neighbors w > v so each triangle is reported from
    its lexicographically smallest edge.
    """
    out: list[GradedTriangle] = []
    for u, v, guv in graph.edges():
        lu, lv = graph.adj[u], graph.adj[v]
        i, j = 0, 0
        while i < len(lu) and j < len(lv):
            a, b = lu[i][0], lv[j][0]
            if a < b:
                i += 1
            elif b < a:
                j += 1
            else:
                if a > v:
                    grade = join(guv, join(lu[i][1], lv[j][1]))
                    out.append(GradedTriangle(u, v, a, grade))
                i += 1
                j += 1
    return out


def count_triangles(graph: BifilteredGraph) -> int:
    """Number of 3-cliques, via trace(A^3) / 6 on the 0/1 adjacency matrix.

    Stays exact in float64 (path counts are far below 2^53) and avoids
    materializing the triangle list, which is quadratic-in-m for dense
    graphs.
    """
    a = np.zeros((graph.n, graph.n))
    for u, v, _ in graph.edges():
        a[u, v] = a[v, u] = 1.0
    return int(round(np.trace(a @ a @ a))) // 6


def _fmt(x: float) -> str:
    # Shortest round-trip decimal; integral values lose the trailing ".0".
    x = x + 0.0
    if x == int(x):
        return str(int(x))
    return repr(x)


def export_scc2020(
    graph: BifilteredGraph,
    triangles: Sequence[GradedTriangle],
    sink: str | Path | IO[str],
) -> None:
    """Write the dimension 0..2 clique bifiltration in scc2020 text form.

    Grades are shifted so the coordinate-wise minimum over edge grades
    lands at (0, 0); vertices sit at that global minimum.  Edges are
    sorted by (u, v) and triangles by (u, v, w), so output is byte-stable
    for a fixed input.  A triangle whose facet edge is absent from the
    graph is rejected.
    """
    edges = graph.edge_list()
    for e in edges:
        if not (math.isfinite(e.grade[0]) and math.isfinite(e.grade[1])):
            raise ValueError(f"edge {(e.u, e.v)} has a non-finite grade")
    shift_s = min((e.grade[0] for e in edges), default=0.0)
    shift_t = min((e.grade[1] for e in edges), default=0.0)
    edge_index = {(e.u, e.v): i for i, e in enumerate(edges)}

    lines = [FORMAT_TAG, "2", f"{len(triangles)} {len(edges)} {graph.n}"]
    for tri in sorted(triangles):
        facets = []
        for pair in ((tri.u, tri.v), (tri.u, tri.w), (tri.v, tri.w)):
            if pair not in edge_index:
                raise ValueError(f"triangle {(tri.u, tri.v, tri.w)} references missing edge {pair}")
            facets.append(edge_index[pair])
        s, t = tri.grade[0] - shift_s, tri.grade[1] - shift_t
        lines.append(f"{_fmt(s)} {_fmt(t)} ; {facets[0]} {facets[1]} {facets[2]}")
    for e in edges:
        s, t = e.grade[0] - shift_s, e.grade[1] - shift_t
        lines.append(f"{_fmt(s)} {_fmt(t)} ; {e.u} {e.v}")
    lines.extend("0 0 ;" for _ in range(graph.n))
    text = "\n".join(lines) + "\n"

    if isinstance(sink, (str, Path)):
        Path(sink).write_text(text)
    else:
        sink.write(text)


@dataclass(frozen=True)
class SccComplex:
    """Parsed scc2020 content: per-block (grade, facet indices) generators.

    blocks[0] holds dimension-2 generators, blocks[1] edges, blocks[2]
    vertices; facet indices point into the next block.
    """

    blocks: tuple[tuple[tuple[Grade, tuple[int, ...]], ...], ...]

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)


def parse_scc2020(source: str | Path | IO[str]) -> SccComplex:
    """Round-trip reader for files produced by export_scc2020."""
    if isinstance(source, (str, Path)):
        text = Path(source).read_text()
    else:
        text = source.read()
    rows = [ln.strip() for ln in text.splitlines()]
    rows = [ln for ln in rows if ln and not ln.startswith("#")]
    if not rows or rows[0] != FORMAT_TAG:
        raise ValueError(f"missing {FORMAT_TAG} format tag")
    if len(rows) < 3 or rows[1] != "2":
        raise ValueError("expected 2 filtration parameters")
    sizes = [int(tok) for tok in rows[2].split()]
    if len(sizes) != 3 or any(k < 0 for k in sizes):
        raise ValueError(f"expected three block sizes, got {rows[2]!r}")
    body = rows[3:]
    if len(body) != sum(sizes):
        raise ValueError(f"expected {sum(sizes)} generator lines, got {len(body)}")

    blocks: list[tuple[tuple[Grade, tuple[int, ...]], ...]] = []
    pos = 0
    for dim_index, size in enumerate(sizes):
        gens = []
        next_size = sizes[dim_index + 1] if dim_index + 1 < len(sizes) else 0
        for ln in body[pos : pos + size]:
            head, sep, tail = ln.partition(";")
            if not sep:
                raise ValueError(f"generator line lacks ';': {ln!r}")
            coords = [float(tok) for tok in head.split()]
            if len(coords) != 2:
                raise ValueError(f"expected two grade coordinates: {ln!r}")
            faces = tuple(int(tok) for tok in tail.split())
            if any(f < 0 or f >= next_size for f in faces):
                raise ValueError(f"facet index out of range: {ln!r}")
            gens.append(((coords[0], coords[1]), faces))
        blocks.append(tuple(gens))
        pos += size
    return SccComplex(blocks=tuple(blocks))

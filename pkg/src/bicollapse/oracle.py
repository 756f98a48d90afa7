"""Independent brute-force verifiers at desk scale.

Two oracles: a grid-exhaustive filtration-domination check that evaluates the
definition literally at every critical grid grade, and an F2 homology oracle
computing Betti numbers (and one-step inclusion-map ranks) of clique
bifiltrations via boundary-matrix Gaussian elimination.  Both are meant for
small inputs (n <= 12) and serve as the ground truth the fast algorithms are
tested against.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .core import BifilteredGraph, Edge, Grade, graph_from_edges, join, leq, subgraph_at


# -- critical grid ---------------------------------------------------------


@dataclass(frozen=True)
class CriticalGrid:
    """Product grid of the distinct edge-grade coordinates of a graph.

    Domination status and clique complexes are constant on the cells between
    consecutive critical coordinates, so exhaustive checks over this grid are
    exhaustive over all of R^2.
    """

    xs: tuple[float, ...]
    ys: tuple[float, ...]

    @classmethod
    def of_graph(cls, graph: BifilteredGraph) -> "CriticalGrid":
        xs = sorted({g[0] for _, _, g in graph.edges()})
        ys = sorted({g[1] for _, _, g in graph.edges()})
        return cls(tuple(xs), tuple(ys))

    def points(self) -> list[Grade]:
        return [(x, y) for x in self.xs for y in self.ys]

    def right_up_successors(self, g: Grade) -> list[Grade]:
        i = self.xs.index(g[0])
        j = self.ys.index(g[1])
        out = []
        if i + 1 < len(self.xs):
            out.append((self.xs[i + 1], g[1]))
        if j + 1 < len(self.ys):
            out.append((g[0], self.ys[j + 1]))
        return out


# -- domination oracle -----------------------------------------------------


def dominated_in_plain(adj: list[set[int]], a: int, b: int) -> bool:
    """Is edge {a, b} dominated in a plain graph given as adjacency sets?

    True iff some common neighbor v of a and b is adjacent to every other
    common neighbor.  An empty common neighborhood is never dominated.
    """
    nbrs = adj[a] & adj[b]
    for v in sorted(nbrs):
        if all(w == v or w in adj[v] for w in nbrs):
            return True
    return False


def brute_force_filtration_dominated(graph: BifilteredGraph, e: Edge) -> bool:
    """Evaluate filtration-domination literally on every grid grade >= crit(e)."""
    if graph.grade_of(e.u, e.v) != e.grade:
        raise ValueError(f"edge ({e.u}, {e.v}) with grade {e.grade} not in graph")
    grid = CriticalGrid.of_graph(graph)
    for g in grid.points():
        if not leq(e.grade, g):
            continue
        adj = subgraph_at(graph, g)
        if not dominated_in_plain(adj, e.u, e.v):
            return False
    return True


# -- F2 linear algebra -----------------------------------------------------


def gf2_rank(mat: np.ndarray) -> int:
    """Rank over F2 via Gaussian elimination with XOR row operations."""
    m = np.array(mat, dtype=np.uint8, copy=True) % 2
    rows, cols = m.shape
    rank = 0
    for col in range(cols):
        pivot = -1
        for r in range(rank, rows):
            if m[r, col]:
                pivot = r
                break
        if pivot < 0:
            continue
        if pivot != rank:
            m[[rank, pivot]] = m[[pivot, rank]]
        hits = np.flatnonzero(m[rank + 1 :, col]) + rank + 1
        m[hits] ^= m[rank]
        rank += 1
        if rank == rows:
            break
    return rank


def gf2_nullspace(mat: np.ndarray) -> np.ndarray:
    """Basis of the right null space over F2, one column per basis vector.

    For an r x c matrix returns a c x k uint8 array with k = c - rank.
    """
    m = np.array(mat, dtype=np.uint8, copy=True) % 2
    rows, cols = m.shape
    pivot_of_col: dict[int, int] = {}
    rank = 0
    for col in range(cols):
        pivot = -1
        for r in range(rank, rows):
            if m[r, col]:
                pivot = r
                break
        if pivot < 0:
            continue
        if pivot != rank:
            m[[rank, pivot]] = m[[pivot, rank]]
        hits = np.flatnonzero(m[:, col]).tolist()
        for r in hits:
            if r != rank:
                m[r] ^= m[rank]
        pivot_of_col[col] = rank
        rank += 1
    free_cols = [c for c in range(cols) if c not in pivot_of_col]
    basis = np.zeros((cols, len(free_cols)), dtype=np.uint8)
    for k, f in enumerate(free_cols):
        basis[f, k] = 1
        for col, r in pivot_of_col.items():
            basis[col, k] = m[r, f]
    return basis


# -- clique complexes and Betti tables --------------------------------------


class SimplexBudgetExceeded(ValueError):
    def __init__(self, count: int, budget: int):
        super().__init__(f"clique complex has {count} simplices, budget is {budget}")
        self.count = count
        self.budget = budget


def clique_complex_at(adj: list[set[int]], max_dim: int = 3) -> list[list[tuple[int, ...]]]:
    """Simplices of the clique complex of a plain graph, by dimension.

    Returns [vertices, edges, triangles, tetrahedra][:max_dim+1], each a
    sorted list of ascending vertex tuples.
    """
    n = len(adj)
    verts = [(v,) for v in range(n)]
    edges = [(u, v) for u in range(n) for v in sorted(adj[u]) if v > u]
    out: list[list[tuple[int, ...]]] = [verts, edges]
    if max_dim >= 2:
        tris = []
        for u, v in edges:
            for w in sorted(adj[u] & adj[v]):
                if w > v:
                    tris.append((u, v, w))
        out.append(tris)
    if max_dim >= 3:
        tets = []
        for u, v, w in out[2]:
            for x in sorted(adj[u] & adj[v] & adj[w]):
                if x > w:
                    tets.append((u, v, w, x))
        out.append(tets)
    return out


def boundary_matrix(
    faces: list[tuple[int, ...]], simplices: list[tuple[int, ...]]
) -> np.ndarray:
    """F2 boundary matrix: rows indexed by faces, columns by simplices."""
    index = {f: i for i, f in enumerate(faces)}
    mat = np.zeros((len(faces), len(simplices)), dtype=np.uint8)
    for j, s in enumerate(simplices):
        for k in range(len(s)):
            mat[index[s[:k] + s[k + 1 :]], j] = 1
    return mat


@dataclass
class BettiTable:
    """Grid-indexed F2 Betti numbers of a clique bifiltration.

    betti maps each grid grade to (b0, b1, b2); step_ranks maps each
    (grade, immediate right/up grid successor) pair to the ranks of the
    inclusion-induced maps in dimensions 0..2.
    """

    grid: CriticalGrid
    betti: dict[Grade, tuple[int, int, int]] = field(default_factory=dict)
    step_ranks: dict[tuple[Grade, Grade], tuple[int, int, int]] = field(default_factory=dict)


def _complexes_on_grid(
    graph: BifilteredGraph, grid: CriticalGrid, max_simplices: int
) -> dict[Grade, list[list[tuple[int, ...]]]]:
    out = {}
    for g in grid.points():
        cx = clique_complex_at(subgraph_at(graph, g))
        count = sum(len(block) for block in cx)
        if count > max_simplices:
            raise SimplexBudgetExceeded(count, max_simplices)
        out[g] = cx
    return out


def _betti_numbers(cx: list[list[tuple[int, ...]]]) -> tuple[int, int, int]:
    ranks = [0] * 4  # rank of boundary map in dims 1..3 at indices 1..3
    for p in (1, 2, 3):
        if p < len(cx) and cx[p]:
            ranks[p] = gf2_rank(boundary_matrix(cx[p - 1], cx[p]))
    b = []
    for p in (0, 1, 2):
        n_p = len(cx[p]) if p < len(cx) else 0
        b.append(n_p - ranks[p] - ranks[p + 1])
    return tuple(b)  # type: ignore[return-value]


def _inclusion_ranks(
    cx_small: list[list[tuple[int, ...]]], cx_big: list[list[tuple[int, ...]]]
) -> tuple[int, int, int]:
    """Ranks of H_p(K) -> H_p(L) for K a subcomplex of L, p = 0, 1, 2.

    rank = rank([Z | B]) - rank(B), with Z a cycle basis of K embedded in
    L's chain coordinates and B the boundary columns of L in dimension p+1.
    """
    out = []
    for p in (0, 1, 2):
        small_p = cx_small[p] if p < len(cx_small) else []
        big_p = cx_big[p] if p < len(cx_big) else []
        if not small_p:
            out.append(0)
            continue
        if p == 0:
            cycles = np.eye(len(small_p), dtype=np.uint8)
        else:
            del_p = boundary_matrix(cx_small[p - 1], small_p)
            cycles = gf2_nullspace(del_p)
        index_big = {s: i for i, s in enumerate(big_p)}
        embedded = np.zeros((len(big_p), cycles.shape[1]), dtype=np.uint8)
        for i, s in enumerate(small_p):
            embedded[index_big[s]] = cycles[i]
        big_next = cx_big[p + 1] if p + 1 < len(cx_big) else []
        if big_next:
            bdry = boundary_matrix(big_p, big_next)
            out.append(gf2_rank(np.hstack([embedded, bdry])) - gf2_rank(bdry))
        else:
            out.append(gf2_rank(embedded))
    return tuple(out)  # type: ignore[return-value]


def betti_table(
    graph: BifilteredGraph,
    grid: CriticalGrid | None = None,
    max_simplices: int = 50_000,
) -> BettiTable:
    """Betti numbers and one-step inclusion ranks at every grid grade."""
    if grid is None:
        grid = CriticalGrid.of_graph(graph)
    complexes = _complexes_on_grid(graph, grid, max_simplices)
    table = BettiTable(grid)
    for g, cx in complexes.items():
        table.betti[g] = _betti_numbers(cx)
    for g in grid.points():
        for succ in grid.right_up_successors(g):
            table.step_ranks[(g, succ)] = _inclusion_ranks(complexes[g], complexes[succ])
    return table


# -- collapse verification ---------------------------------------------------


@dataclass
class VerifyReport:
    ok: bool
    detail: str | None = None


def verify_collapse(
    graph: BifilteredGraph,
    reduced: BifilteredGraph,
    max_simplices: int = 50_000,
) -> VerifyReport:
    """Certify that a reduced graph has the same clique-bifiltration homology.

    Both graphs are evaluated on the original graph's critical grid; Betti
    numbers in dimensions 0..2 and inclusion-map ranks to immediate grid
    successors must agree exactly.  Reports the first discrepancy found.
    """
    if reduced.n != graph.n:
        raise ValueError(f"vertex counts differ: {graph.n} vs {reduced.n}")
    for u, v, g in reduced.edges():
        if graph.grade_of(u, v) != g:
            raise ValueError(f"edge ({u}, {v})@{g} of reduced graph not in original")
    grid = CriticalGrid.of_graph(graph)
    t_full = betti_table(graph, grid, max_simplices)
    t_red = betti_table(reduced, grid, max_simplices)
    for g in grid.points():
        if t_full.betti[g] != t_red.betti[g]:
            return VerifyReport(
                False,
                f"betti mismatch at grade {g}: {t_full.betti[g]} vs {t_red.betti[g]}",
            )
    for pair, ranks in t_full.step_ranks.items():
        if t_red.step_ranks[pair] != ranks:
            return VerifyReport(
                False,
                f"inclusion-rank mismatch at {pair[0]} -> {pair[1]}: "
                f"{ranks} vs {t_red.step_ranks[pair]}",
            )
    return VerifyReport(True)


# -- random instances --------------------------------------------------------


def random_grid_graph(
    n: int,
    p: float,
    rng: np.random.Generator,
    grid_side: int = 4,
) -> BifilteredGraph:
    """Erdos-Renyi graph with i.i.d. integer grades from a grid_side^2 grid."""
    edges = []
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < p:
            grade = (float(rng.integers(grid_side)), float(rng.integers(grid_side)))
            edges.append(Edge(u, v, grade))
    return graph_from_edges(n, edges)


def brute_force_triangles(graph: BifilteredGraph) -> list[tuple[int, int, int, Grade]]:
    """All 3-cliques (u < v < w) with the join of their edge grades, cubically."""
    out = []
    for u in range(graph.n):
        for v in range(u + 1, graph.n):
            if not graph.has_edge(u, v):
                continue
            for w in range(v + 1, graph.n):
                if graph.has_edge(u, w) and graph.has_edge(v, w):
                    grade = join(
                        graph.grade_of(u, v),
                        join(graph.grade_of(u, w), graph.grade_of(v, w)),
                    )
                    out.append((u, v, w, grade))
    return out

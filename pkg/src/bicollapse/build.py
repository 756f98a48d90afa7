"""Point-cloud ingestion, KDE densities, and density-Rips graph construction.

A point cloud becomes a complete bifiltered graph: the first coordinate of an
edge grade is the negated smaller density of its endpoints (so denser points
enter earlier under the standard coordinate-wise order), the second is the
Euclidean distance.  Densities default to an unnormalized Gaussian kernel sum
whose bandwidth is the nearest-rank 20th percentile of the distinct pairwise
distances; any strictly monotone rescaling of densities yields the same graph
up to axis relabeling, so the normalization constant is omitted.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import IO, Iterable

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .core import BifilteredGraph, Edge, graph_from_edges

DATASET_KINDS = ("sphere", "uniform", "circle", "torus", "swiss-roll")


# -- distances and densities ---------------------------------------------------


def pairwise_distances(points: np.ndarray) -> np.ndarray:
    """Condensed Euclidean distances over unordered pairs, in (i < j) order."""
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or len(points) < 2:
        raise ValueError("need at least 2 points of uniform dimension")
    return pdist(points)


def kde_bandwidth(distances: np.ndarray) -> float:
    """Nearest-rank 20th percentile of the distinct distance values."""
    distinct = np.unique(np.asarray(distances, dtype=float))
    if distinct.size == 0 or distinct[-1] == 0.0:
        raise ValueError("degenerate cloud: all pairwise distances are zero")
    h = float(distinct[math.ceil(0.2 * distinct.size) - 1])
    if h == 0.0:
        raise ValueError("degenerate cloud: zero bandwidth at the 20th percentile")
    return h


def kde_density_from_matrix(dist: np.ndarray, h: float) -> np.ndarray:
    """Unnormalized Gaussian kernel sums from a square distance matrix.

    Row sums include the self term exp(0) = 1, so values are >= 1.
    """
    if h <= 0:
        raise ValueError("bandwidth must be positive")
    dist = np.asarray(dist, dtype=float)
    return np.exp(-(dist**2) / (2.0 * h * h)).sum(axis=1)


def kde_density(points: np.ndarray, h: float) -> np.ndarray:
    """Per-point unnormalized Gaussian KDE values."""
    points = np.asarray(points, dtype=float)
    if len(points) == 1:
        if h <= 0:
            raise ValueError("bandwidth must be positive")
        return np.ones(1)
    return kde_density_from_matrix(squareform(pairwise_distances(points)), h)


# -- density-Rips construction --------------------------------------------------


def density_rips_from_distances(
    dist: np.ndarray, densities: np.ndarray
) -> BifilteredGraph:
    """Complete graph graded by (-min endpoint density, distance)."""
    dist = np.asarray(dist, dtype=float)
    densities = np.asarray(densities, dtype=float)
    n = len(densities)
    if dist.shape != (n, n):
        raise ValueError(f"distance matrix shape {dist.shape} does not match {n} densities")
    neg = -densities
    edges = [
        Edge(u, v, (float(max(neg[u], neg[v])), float(dist[u, v])))
        for u in range(n)
        for v in range(u + 1, n)
    ]
    return graph_from_edges(n, edges)


def density_rips_graph(points: np.ndarray, densities: np.ndarray) -> BifilteredGraph:
    """Density-Rips bifiltered complete graph of a point cloud."""
    points = np.asarray(points, dtype=float)
    densities = np.asarray(densities, dtype=float)
    if len(points) != len(densities):
        raise ValueError("densities length does not match point count")
    return density_rips_from_distances(
        squareform(pairwise_distances(points)), densities
    )


# -- synthetic datasets ----------------------------------------------------------


def generate_dataset(kind: str, n: int, seed: int, **params) -> np.ndarray:
    """Seeded synthetic point clouds.

    sphere: unit 2-sphere in R^3 with an `outliers` fraction (default 0.1)
    drawn uniformly from [-2, 2]^3 and appended after the sphere points.
    uniform: [0, 1]^2.  circle: unit circle, optional gaussian `noise`.
    torus: surface with radii R=1, r=0.5, angle-uniform.  swiss-roll:
    (t cos t, y, t sin t) with t in [1.5pi, 4.5pi] and y in [0, 21].
    """
    if n < 2:
        raise ValueError("need n >= 2")
    rng = np.random.default_rng(seed)
    if kind == "uniform":
        return rng.uniform(0.0, 1.0, (n, 2))
    if kind == "circle":
        noise = params.get("noise", 0.0)
        theta = rng.uniform(0.0, 2.0 * math.pi, n)
        pts = np.column_stack([np.cos(theta), np.sin(theta)])
        if noise > 0:
            pts += rng.normal(0.0, noise, pts.shape)
        return pts
    if kind == "sphere":
        fraction = params.get("outliers", 0.1)
        k = int(round(fraction * n))
        gauss = rng.normal(size=(n - k, 3))
        gauss /= np.linalg.norm(gauss, axis=1, keepdims=True)
        outliers = rng.uniform(-2.0, 2.0, (k, 3))
        return np.vstack([gauss, outliers])
    if kind == "torus":
        big, small = params.get("R", 1.0), params.get("r", 0.5)
        theta = rng.uniform(0.0, 2.0 * math.pi, n)
        phi = rng.uniform(0.0, 2.0 * math.pi, n)
        ring = big + small * np.cos(phi)
        return np.column_stack(
            [ring * np.cos(theta), ring * np.sin(theta), small * np.sin(phi)]
        )
    if kind == "swiss-roll":
        t = rng.uniform(1.5 * math.pi, 4.5 * math.pi, n)
        y = rng.uniform(0.0, 21.0, n)
        return np.column_stack([t * np.cos(t), y, t * np.sin(t)])
    raise ValueError(f"unknown dataset kind {kind!r}, expected one of {DATASET_KINDS}")


# -- text inputs -------------------------------------------------------------------


def _data_lines(source: str | Path | IO[str]) -> Iterable[list[str]]:
    if isinstance(source, (str, Path)):
        with open(source) as fh:
            yield from _data_lines(fh)
        return
    for line in source:
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield stripped.replace(",", " ").split()


def load_points(source: str | Path | IO[str]) -> np.ndarray:
    """Point cloud from text: one point per line, 2 or 3 columns, CSV or
    whitespace separated; blank lines and # comments skipped."""
    rows = [[float(x) for x in fields] for fields in _data_lines(source)]
    if not rows:
        raise ValueError("empty point file")
    dims = {len(r) for r in rows}
    if len(dims) != 1 or dims.pop() not in (2, 3):
        raise ValueError("points must share one dimension, 2 or 3")
    pts = np.array(rows, dtype=float)
    if not np.isfinite(pts).all():
        raise ValueError("point coordinates must be finite")
    return pts


def load_lower_distance_matrix(source: str | Path | IO[str]) -> np.ndarray:
    """Square distance matrix from a strictly-lower-triangular text file.

    Line i carries the i distances to earlier points; a leading empty row
    (zero entries for the first point) may be omitted.
    """
    rows = [[float(x) for x in fields] for fields in _data_lines(source)]
    if rows and len(rows[0]) == 1:
        rows.insert(0, [])
    if not rows:
        raise ValueError("empty distance file")
    for i, row in enumerate(rows):
        if len(row) != i:
            raise ValueError(f"row {i} has {len(row)} entries, expected {i}")
    n = len(rows)
    dist = np.zeros((n, n))
    for i, row in enumerate(rows):
        for j, value in enumerate(row):
            if value < 0 or not math.isfinite(value):
                raise ValueError(f"invalid distance {value} at row {i}")
            dist[i, j] = dist[j, i] = value
    return dist


def load_densities(source: str | Path | IO[str]) -> np.ndarray:
    """Density override: one non-negative value per line."""
    values = []
    for fields in _data_lines(source):
        if len(fields) != 1:
            raise ValueError("density file must have one value per line")
        values.append(float(fields[0]))
    if not values:
        raise ValueError("empty density file")
    out = np.array(values, dtype=float)
    if (out < 0).any() or not np.isfinite(out).all():
        raise ValueError("densities must be finite and non-negative")
    return out

"""Graph representation, standard generators, Laplacian assembly, and edge-list I/O.

All graphs are finite, undirected, loopless, and weighted with nonnegative
edge weights. Randomized generators are deterministic given their seed.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

from .errors import (
    DataError,
    GenerationFailureError,
    InvalidParameterError,
    ParseError,
)

_SYM_TOL = 1e-12


@dataclass(frozen=True)
class Graph:
    """Weighted undirected graph.

    Attributes
    ----------
    adjacency : (n, n) ndarray
        Symmetric nonnegative weight matrix with zero diagonal.
    coordinates : (n, d) ndarray, optional
        Vertex positions for generators that have geometry.
    structure : str, optional
        Generator tag ("path", "ring", "grid", ...) used by selection
        strategies that rely on a meaningful index order.
    grid_shape : tuple, optional
        (rows, cols) for grid graphs.
    """

    adjacency: np.ndarray
    coordinates: np.ndarray | None = None
    structure: str | None = None
    grid_shape: tuple[int, int] | None = None

    def __post_init__(self):
        a = np.array(self.adjacency, dtype=float)  # defensive copy, frozen below
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InvalidParameterError("adjacency must be a square matrix")
        if not np.allclose(a, a.T, atol=_SYM_TOL, rtol=0.0):
            raise InvalidParameterError("adjacency must be symmetric")
        if np.any(np.diag(a) != 0.0):
            raise DataError("self-loops are not allowed (nonzero diagonal)")
        if np.any(a < 0.0):
            raise InvalidParameterError("edge weights must be nonnegative")
        a.flags.writeable = False
        object.__setattr__(self, "adjacency", a)
        if self.coordinates is not None:
            c = np.array(self.coordinates, dtype=float)
            if c.shape[0] != a.shape[0]:
                raise InvalidParameterError("coordinates must have one row per vertex")
            c.flags.writeable = False
            object.__setattr__(self, "coordinates", c)

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @property
    def num_edges(self) -> int:
        return int(np.count_nonzero(np.triu(self.adjacency)))

    def is_connected(self) -> bool:
        ncomp, _ = connected_components(self.adjacency, directed=False)
        return ncomp == 1

    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)


@dataclass(frozen=True)
class Laplacian:
    """Combinatorial Laplacian D - A together with its source graph."""

    matrix: np.ndarray
    graph: Graph = field(repr=False)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


def laplacian(graph: Graph) -> Laplacian:
    """Assemble the combinatorial Laplacian of ``graph``.

    The result has zero row sums and is positive semidefinite.
    """
    a = graph.adjacency
    m = np.diag(a.sum(axis=1)) - a
    m.flags.writeable = False
    return Laplacian(matrix=m, graph=graph)


# ---------------------------------------------------------------------------
# deterministic generators


def build_path(n: int) -> Graph:
    """Unit-weight chain 0-1-...-(n-1). Requires n >= 2."""
    if n < 2:
        raise InvalidParameterError("path graph needs n >= 2")
    a = np.zeros((n, n))
    idx = np.arange(n - 1)
    a[idx, idx + 1] = 1.0
    a[idx + 1, idx] = 1.0
    coords = np.column_stack([np.linspace(0.0, 1.0, n), np.zeros(n)])
    return Graph(a, coordinates=coords, structure="path")


def build_ring(n: int) -> Graph:
    """Unit-weight cycle on n >= 3 vertices."""
    if n < 3:
        raise InvalidParameterError("ring graph needs n >= 3")
    a = np.zeros((n, n))
    idx = np.arange(n)
    nxt = (idx + 1) % n
    a[idx, nxt] = 1.0
    a[nxt, idx] = 1.0
    theta = 2.0 * np.pi * idx / n
    coords = np.column_stack([np.cos(theta), np.sin(theta)])
    return Graph(a, coordinates=coords, structure="ring")


def build_grid(rows: int, cols: int) -> Graph:
    """4-connected 2-D grid with vertices in row-major order in [0, 1)^2."""
    if rows < 1 or cols < 1 or rows * cols < 2:
        raise InvalidParameterError("grid needs at least two vertices")
    n = rows * cols
    a = np.zeros((n, n))
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                a[v, v + 1] = a[v + 1, v] = 1.0
            if r + 1 < rows:
                a[v, v + cols] = a[v + cols, v] = 1.0
    rr, cc = np.divmod(np.arange(n), cols)
    coords = np.column_stack([cc / cols, rr / rows])
    return Graph(a, coordinates=coords, structure="grid", grid_shape=(rows, cols))


def build_complete(n: int) -> Graph:
    """Complete unit-weight graph K_n."""
    if n < 2:
        raise InvalidParameterError("complete graph needs n >= 2")
    a = np.ones((n, n)) - np.eye(n)
    return Graph(a, structure="complete")


def build_comet(n: int, center_degree: int) -> Graph:
    """Comet: a star with ``center_degree`` leaves and a path tail.

    Vertex 0 is the center, vertices 1..center_degree are the star leaves,
    and the remaining n - center_degree - 1 vertices form a path appended to
    the last leaf, so the center keeps degree exactly ``center_degree``.
    """
    if center_degree < 1 or n < center_degree + 1:
        raise InvalidParameterError("comet needs n >= center_degree + 1")
    a = np.zeros((n, n))
    for leaf in range(1, center_degree + 1):
        a[0, leaf] = a[leaf, 0] = 1.0
    prev = center_degree  # tail grows from the last leaf
    for v in range(center_degree + 1, n):
        a[prev, v] = a[v, prev] = 1.0
        prev = v
    return Graph(a, structure="comet")


def build_community(
    n: int,
    k_communities: int,
    p_in: float = 0.3,
    p_out: float = 0.01,
    seed: int = 0,
) -> Graph:
    """Random graph with k equal-size communities.

    Edges appear independently with probability ``p_in`` inside a community
    and ``p_out`` across communities. If the sample is disconnected the
    generator retries with an incremented seed (bounded).
    """
    if n < 2 or k_communities < 1 or k_communities > n:
        raise InvalidParameterError("infeasible community parameters")
    if not (0.0 <= p_out <= 1.0 and 0.0 < p_in <= 1.0):
        raise InvalidParameterError("probabilities must lie in [0, 1]")
    labels = np.arange(n) * k_communities // n  # equal-size blocks
    for attempt in range(100):
        rng = np.random.default_rng(seed + attempt)
        u = rng.random((n, n))
        u = np.triu(u, k=1)
        same = labels[:, None] == labels[None, :]
        p = np.where(same, p_in, p_out)
        a = ((u < p) & (np.triu(np.ones((n, n), dtype=bool), k=1))).astype(float)
        a = a + a.T
        g = Graph(a, structure="community")
        if g.is_connected():
            return g
    raise GenerationFailureError("community graph stayed disconnected after 100 seeds")


def build_random_regular(n: int, degree: int, seed: int = 0) -> Graph:
    """Random d-regular simple graph (pairing model with local repairs).

    Delegates to networkx, which resamples conflicting stub pairs instead of
    rejecting whole pairings (plain rejection is hopeless already at d ~ 10).
    """
    if degree < 1 or degree >= n:
        raise InvalidParameterError("need 1 <= degree < n")
    if (n * degree) % 2 != 0:
        raise InvalidParameterError("n * degree must be even")
    import networkx as nx

    try:
        g = nx.random_regular_graph(degree, n, seed=seed)
    except nx.NetworkXError as exc:
        raise GenerationFailureError(str(exc)) from exc
    a = nx.to_numpy_array(g, nodelist=range(n))
    return Graph(a, structure="regular")


def build_random_sensor(n: int, k_nearest: int = 6, seed: int = 0) -> Graph:
    """Random sensor graph: uniform points in [0, 1)^2, symmetrized k-NN.

    Edge weights are exp(-d^2 / (2 sigma^2)) with sigma the mean k-NN
    distance. Disconnected samples are regenerated with an incremented seed.
    """
    if n < 2 or k_nearest < 1 or k_nearest >= n:
        raise InvalidParameterError("need 1 <= k_nearest < n")
    for attempt in range(100):
        rng = np.random.default_rng(seed + attempt)
        pts = rng.random((n, 2))
        tree = cKDTree(pts)
        dist, nbr = tree.query(pts, k=k_nearest + 1)  # first hit is the point itself
        dist, nbr = dist[:, 1:], nbr[:, 1:]
        sigma = dist.mean()
        a = np.zeros((n, n))
        for i in range(n):
            w = np.exp(-dist[i] ** 2 / (2.0 * sigma**2))
            a[i, nbr[i]] = np.maximum(a[i, nbr[i]], w)
        a = np.maximum(a, a.T)
        g = Graph(a, coordinates=pts, structure="sensor")
        if g.is_connected():
            return g
    raise GenerationFailureError("sensor graph stayed disconnected after 100 seeds")


# ---------------------------------------------------------------------------
# edge-list I/O
#
# Format: one undirected edge per line "src,dst,weight" with 0-based integer
# vertex indices; lines starting with '#' are comments. Coordinates go in a
# sidecar CSV "vertex,x,y".


def save_edge_list(graph: Graph, path, coordinates_path=None) -> None:
    with open(path, "w") as fh:
        fh.write("# src,dst,weight\n")
        src, dst = np.nonzero(np.triu(graph.adjacency))
        for i, j in zip(src, dst):
            fh.write(f"{i},{j},{float(graph.adjacency[i, j])!r}\n")
    if coordinates_path is not None:
        if graph.coordinates is None:
            raise InvalidParameterError("graph has no coordinates to save")
        with open(coordinates_path, "w") as fh:
            fh.write("# vertex,x,y\n")
            for v, (x, y) in enumerate(graph.coordinates[:, :2]):
                fh.write(f"{v},{float(x)!r},{float(y)!r}\n")


def load_edge_list(path, coordinates_path=None) -> Graph:
    """Load a graph from an edge-list CSV; weights are symmetrized.

    Raises ParseError for malformed lines and DataError for self-loops or
    duplicate edges with conflicting weights.
    """
    edges: dict[tuple[int, int], float] = {}
    nmax = -1
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(",")
            if len(parts) != 3:
                raise ParseError(f"expected 'src,dst,weight', got {line!r}", lineno)
            try:
                i, j, w = int(parts[0]), int(parts[1]), float(parts[2])
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from exc
            if i < 0 or j < 0:
                raise ParseError("vertex indices must be nonnegative", lineno)
            if i == j:
                raise DataError(f"self-loop on vertex {i} (line {lineno})")
            if w < 0:
                raise DataError(f"negative weight on line {lineno}")
            key = (min(i, j), max(i, j))
            if key in edges and abs(edges[key] - w) > 1e-12:
                raise DataError(
                    f"conflicting weights for edge {key}: {edges[key]} vs {w}"
                )
            edges[key] = w
            nmax = max(nmax, i, j)
    if nmax < 1:
        raise DataError("edge list defines fewer than two vertices")
    n = nmax + 1
    a = np.zeros((n, n))
    for (i, j), w in edges.items():
        a[i, j] = a[j, i] = w
    coords = None
    if coordinates_path is not None:
        coords = np.zeros((n, 2))
        with open(coordinates_path) as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                parts = line.split(",")
                if len(parts) != 3:
                    raise ParseError(f"expected 'vertex,x,y', got {line!r}", lineno)
                try:
                    v, x, y = int(parts[0]), float(parts[1]), float(parts[2])
                except ValueError as exc:
                    raise ParseError(str(exc), lineno) from exc
                if not 0 <= v < n:
                    raise ParseError(f"vertex {v} out of range", lineno)
                coords[v] = (x, y)
    return Graph(a, coordinates=coords)

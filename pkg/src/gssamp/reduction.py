"""Graph-size reduction and partitioning.

Kron reduction (Schur complement of the eliminated vertex block), optional
edge sparsification, vertex-selection strategies, spectral bisection, and the
two-cluster band-limited test-signal construction.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import InvalidParameterError, NumericError
from .graphs import Graph, Laplacian
from .sampling import VertexCorrespondence
from .spectral import SpectralBasis

_NEG_WEIGHT_TOL = 1e-10


@dataclass(frozen=True)
class ReductionResult:
    graph: Graph
    correspondence: VertexCorrespondence
    keep: np.ndarray


def kron_reduce(lap: Laplacian, keep) -> ReductionResult:
    """Eliminate all vertices outside ``keep`` via the Schur complement.

    L1 = L_SS - L_{S,Sc} L_{Sc,Sc}^{-1} L_{Sc,S}. For a connected loopless
    graph the result is again a Laplacian; tiny negative off-diagonal
    round-off is clamped to zero.
    """
    keep = np.sort(np.asarray(sorted(set(keep)), dtype=int))
    n = lap.n
    if keep.size == 0 or keep.size >= n:
        raise InvalidParameterError("keep set must be a nonempty proper subset")
    if keep.min() < 0 or keep.max() >= n:
        raise InvalidParameterError("keep set indices out of range")
    mask = np.zeros(n, dtype=bool)
    mask[keep] = True
    elim = np.nonzero(~mask)[0]
    m = lap.matrix
    l_ss = m[np.ix_(keep, keep)]
    l_se = m[np.ix_(keep, elim)]
    l_ee = m[np.ix_(elim, elim)]
    try:
        solved = scipy.linalg.solve(l_ee, m[np.ix_(elim, keep)], assume_a="sym")
    except scipy.linalg.LinAlgError as exc:
        raise NumericError(f"eliminated block is singular: {exc}") from exc
    l1 = l_ss - l_se @ solved
    l1 = 0.5 * (l1 + l1.T)
    w = -l1.copy()
    np.fill_diagonal(w, 0.0)
    if np.any(w < -_NEG_WEIGHT_TOL):
        raise NumericError(
            f"Kron reduction produced negative weight {w.min():.3e}; "
            "input graph is likely disconnected"
        )
    w = np.maximum(w, 0.0)
    coords = None
    if lap.graph.coordinates is not None:
        coords = lap.graph.coordinates[keep]
    graph = Graph(w, coordinates=coords)
    return ReductionResult(
        graph=graph, correspondence=VertexCorrespondence(keep), keep=keep
    )


def sparsify(graph: Graph, threshold_ratio: float) -> Graph:
    """Drop edges lighter than threshold_ratio * max weight, keeping connectivity.

    If the thresholded graph is disconnected, removed edges are restored in
    decreasing weight order until it reconnects.
    """
    if not 0.0 <= threshold_ratio < 1.0:
        raise InvalidParameterError("threshold_ratio must be in [0, 1)")
    a = graph.adjacency.copy()
    if threshold_ratio == 0.0 or a.max() == 0.0:
        return graph
    cutoff = threshold_ratio * a.max()
    weak = (a > 0) & (a < cutoff)
    a[weak] = 0.0
    candidate = Graph(a, coordinates=graph.coordinates,
                      structure=graph.structure, grid_shape=graph.grid_shape)
    if candidate.is_connected():
        return candidate
    removed = [
        (graph.adjacency[i, j], i, j)
        for i, j in zip(*np.nonzero(np.triu(weak)))
    ]
    removed.sort(reverse=True)
    for w, i, j in removed:
        a[i, j] = a[j, i] = w
        candidate = Graph(a, coordinates=graph.coordinates,
                          structure=graph.structure, grid_shape=graph.grid_shape)
        if candidate.is_connected():
            return candidate
    return candidate


def select_every_other(graph: Graph, m: int):
    """Keep indices 0 mod M on path/ring structures; stride sqrt(M) on grids."""
    if m < 2:
        raise InvalidParameterError("rate must be >= 2")
    if graph.structure in ("path", "ring"):
        return np.arange(0, graph.n, m)
    if graph.structure == "grid":
        s = round(m**0.5)
        if s * s != m:
            raise InvalidParameterError("grid selection needs a square rate")
        rows, cols = graph.grid_shape
        keep = [
            r * cols + c for r in range(0, rows, s) for c in range(0, cols, s)
        ]
        return np.asarray(keep)
    raise InvalidParameterError(
        f"no index-structured selection for structure {graph.structure!r}"
    )


def select_polarity(basis: SpectralBasis, target_size: int) -> np.ndarray:
    """Vertex set from the sign pattern of the top eigenvector.

    Start with the vertices where the largest-eigenvalue eigenvector is
    positive, then grow/shrink to ``target_size`` by |entry| ranking
    (ties broken by index). Deterministic given the basis.
    """
    if not 0 < target_size < basis.n:
        raise InvalidParameterError("target_size must be in (0, n)")
    u = basis.eigenvectors[:, -1]
    mag_order = np.lexsort((np.arange(basis.n), -np.abs(u)))
    selected = set(np.nonzero(u > 0)[0].tolist())
    if len(selected) > target_size:
        # drop the smallest-magnitude positives
        for v in mag_order[::-1]:
            if len(selected) == target_size:
                break
            selected.discard(int(v))
    else:
        for v in mag_order:
            if len(selected) == target_size:
                break
            selected.add(int(v))
    return np.sort(np.fromiter(selected, dtype=int))


def spectral_bisection(basis: SpectralBasis) -> tuple[np.ndarray, np.ndarray]:
    """Split vertices by the sign of the Fiedler vector.

    Zero entries join the nonnegative cluster. Requires a connected graph
    (positive second eigenvalue).
    """
    if basis.n < 2 or basis.eigenvalues[1] <= 1e-10:
        raise InvalidParameterError("spectral bisection needs a connected graph")
    fiedler = basis.eigenvectors[:, 1]
    pos = np.nonzero(fiedler >= 0)[0]
    neg = np.nonzero(fiedler < 0)[0]
    return pos, neg


def make_cluster_band_signal(
    basis: SpectralBasis, clusters, bands
) -> np.ndarray:
    """Two-cluster test signal with one spectral band per cluster.

    f_j[n] = 1{n in cluster j} * sum_k u_k[n] 1{band_j contains lambda_k};
    the result is f_1/||f_1||_inf + f_2/||f_2||_inf.
    """
    if len(clusters) != 2 or len(bands) != 2:
        raise InvalidParameterError("need exactly two clusters and two bands")
    out = np.zeros(basis.n)
    for cluster, (lo, hi) in zip(clusters, bands):
        if lo > hi or lo < 0 or hi > basis.lambda_max * (1 + 1e-12):
            raise InvalidParameterError(f"band [{lo}, {hi}] out of range")
        in_band = (basis.eigenvalues >= lo) & (basis.eigenvalues <= hi)
        if not np.any(in_band):
            raise InvalidParameterError(f"band [{lo}, {hi}] contains no eigenvalue")
        comp = np.zeros(basis.n)
        idx = np.asarray(cluster, dtype=int)
        comp[idx] = basis.eigenvectors[np.ix_(idx, np.nonzero(in_band)[0])].sum(axis=1)
        peak = np.abs(comp).max()
        if peak == 0.0:
            raise InvalidParameterError("band signal vanishes on its cluster")
        out += comp / peak
    return out

"""Laplacian eigendecomposition, graph Fourier transform, and spectrum interpolation.

Eigenpairs are ordered ascending with a deterministic tie-break inside
repeated-eigenvalue groups; the graph Fourier transform of a signal f is
U^T f with U the orthonormal eigenvector matrix.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import InvalidParameterError, NumericError, RangeError
from .graphs import Laplacian

_GROUP_TOL_SCALE = 1e-8


@dataclass(frozen=True)
class SpectralBasis:
    """Ordered eigenpairs of a Laplacian.

    eigenvalues : (n,) ascending, first value 0 for connected graphs
    eigenvectors : (n, n) orthonormal, column i pairs with eigenvalues[i]
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        lam = np.asarray(self.eigenvalues, dtype=float)
        u = np.asarray(self.eigenvectors)
        lam.flags.writeable = False
        u.flags.writeable = False
        object.__setattr__(self, "eigenvalues", lam)
        object.__setattr__(self, "eigenvectors", u)

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[-1])


@dataclass(frozen=True)
class Spectrum:
    """GFT coefficients together with the eigenvalue grid indexing them."""

    coefficients: np.ndarray
    grid: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coefficients)
        g = np.asarray(self.grid, dtype=float)
        if c.shape != g.shape:
            raise InvalidParameterError("coefficients and grid sizes differ")
        c.flags.writeable = False
        g.flags.writeable = False
        object.__setattr__(self, "coefficients", c)
        object.__setattr__(self, "grid", g)

    @property
    def n(self) -> int:
        return self.coefficients.shape[0]


def _canonicalize_signs(u: np.ndarray) -> np.ndarray:
    """Flip columns so the first entry with magnitude > 1e-10 is positive."""
    u = u.copy()
    for i in range(u.shape[1]):
        col = u[:, i]
        nz = np.nonzero(np.abs(col) > 1e-10)[0]
        if nz.size and col[nz[0]] < 0:
            u[:, i] = -col
    return u


def eigenvalue_groups(eigenvalues: np.ndarray) -> list[np.ndarray]:
    """Index groups of numerically repeated eigenvalues."""
    lam = np.asarray(eigenvalues, dtype=float)
    tol = _GROUP_TOL_SCALE * max(1.0, float(lam[-1]))
    groups: list[list[int]] = [[0]]
    for i in range(1, lam.size):
        if lam[i] - lam[groups[-1][0]] <= tol and lam[i] - lam[i - 1] <= tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    return [np.asarray(g) for g in groups]


def eigendecompose(lap: Laplacian, ordering_seed: int | None = None) -> SpectralBasis:
    """Full symmetric eigendecomposition with deterministic ordering.

    Within each repeated-eigenvalue group, columns are sign-canonicalized and
    sorted lexicographically by their entries; ``ordering_seed`` then applies
    a random permutation inside each group (used to probe the freedom of
    eigenvector order for repeated eigenvalues).
    """
    m = np.asarray(lap.matrix, dtype=float)
    if not np.allclose(m, m.T, atol=1e-10, rtol=0.0):
        raise InvalidParameterError("Laplacian matrix must be symmetric")
    try:
        lam, u = scipy.linalg.eigh(m)
    except scipy.linalg.LinAlgError as exc:  # pragma: no cover
        raise NumericError(f"eigensolver failed: {exc}") from exc
    order = np.argsort(lam, kind="stable")
    lam, u = lam[order], u[:, order]
    u = _canonicalize_signs(u)
    rng = np.random.default_rng(ordering_seed) if ordering_seed is not None else None
    for g in eigenvalue_groups(lam):
        if g.size > 1:
            block = u[:, g]
            # lexicographic column order: compare entry 0, then 1, ...
            key = np.lexsort(block[::-1])
            u[:, g] = block[:, key]
            if rng is not None:
                u[:, g] = u[:, g][:, rng.permutation(g.size)]
    return SpectralBasis(eigenvalues=lam, eigenvectors=u)


def gft(basis: SpectralBasis, signal: np.ndarray) -> Spectrum:
    """Forward graph Fourier transform U^T f."""
    f = np.asarray(signal)
    if f.shape != (basis.n,):
        raise InvalidParameterError(
            f"signal length {f.shape} does not match basis size {basis.n}"
        )
    return Spectrum(basis.eigenvectors.T @ f, basis.eigenvalues)


def igft(basis: SpectralBasis, spectrum: Spectrum | np.ndarray) -> np.ndarray:
    """Inverse graph Fourier transform U @ coefficients."""
    c = spectrum.coefficients if isinstance(spectrum, Spectrum) else np.asarray(spectrum)
    if c.shape != (basis.n,):
        raise InvalidParameterError(
            f"coefficient length {c.shape} does not match basis size {basis.n}"
        )
    return basis.eigenvectors @ c


def collapse_duplicate_nodes(
    grid: np.ndarray, values: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Average values sharing an abscissa within the grouping tolerance."""
    grid = np.asarray(grid, dtype=float)
    values = np.asarray(values, dtype=float)
    xs, ys = [], []
    for g in eigenvalue_groups(grid):
        xs.append(grid[g].mean())
        ys.append(values[g].mean())
    return np.asarray(xs), np.asarray(ys)


def _interpolator_arrays(spectrum: Spectrum) -> tuple[np.ndarray, np.ndarray]:
    return collapse_duplicate_nodes(spectrum.grid, spectrum.coefficients)


def sample_interpolant(spectrum: Spectrum, queries: np.ndarray) -> np.ndarray:
    """Vectorized piecewise-linear evaluation; queries are clamped to the grid range."""
    xs, ys = _interpolator_arrays(spectrum)
    q = np.clip(np.asarray(queries, dtype=float), xs[0], xs[-1])
    return np.interp(q, xs, ys)


def interpolate_spectrum(spectrum: Spectrum, lambda_query: float) -> float:
    """Evaluate the piecewise-linear spectrum interpolant at one frequency.

    Duplicate abscissae (repeated eigenvalues) are collapsed by averaging
    before interpolation. Queries outside [0, lambda_max] raise RangeError.
    """
    xs, ys = _interpolator_arrays(spectrum)
    lam_max = float(spectrum.grid[-1])
    tol = 1e-9 * max(1.0, lam_max)
    if lambda_query < -tol or lambda_query > lam_max + tol:
        raise RangeError(
            f"query {lambda_query} outside spectrum range [0, {lam_max}]"
        )
    return float(np.interp(np.clip(lambda_query, xs[0], xs[-1]), xs, ys))

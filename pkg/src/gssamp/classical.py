"""Classical time/DFT-domain sampling, used as the oracle for ring-graph equivalences.

Conventions: the forward DFT is unnormalized, F[k] = sum_n f[n] exp(-2j pi k n / N),
and the inverse carries 1/N. The DFT-domain downsampler therefore divides the
summed aliasing terms by M so that it matches time-domain decimation exactly.
"""
from __future__ import annotations

import numpy as np

from .errors import InvalidParameterError


def downsample_time(f: np.ndarray, m: int) -> np.ndarray:
    """(D1) retain every m-th sample; m must divide len(f)."""
    f = np.asarray(f)
    n = f.shape[0]
    if m < 1 or n % m != 0:
        raise InvalidParameterError(f"rate {m} must divide signal length {n}")
    return f[::m].copy()


def downsample_dft(f: np.ndarray, m: int) -> np.ndarray:
    """(D2) fold the DFT spectrum: F_d[k] = (1/m) sum_p F[p N/m + k]."""
    f = np.asarray(f)
    n = f.shape[0]
    if m < 1 or n % m != 0:
        raise InvalidParameterError(f"rate {m} must divide signal length {n}")
    spec = np.fft.fft(f)
    folded = spec.reshape(m, n // m).sum(axis=0) / m
    out = np.fft.ifft(folded)
    return out.real if np.isrealobj(f) else out


def upsample_time(f: np.ndarray, l: int) -> np.ndarray:
    """(U1) insert l-1 zeros between samples."""
    f = np.asarray(f)
    if l < 1:
        raise InvalidParameterError("rate must be >= 1")
    out = np.zeros(f.shape[0] * l, dtype=f.dtype)
    out[::l] = f
    return out


def upsample_dft(f: np.ndarray, l: int) -> np.ndarray:
    """(U2) repeat the DFT spectrum l times: F_u[p N + k] = F[k]."""
    f = np.asarray(f)
    if l < 1:
        raise InvalidParameterError("rate must be >= 1")
    spec = np.tile(np.fft.fft(f), l)
    out = np.fft.ifft(spec)
    return out.real if np.isrealobj(f) else out


def dft_matrix(n: int) -> np.ndarray:
    """Unitary synthesis DFT matrix; column k is exp(2j pi k t / n) / sqrt(n)."""
    t = np.arange(n)
    return np.exp(2j * np.pi * np.outer(t, t) / n) / np.sqrt(n)


def ring_sampling_bases(n0: int, n1: int) -> tuple[np.ndarray, np.ndarray]:
    """DFT eigenvector matrices (U0, U1) for a ring-graph sampling pair.

    The DFT matrix diagonalizes the ring-graph Laplacian. U0 is the unitary
    DFT basis of size n0; U1 is the size-n1 basis rescaled by 1/sqrt(rate)
    so that index-domain spectral sampling between the two rings coincides
    numerically with classical time-domain sampling at rate max/min(n0, n1).
    """
    if n0 < 1 or n1 < 1:
        raise InvalidParameterError("sizes must be positive")
    big, small = max(n0, n1), min(n0, n1)
    if big % small != 0:
        raise InvalidParameterError("one size must divide the other")
    rate = big // small
    return dft_matrix(n0), dft_matrix(n1) / np.sqrt(rate)

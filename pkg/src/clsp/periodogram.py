"""Cumulated Lomb-Scargle periodogram and harmonic least-squares criterion.

For a candidate frequency f and harmonic count K, the cumulated periodogram is

    Lambda_n(f) = n^-2 sum_{k=1..K} |sum_j Y_j exp(-2i*pi*k*f*X_j)|^2

and the least-squares criterion is the residual sum of squares of the best
harmonic fit at f, evaluated through the Gram system G ctilde = n chat.

All inner sums are evaluated with one complex exponential per sample and
incremental powers across harmonics (O(nK), phase error ~ K ulp).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ConfigurationError, NumericalError, SingularGramError
from .sampling import TimeSeries

# Condition number above which the Gram matrix counts as numerically singular.
GRAM_COND_LIMIT = 1e12


def empirical_char_fn(times, t: float) -> complex:
    """Empirical characteristic function n^-1 sum_j exp(i t X_j)."""
    x = np.asarray(times, dtype=float)
    if x.size == 0:
        raise ConfigurationError("times must be nonempty")
    return complex(np.exp(1j * t * x).mean())


def _clsp_kernel(times: np.ndarray, values: np.ndarray, f: float, K: int) -> float:
    z = np.exp(-2j * np.pi * f * times)
    p = values * z
    acc = 0.0
    for _ in range(K):
        sk = p.sum()
        acc += sk.real**2 + sk.imag**2
        p *= z
    n = times.size
    return acc / (n * n)


def clsp(data: TimeSeries, f: float, K: int) -> float:
    """Cumulated Lomb-Scargle periodogram at a single frequency."""
    if not f > 0:
        raise ConfigurationError(f"frequency must be positive, got {f!r}")
    if K < 1:
        raise ConfigurationError(f"harmonic count must be >= 1, got {K!r}")
    return _clsp_kernel(data.times, data.values, f, K)


def clsp_grid(data: TimeSeries, grid, K: int, workers: int = 1) -> np.ndarray:
    """Periodogram values over a frequency grid.

    ``grid`` is a FrequencyGrid or any array of positive frequencies. Each
    point goes through the same single-frequency kernel, so the result is
    bitwise identical regardless of ``workers`` or chunking.
    """
    freqs = np.asarray(getattr(grid, "points", grid), dtype=float)
    if freqs.size == 0:
        raise ConfigurationError("frequency grid must be nonempty")
    if np.any(freqs <= 0):
        raise ConfigurationError("all grid frequencies must be positive")
    if K < 1:
        raise ConfigurationError(f"harmonic count must be >= 1, got {K!r}")
    t, y = data.times, data.values

    def chunk_values(chunk: np.ndarray) -> np.ndarray:
        return np.array([_clsp_kernel(t, y, f, K) for f in chunk])

    if workers <= 1 or freqs.size < 2:
        return chunk_values(freqs)
    chunks = np.array_split(freqs, min(4 * workers, freqs.size))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(chunk_values, chunks))
    return np.concatenate(parts)


@dataclass(frozen=True, eq=False)
class GramSystem:
    """Gram matrix and empirical coefficients of the harmonic regression.

    G is the Hermitian Toeplitz matrix G[k,l] = sum_j exp(-2i*pi*(k-l)*f*X_j)
    for k,l in [-K, K] (row/column index k + K), with diagonal exactly n.
    c_hat[l + K] = n^-1 sum_j Y_j exp(-2i*pi*l*f*X_j).
    """

    G: np.ndarray
    c_hat: np.ndarray
    n: int

    @property
    def K(self) -> int:
        return (self.c_hat.size - 1) // 2


def gram_system(times, values, f: float, K: int) -> GramSystem:
    """Build the Gram system from the 4K+1 distinct difference sums."""
    t = np.asarray(times, dtype=float)
    y = np.asarray(values, dtype=float)
    if not f > 0:
        raise ConfigurationError(f"frequency must be positive, got {f!r}")
    if K < 1:
        raise ConfigurationError(f"harmonic count must be >= 1, got {K!r}")
    n = t.size
    z = np.exp(-2j * np.pi * f * t)
    yc = y.astype(complex)

    # d[m] = sum_j z_j^m for m = 0..2K; the m = 0 sum is exactly n.
    d = np.empty(2 * K + 1, dtype=complex)
    d[0] = n
    chat_pos = np.empty(K + 1, dtype=complex)
    chat_pos[0] = yc.sum() / n
    p = z.copy()
    for m in range(1, 2 * K + 1):
        d[m] = p.sum()
        if m <= K:
            chat_pos[m] = np.dot(yc, p) / n
        p *= z

    G = scipy.linalg.toeplitz(d, np.conj(d))
    c_hat = np.concatenate([np.conj(chat_pos[1:])[::-1], chat_pos])
    return GramSystem(G, c_hat, n)


def ls_criterion(data: TimeSeries, f: float, K: int) -> float:
    """Residual sum of squares of the best harmonic fit at frequency f.

    Returns sum_j Y_j^2 - n^2 chat* G^-1 chat. The quadratic form is real
    and nonnegative for the Hermitian PSD Gram matrix; its imaginary residue
    (checked against 1e-8 relative) is discarded.

    Raises
    ------
    SingularGramError
        If cond(G) exceeds GRAM_COND_LIMIT, e.g. near-regular times at a
        resonant frequency.
    """
    if data.n < 2 * K + 1:
        raise ConfigurationError(f"need n >= 2K+1 = {2 * K + 1}, got n = {data.n}")
    sys = gram_system(data.times, data.values, f, K)
    return _ls_from_gram(sys, float(np.dot(data.values, data.values)), f, K)


def _ls_from_gram(sys: GramSystem, sum_sq: float, f: float, K: int) -> float:
    cond = float(np.linalg.cond(sys.G))
    if not np.isfinite(cond) or cond > GRAM_COND_LIMIT:
        raise SingularGramError(f, K, cond)
    # Hermitian indefinite factorization with diagonal pivoting.
    x = scipy.linalg.solve(sys.G, sys.c_hat, assume_a="her")
    quad = sys.n**2 * np.vdot(sys.c_hat, x)
    scale = max(abs(quad), sum_sq, 1e-300)
    if abs(quad.imag) > 1e-8 * scale:
        raise NumericalError(
            f"quadratic form has imaginary residue {quad.imag:.3g} at f={f!r}"
        )
    return sum_sq - max(quad.real, 0.0)


def dump_periodogram(freqs, values, path) -> None:
    """Write a criterion scan as CSV rows 'f,lambda' at full double precision."""
    freqs = np.asarray(freqs, dtype=float)
    values = np.asarray(values, dtype=float)
    with open(path, "w") as fh:
        fh.write("f,lambda\n")
        for f, v in zip(freqs, values):
            fh.write(f"{f:.17g},{v:.17g}\n")

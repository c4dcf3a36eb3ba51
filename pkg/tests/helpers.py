"""Shared test fixtures and independent oracles.

Oracles here deliberately avoid the library's fast paths: brute-force double
sums, quadrature, finite differences and explicit design-matrix least squares.
"""

import numpy as np

from clsp.sampling import RenewalScheme, TimeSeries, observe, sample_instants
from clsp.signal import PeriodicSignal

EXP5 = RenewalScheme.exponential(5.0)


def random_signal(rng, degree: int, f_star: float = 0.25) -> PeriodicSignal:
    """Random non-constant signal with O(1) coefficients."""
    half = rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1)
    half[0] = rng.normal()
    return PeriodicSignal(f_star, half)


def renewal_series(signal, n, sigma, seed, scheme=EXP5) -> TimeSeries:
    instants = sample_instants(scheme, n, seed)
    return observe(signal, instants, sigma, seed + 1_000_003)


def clsp_brute_force(times, values, f, K) -> float:
    """Double-sum form: sum_k n^-2 sum_{j,j'} Y_j Y_j' cos(2 pi k f (X_j - X_j'))."""
    x = np.asarray(times, dtype=float)
    y = np.asarray(values, dtype=float)
    diff = np.subtract.outer(x, x)
    yy = np.outer(y, y)
    n = x.size
    return sum(float((yy * np.cos(2 * np.pi * k * f * diff)).sum()) for k in range(1, K + 1)) / n**2


def gram_brute_force(times, f, K) -> np.ndarray:
    x = np.asarray(times, dtype=float)
    ks = np.arange(-K, K + 1)
    G = np.empty((2 * K + 1, 2 * K + 1), dtype=complex)
    for a, k in enumerate(ks):
        for b, l in enumerate(ks):
            G[a, b] = np.exp(-2j * np.pi * (k - l) * f * x).sum()
    return G


def ls_direct_minimization(times, values, f, K) -> float:
    """Explicit design-matrix least squares, residual evaluated directly."""
    x = np.asarray(times, dtype=float)
    y = np.asarray(values, dtype=float)
    design = np.exp(2j * np.pi * f * np.outer(x, np.arange(-K, K + 1)))
    coef, *_ = np.linalg.lstsq(design, y.astype(complex), rcond=None)
    return float(np.sum((y - (design @ coef).real) ** 2))

"""Grid maximization of the periodogram / minimization of the LS criterion.

The frequency estimate is the best grid point of the chosen criterion, ties
broken deterministically toward the lowest frequency. Optional refinement
takes a single parabolic-interpolation step through the winning point and its
two neighbors; the vertex replaces the winner only when the parabola bends
the right way, the vertex stays within one mesh, and the re-evaluated
criterion does not get worse.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, SingularGramError
from .periodogram import clsp, clsp_grid, ls_criterion
from .sampling import TimeSeries


@dataclass(frozen=True)
class FrequencyGrid:
    """Regular frequency grid f_min + i*mesh, i = 0..floor((f_max-f_min)/mesh).

    Points are generated by index arithmetic (never repeated addition) so a
    ~6400-point grid carries no accumulation drift; the last point never
    exceeds f_max.
    """

    f_min: float
    f_max: float
    mesh: float

    def __post_init__(self):
        if not (np.isfinite(self.f_min) and self.f_min > 0):
            raise ConfigurationError(f"f_min must be positive, got {self.f_min!r}")
        if not (np.isfinite(self.f_max) and self.f_max > self.f_min):
            raise ConfigurationError("f_max must exceed f_min")
        if not (np.isfinite(self.mesh) and self.mesh > 0):
            raise ConfigurationError(f"mesh must be positive, got {self.mesh!r}")

    @property
    def size(self) -> int:
        count = int(math.floor((self.f_max - self.f_min) / self.mesh + 1e-9)) + 1
        while self.f_min + (count - 1) * self.mesh > self.f_max * (1 + 1e-12):
            count -= 1
        return count

    @property
    def points(self) -> np.ndarray:
        return self.f_min + self.mesh * np.arange(self.size)

    def point(self, i: int) -> float:
        return self.f_min + i * self.mesh


@dataclass(frozen=True)
class EstimateResult:
    """Outcome of a grid scan: winning frequency and bookkeeping."""

    f_hat: float
    criterion_value: float
    method: str  # "CLSP" | "LS"
    K: int
    refined: bool
    grid_index: int
    skipped_indices: tuple = ()

    def to_json_dict(self) -> dict:
        return {
            "f_hat": self.f_hat,
            "criterion_value": self.criterion_value,
            "method": self.method,
            "K": self.K,
            "refined": self.refined,
            "grid_index": self.grid_index,
            "skipped_indices": list(self.skipped_indices),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


def _parabolic_step(
    freqs: np.ndarray,
    values: np.ndarray,
    idx: int,
    mesh: float,
    evaluate,
    maximize: bool,
):
    """One parabolic-interpolation refinement at interior winner ``idx``.

    Returns (f_hat, value, refined). The vertex is accepted only if the
    parabola is concave (maximization) or convex (minimization), lies within
    one mesh of the winner, and does not worsen the re-evaluated criterion.
    """
    f0, v0 = float(freqs[idx]), float(values[idx])
    if idx == 0 or idx == freqs.size - 1:
        return f0, v0, False
    vm, vp = float(values[idx - 1]), float(values[idx + 1])
    denom = vm - 2.0 * v0 + vp
    if maximize:
        bends_right_way = denom < 0
    else:
        bends_right_way = denom > 0
    if not bends_right_way:
        return f0, v0, False
    delta = 0.5 * (vm - vp) / denom
    if abs(delta) > 1.0:
        return f0, v0, False
    vertex = f0 + delta * mesh
    try:
        v_vertex = evaluate(vertex)
    except SingularGramError:
        return f0, v0, False
    better = v_vertex >= v0 if maximize else v_vertex <= v0
    if not better:
        return f0, v0, False
    return vertex, float(v_vertex), True


def estimate_clsp(
    data: TimeSeries, grid: FrequencyGrid, K: int, refine: bool = False
) -> EstimateResult:
    """Frequency maximizing the cumulated periodogram over the grid."""
    freqs = grid.points
    values = clsp_grid(data, freqs, K)
    idx = int(np.argmax(values))  # first max = lowest frequency on ties
    f_hat, crit, refined = float(freqs[idx]), float(values[idx]), False
    if refine:
        f_hat, crit, refined = _parabolic_step(
            freqs, values, idx, grid.mesh, lambda f: clsp(data, f, K), maximize=True
        )
    return EstimateResult(f_hat, crit, "CLSP", K, refined, idx)


def estimate_ls(
    data: TimeSeries, grid: FrequencyGrid, K: int, refine: bool = False
) -> EstimateResult:
    """Frequency minimizing the harmonic least-squares criterion over the grid.

    Grid points with a numerically singular Gram matrix are skipped and
    recorded in ``skipped_indices``; the scan only fails if every point does.
    """
    if data.n < 2 * K + 1:
        raise ConfigurationError(f"need n >= 2K+1 = {2 * K + 1}, got n = {data.n}")
    freqs = grid.points
    values = np.full(freqs.size, np.inf)
    skipped = []
    last_err = None
    for i, f in enumerate(freqs):
        try:
            values[i] = ls_criterion(data, float(f), K)
        except SingularGramError as err:
            skipped.append(i)
            last_err = err
    if len(skipped) == freqs.size:
        raise last_err
    idx = int(np.argmin(values))  # first min = lowest frequency on ties
    f_hat, crit, refined = float(freqs[idx]), float(values[idx]), False
    neighbors_ok = idx - 1 not in skipped and idx + 1 not in skipped
    if refine and neighbors_ok:
        f_hat, crit, refined = _parabolic_step(
            freqs, values, idx, grid.mesh, lambda f: ls_criterion(data, f, K), maximize=False
        )
    return EstimateResult(f_hat, crit, "LS", K, refined, idx, tuple(skipped))

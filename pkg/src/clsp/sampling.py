"""Renewal-process sampling instants and noisy observations.

Observation model: Y_j = s(X_j) + eps_j with X_j = V_1 + ... + V_j for i.i.d.
positive inter-arrivals V and i.i.d. N(0, sigma^2) noise independent of X.
Supported inter-arrival laws (exponential, gamma, uniform interval) all have
closed-form characteristic functions, an absolutely continuous component, and
finite moments of every order.

Randomness: all draws go through numpy's PCG64 bit generator seeded
explicitly; normal deviates use Generator.standard_normal (ziggurat). Given
the same numpy version, streams are identical across platforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigurationError, DataError, UndefinedSnrError
from .signal import PeriodicSignal

LAWS = ("exponential", "gamma", "uniform")


@dataclass(frozen=True)
class RenewalScheme:
    """Inter-arrival distribution of a renewal sampling process.

    Use the factory classmethods; `law` is one of "exponential" (rate),
    "gamma" (shape, rate) or "uniform" (a, b with 0 <= a < b).
    """

    law: str
    rate: float | None = None
    shape: float | None = None
    a: float | None = None
    b: float | None = None

    def __post_init__(self):
        if self.law == "exponential":
            if self.rate is None or self.rate <= 0:
                raise ConfigurationError("exponential law needs rate > 0")
        elif self.law == "gamma":
            if self.rate is None or self.rate <= 0 or self.shape is None or self.shape <= 0:
                raise ConfigurationError("gamma law needs shape > 0 and rate > 0")
        elif self.law == "uniform":
            if self.a is None or self.b is None or not (0 <= self.a < self.b):
                raise ConfigurationError("uniform law needs 0 <= a < b")
        else:
            raise ConfigurationError(f"unsupported inter-arrival law {self.law!r}")

    @classmethod
    def exponential(cls, rate: float) -> "RenewalScheme":
        return cls("exponential", rate=rate)

    @classmethod
    def gamma(cls, shape: float, rate: float) -> "RenewalScheme":
        return cls("gamma", shape=shape, rate=rate)

    @classmethod
    def uniform(cls, a: float, b: float) -> "RenewalScheme":
        return cls("uniform", a=a, b=b)

    @property
    def mean(self) -> float:
        """Analytic mean inter-arrival E[V]."""
        if self.law == "exponential":
            return 1.0 / self.rate
        if self.law == "gamma":
            return self.shape / self.rate
        return 0.5 * (self.a + self.b)

    def moment(self, m: int) -> float:
        """Raw moment E[V^m] for m = 0..4."""
        if not 0 <= m <= 4:
            raise ConfigurationError("moments are exposed for m <= 4 only")
        if self.law == "exponential":
            return math.factorial(m) / self.rate**m
        if self.law == "gamma":
            out = 1.0
            for i in range(m):
                out *= (self.shape + i) / self.rate
            return out
        # uniform: (b^{m+1} - a^{m+1}) / ((m+1)(b-a))
        return (self.b ** (m + 1) - self.a ** (m + 1)) / ((m + 1) * (self.b - self.a))

    def char_fn(self, t):
        """Characteristic function E[exp(i t V)] in closed form.

        Accepts scalar or array t; satisfies |phi| <= 1, phi(0) = 1 and
        phi(-t) = conj(phi(t)).
        """
        t_arr = np.asarray(t, dtype=float)
        if self.law == "exponential":
            out = self.rate / (self.rate - 1j * t_arr)
        elif self.law == "gamma":
            out = (1.0 - 1j * t_arr / self.rate) ** (-self.shape)
        else:
            half_width = 0.5 * (self.b - self.a)
            mid = 0.5 * (self.a + self.b)
            out = np.exp(1j * t_arr * mid) * np.sinc(t_arr * half_width / np.pi)
        return complex(out) if t_arr.ndim == 0 else out

    def to_json_dict(self) -> dict:
        out = {"law": self.law}
        for name in ("rate", "shape", "a", "b"):
            val = getattr(self, name)
            if val is not None:
                out[name] = val
        return out

    @classmethod
    def from_json_dict(cls, obj: dict) -> "RenewalScheme":
        if not isinstance(obj, dict) or "law" not in obj:
            raise ConfigurationError("scheme JSON must be an object with a 'law' field")
        known = {k: float(v) for k, v in obj.items() if k != "law"}
        extra = set(known) - {"rate", "shape", "a", "b"}
        if extra:
            raise ConfigurationError(f"unknown scheme parameters: {sorted(extra)}")
        return cls(obj["law"], **known)


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Paired observation instants and values (times strictly increasing)."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        y = np.asarray(self.values, dtype=float)
        if t.ndim != 1 or t.shape != y.shape or t.size < 1:
            raise DataError("times and values must be equal-length 1-d arrays, n >= 1")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(y))):
            raise DataError("times and values must be finite")
        if t[0] <= 0 or np.any(np.diff(t) <= 0):
            raise DataError("times must be strictly increasing and positive")
        t = t.copy()
        y = y.copy()
        t.flags.writeable = False
        y.flags.writeable = False
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", y)

    @property
    def n(self) -> int:
        return self.times.size


def sample_instants(scheme: RenewalScheme, n: int, seed: int) -> np.ndarray:
    """Cumulative sums of n i.i.d. inter-arrivals; deterministic given seed."""
    if n < 1:
        raise ConfigurationError("n must be >= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    if scheme.law == "exponential":
        gaps = rng.exponential(scale=1.0 / scheme.rate, size=n)
    elif scheme.law == "gamma":
        gaps = rng.gamma(shape=scheme.shape, scale=1.0 / scheme.rate, size=n)
    else:
        gaps = rng.uniform(scheme.a, scheme.b, size=n)
    return np.cumsum(gaps)


def observe(s: PeriodicSignal, times, sigma: float, seed: int) -> TimeSeries:
    """Noisy observations of s at the given instants.

    Values are s(times) plus i.i.d. N(0, sigma^2) noise drawn independently
    of the instants; deterministic given seed.
    """
    if sigma < 0:
        raise ConfigurationError("sigma must be >= 0")
    t = np.asarray(times, dtype=float)
    clean = np.atleast_1d(s.eval(t))
    rng = np.random.Generator(np.random.PCG64(seed))
    noise = sigma * rng.standard_normal(t.size)
    return TimeSeries(t, clean + noise)


def snr_to_sigma(s: PeriodicSignal, snr_db: float) -> float:
    """Noise SD matching a target SNR in dB.

    SNR is AC signal power over noise variance: sigma^2 = P_ac * 10^(-snr/10)
    with P_ac = sum_{k != 0} |c_k|^2.
    """
    power = s.ac_power()
    if power <= 0:
        raise UndefinedSnrError("SNR is undefined for a constant signal")
    return math.sqrt(power * 10.0 ** (-snr_db / 10.0))


# -- CSV ingestion / emission --------------------------------------------------
#
# Format: optional header line "t,y", then one "float,float" row per
# observation, times strictly increasing.


def write_time_series(ts: TimeSeries, path) -> None:
    with open(path, "w") as fh:
        fh.write("t,y\n")
        for t, y in zip(ts.times, ts.values):
            fh.write(f"{t:.17g},{y:.17g}\n")


def read_time_series(path) -> TimeSeries:
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    times, values = [], []
    for i, line in enumerate(lines):
        line = line.strip()
        if not line:
            continue
        if i == 0 and line.lower().replace(" ", "") == "t,y":
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise DataError(f"{path}: line {i + 1}: expected 'float,float', got {line!r}")
        try:
            times.append(float(parts[0]))
            values.append(float(parts[1]))
        except ValueError as exc:
            raise DataError(f"{path}: line {i + 1}: {exc}") from exc
    if not times:
        raise DataError(f"{path}: no observations found")
    return TimeSeries(np.array(times), np.array(values))

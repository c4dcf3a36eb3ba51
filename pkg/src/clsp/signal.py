"""Real periodic signals represented by two-sided Fourier coefficients.

A signal of degree d is s(t) = sum_{|k|<=d} c_k exp(2i*pi*k*f_star*t) with
c_{-k} = conj(c_k), so s is real-valued. Only the k >= 0 half is stored;
the negative half is always derived by conjugation, which keeps Hermitian
symmetry exact by construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, DegenerateDesignError, NumericalError

# Relative tolerance on the imaginary residue of an evaluated coefficient sum.
# Exceeding it means the coefficient array lost Hermitian symmetry somewhere.
_IMAG_RESIDUE_RTOL = 1e-10


@dataclass(frozen=True, eq=False)
class PeriodicSignal:
    """Finite Fourier representation of a real periodic signal.

    Parameters
    ----------
    f_star : float
        Fundamental frequency in cycles per unit time, > 0.
    half_coeffs : array_like of complex
        Coefficients c_0, c_1, ..., c_d for the non-negative harmonics.
        c_0 must be (numerically) real.
    """

    f_star: float
    half_coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not (np.isfinite(self.f_star) and self.f_star > 0):
            raise ConfigurationError(f"f_star must be positive, got {self.f_star!r}")
        half = np.atleast_1d(np.asarray(self.half_coeffs, dtype=complex)).copy()
        if half.ndim != 1 or half.size == 0:
            raise ConfigurationError("half_coeffs must be a nonempty 1-d sequence")
        if not np.all(np.isfinite(half)):
            raise ConfigurationError("all coefficients must be finite")
        scale = float(np.sum(np.abs(half)))
        if abs(half[0].imag) > 1e-9 * max(scale, 1.0):
            raise ConfigurationError(
                f"c_0 must be real for a real signal, got {half[0]!r}"
            )
        half[0] = half[0].real
        half.flags.writeable = False
        object.__setattr__(self, "half_coeffs", half)

    @property
    def degree(self) -> int:
        return self.half_coeffs.size - 1

    def coeff(self, k: int) -> complex:
        """Fourier coefficient c_k; zero outside [-degree, degree]."""
        if abs(k) > self.degree:
            return 0j
        if k >= 0:
            return complex(self.half_coeffs[k])
        return complex(np.conj(self.half_coeffs[-k]))

    def two_sided(self) -> np.ndarray:
        """Dense coefficient array indexed k = -d..d (position k + d)."""
        neg = np.conj(self.half_coeffs[1:])[::-1]
        return np.concatenate([neg, self.half_coeffs])

    def eval(self, t):
        """Evaluate s(t) for scalar or array t.

        The full two-sided sum is formed and its imaginary residue checked
        against ``_IMAG_RESIDUE_RTOL`` times the coefficient mass; a larger
        residue indicates symmetry corruption and raises NumericalError.
        """
        t_arr = np.asarray(t, dtype=float)
        if not np.all(np.isfinite(t_arr)):
            raise ConfigurationError("evaluation times must be finite")
        c = self.two_sided()
        k = np.arange(-self.degree, self.degree + 1)
        phase = np.exp(
            2j * np.pi * self.f_star * np.multiply.outer(t_arr, k.astype(float))
        )
        total = phase @ c
        scale = float(np.sum(np.abs(c)))
        residue = float(np.max(np.abs(np.imag(np.atleast_1d(total)))))
        if residue > _IMAG_RESIDUE_RTOL * scale:
            raise NumericalError(
                f"imaginary residue {residue:.3g} exceeds {_IMAG_RESIDUE_RTOL:g} "
                f"x coefficient mass {scale:.3g}; Hermitian symmetry is broken"
            )
        out = np.real(total)
        return float(out) if t_arr.ndim == 0 else out

    def derivative(self) -> "PeriodicSignal":
        """Signal with coefficients c_k(s') = 2*pi*i*k*f_star * c_k(s)."""
        k = np.arange(self.half_coeffs.size)
        return PeriodicSignal(self.f_star, 2j * np.pi * self.f_star * k * self.half_coeffs)

    def l2_norm_sq(self) -> float:
        """Integral of s^2 over one period, via Parseval: (1/f_star) sum |c_k|^2."""
        mags = np.abs(self.half_coeffs) ** 2
        return float((mags[0] + 2.0 * mags[1:].sum()) / self.f_star)

    def ac_power(self) -> float:
        """Mean power of s minus its mean value: sum_{k != 0} |c_k|^2."""
        return float(2.0 * (np.abs(self.half_coeffs[1:]) ** 2).sum())

    def is_constant(self, rtol: float = 0.0) -> bool:
        if self.degree == 0:
            return True
        tail = float(np.abs(self.half_coeffs[1:]).max())
        return tail <= rtol * max(1.0, abs(self.half_coeffs[0].real))

    # -- JSON serialization (k >= 0 half only) --------------------------------

    def to_json_dict(self) -> dict:
        return {
            "f_star": self.f_star,
            "coeffs": [
                {"k": k, "re": float(c.real), "im": float(c.imag)}
                for k, c in enumerate(self.half_coeffs)
            ],
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "PeriodicSignal":
        try:
            f_star = float(obj["f_star"])
            entries = obj["coeffs"]
            ks = [int(e["k"]) for e in entries]
            if any(k < 0 for k in ks):
                raise ConfigurationError("signal JSON must contain only k >= 0")
            half = np.zeros(max(ks) + 1, dtype=complex)
            for e in entries:
                half[int(e["k"])] = float(e["re"]) + 1j * float(e["im"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigurationError(f"malformed signal JSON: {exc}") from exc
        return cls(f_star, half)

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "PeriodicSignal":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"invalid signal JSON: {exc}") from exc
        return cls.from_json_dict(obj)


def sinusoid(f_star: float, amplitude: float = 1.0, phase: float = 0.0) -> PeriodicSignal:
    """A*sin(2*pi*f_star*t + phase) as a degree-1 PeriodicSignal."""
    c1 = -0.5j * amplitude * np.exp(1j * phase)
    return PeriodicSignal(f_star, np.array([0.0, c1]))


def product_coeffs(a: PeriodicSignal, b: PeriodicSignal) -> PeriodicSignal:
    """Fourier coefficients of the pointwise product a(t)*b(t).

    Discrete convolution of the coefficient sequences; the output degree is
    degree(a) + degree(b). Both signals must share the same fundamental
    frequency.
    """
    if a.f_star != b.f_star:
        raise ConfigurationError(
            f"cannot multiply signals with different f_star: {a.f_star} vs {b.f_star}"
        )
    full = np.convolve(a.two_sided(), b.two_sided())
    d_out = a.degree + b.degree
    # k >= 0 half sits at positions d_out .. 2*d_out; symmetrize against the
    # conjugate-reversed negative half to kill rounding asymmetry.
    pos = full[d_out:]
    neg = np.conj(full[d_out::-1])
    return PeriodicSignal(a.f_star, 0.5 * (pos + neg))


def fit_trig_poly(times, values, f: float, degree: int) -> PeriodicSignal:
    """Least-squares fit of a trigonometric polynomial at a known frequency.

    Minimizes sum_j (values_j - s(times_j))^2 over real signals of the given
    degree, via an SVD-based (rank-revealing) solve of the complex design
    e^{2i*pi*k*f*t}, k = -degree..degree. For real data the unconstrained
    complex minimizer is automatically Hermitian.

    Raises
    ------
    DegenerateDesignError
        If the design condition number exceeds 1e10 (e.g. a regular time grid
        that aliases two harmonics onto the same column).
    """
    t = np.asarray(times, dtype=float)
    y = np.asarray(values, dtype=float)
    if t.shape != y.shape or t.ndim != 1:
        raise ConfigurationError("times and values must be 1-d arrays of equal length")
    if degree < 0:
        raise ConfigurationError("degree must be >= 0")
    if t.size < 2 * degree + 1:
        raise ConfigurationError(
            f"need at least {2 * degree + 1} samples to fit degree {degree}, got {t.size}"
        )
    if not (np.isfinite(f) and f > 0):
        raise ConfigurationError(f"frequency must be positive, got {f!r}")

    k = np.arange(-degree, degree + 1)
    design = np.exp(2j * np.pi * f * np.outer(t, k))
    coef, _, rank, sv = np.linalg.lstsq(design, y.astype(complex), rcond=None)
    cond = float(sv[0] / sv[-1]) if sv[-1] > 0 else np.inf
    if cond > 1e10 or rank < 2 * degree + 1:
        raise DegenerateDesignError(
            f"design condition number {cond:.3g} exceeds 1e10: "
            + _describe_aliasing(t, f, degree)
        )
    # Positions degree..2*degree hold k = 0..degree; average with the
    # conjugated negative half so the stored half is exactly Hermitian.
    pos = coef[degree:]
    neg = np.conj(coef[degree::-1])
    return PeriodicSignal(f, 0.5 * (pos + neg))


def _describe_aliasing(t: np.ndarray, f: float, degree: int) -> str:
    """Name the harmonic pair whose regressors are closest to collinear."""
    n = t.size
    m = np.arange(1, 2 * degree + 1)
    sums = np.abs(np.exp(-2j * np.pi * f * np.outer(m, t)).sum(axis=1)) / n
    worst = int(m[np.argmax(sums)])
    return (
        f"harmonics separated by {worst} (frequency spacing {worst * f:g}) are "
        f"numerically collinear on this time grid"
    )

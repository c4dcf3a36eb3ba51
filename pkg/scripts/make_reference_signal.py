#!/usr/bin/env python3
"""Regenerate the committed degree-6 reference signal.

A synthetic asymmetric pulsator-like waveform: harmonic amplitudes decay as
1/k with a quadratic phase ramp (fast rise, slow decay), fundamental
frequency 0.25, AC power normalized to 0.049 so that a 10 dB SNR corresponds
to noise SD 0.07. The JSON is committed under src/clsp/data/ so benchmark
results stay reproducible; rerunning this script is only needed if the shape
is deliberately changed.
"""

import sys
from pathlib import Path

import numpy as np

from clsp.asymptotics import clsp_variance, optimal_sd, predicted_clsp_sd
from clsp.sampling import RenewalScheme, snr_to_sigma
from clsp.signal import PeriodicSignal

F_STAR = 0.25
AC_POWER = 0.049
DEGREE = 6


def build() -> PeriodicSignal:
    k = np.arange(1, DEGREE + 1)
    amps = 1.0 / k
    phases = -0.6 * k - 0.25 * k**2
    half = np.concatenate([[0.0], amps * np.exp(1j * phases)])
    raw = PeriodicSignal(F_STAR, half)
    scale = np.sqrt(AC_POWER / raw.ac_power())
    return PeriodicSignal(F_STAR, scale * half)


def main() -> int:
    sig = build()
    out = Path(__file__).resolve().parents[1] / "src" / "clsp" / "data" / "reference_signal.json"
    out.write_text(sig.to_json() + "\n")
    print(f"wrote {out}")
    print(f"AC power: {sig.ac_power():.6f}")
    sigma = snr_to_sigma(sig, 10.0)
    print(f"sigma at 10 dB: {sigma:.6f}")
    rep = clsp_variance(sig, RenewalScheme.exponential(5.0), sigma)
    print(f"I*: {rep.i_star:.4f}  sigma_check: {np.sqrt(rep.sigma_check_sq):.4f}")
    for n in (300, 600):
        print(
            f"n={n}: optimal SD {optimal_sd(rep, n):.3e}  "
            f"predicted CLSP SD {predicted_clsp_sd(rep, n, 1):.3e}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())

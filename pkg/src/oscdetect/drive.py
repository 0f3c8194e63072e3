"""From a sampled classical forcing record to the displacement amplitude.

The interaction-picture evolution under a linear drive is a displacement
whose amplitude is set by the windowed Fourier component
gamma = integral_0^tau e^{i omega t} F(t) dt.  Quadrature runs on the
caller's sample grid; no forcing model is imposed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DriveSignal",
    "GammaEstimate",
    "gamma_integral",
    "perturbation_amplitude",
    "TAU_SCALED",
    "UNSCALED",
]

# Two bookkeeping conventions for z are exposed; they differ by a factor
# of the drive duration tau and cannot affect any overlap strength (those
# depend on |z| only).  Outputs always record which one produced z.
TAU_SCALED = "tau-scaled"
UNSCALED = "unscaled"


@dataclass(frozen=True)
class DriveSignal:
    """Sampled forcing record plus oscillator parameters.

    Samples run from t = 0 to t = tau on a strictly increasing grid with
    at least 3 points.
    """

    times: np.ndarray = field(repr=False)
    forces: np.ndarray = field(repr=False)
    omega: float
    mass: float

    def __post_init__(self):
        t = np.ascontiguousarray(self.times, dtype=np.float64)
        f = np.ascontiguousarray(self.forces, dtype=np.float64)
        if t.ndim != 1 or t.shape != f.shape or t.size < 3:
            raise ValueError("need matching 1-D time/force arrays with >= 3 samples")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(f))):
            raise ValueError("samples must be finite")
        if t[0] != 0.0:
            raise ValueError("first sample must be at t = 0")
        if np.any(np.diff(t) <= 0.0):
            raise ValueError("times must be strictly increasing")
        if not (math.isfinite(self.omega) and self.omega > 0.0):
            raise ValueError(f"omega must be > 0, got {self.omega!r}")
        if not (math.isfinite(self.mass) and self.mass > 0.0):
            raise ValueError(f"mass must be > 0, got {self.mass!r}")
        t.setflags(write=False)
        f.setflags(write=False)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "forces", f)

    @property
    def tau(self) -> float:
        return float(self.times[-1])


@dataclass(frozen=True)
class GammaEstimate:
    """Quadrature value with an error estimate from grid coarsening."""

    value: complex
    error_estimate: float
    rule: str


def _trapezoid(t: np.ndarray, y: np.ndarray) -> complex:
    return complex(np.sum(0.5 * (y[1:] + y[:-1]) * np.diff(t)))


def _simpson_uniform(h: float, y: np.ndarray) -> complex:
    # odd number of samples
    return complex(h / 3.0 * (y[0] + y[-1] + 4.0 * np.sum(y[1:-1:2])
                              + 2.0 * np.sum(y[2:-2:2])))


def gamma_integral(signal: DriveSignal) -> GammaEstimate:
    """gamma = integral e^{i omega t} F(t) dt over the record.

    Composite Simpson on uniform grids (trapezoid handles the final
    interval when the sample count is even, and non-uniform grids
    entirely), with a Richardson-style error estimate from the
    half-resolution subgrid.
    """
    t = signal.times
    y = np.exp(1j * signal.omega * t) * signal.forces
    dt = np.diff(t)
    uniform = bool(np.max(np.abs(dt - dt[0])) <= 1e-9 * dt[0])

    if uniform:
        h = float(dt[0])
        if t.size % 2 == 1:
            fine = _simpson_uniform(h, y)
            rule = "simpson"
        else:
            fine = _simpson_uniform(h, y[:-1]) + _trapezoid(t[-2:], y[-2:])
            rule = "simpson+trapezoid"
    else:
        fine = _trapezoid(t, y)
        rule = "trapezoid"

    # half-resolution estimate on every other sample, endpoint included
    idx = list(range(0, t.size, 2))
    if idx[-1] != t.size - 1:
        idx.append(t.size - 1)
    coarse = _trapezoid(t[idx], y[idx])
    order_gain = 15.0 if rule == "simpson" else 3.0
    err = abs(fine - coarse) / order_gain
    return GammaEstimate(value=fine, error_estimate=float(err), rule=rule)


def perturbation_amplitude(gamma: complex, signal: DriveSignal,
                           convention: str = TAU_SCALED) -> complex:
    """Displacement amplitude z from gamma.

    ``tau-scaled``: z = i gamma tau / sqrt(2 m omega)  (default)
    ``unscaled``:   z = i gamma / sqrt(2 m omega)

    The two differ by the factor tau; |z|-dependent results downstream are
    convention-robust only in the sense that each run records its choice.
    """
    gamma = complex(gamma)
    if not (math.isfinite(gamma.real) and math.isfinite(gamma.imag)):
        raise ValueError("gamma must be finite")
    root = math.sqrt(2.0 * signal.mass * signal.omega)
    if convention == TAU_SCALED:
        return 1j * gamma * signal.tau / root
    if convention == UNSCALED:
        return 1j * gamma / root
    raise ValueError(f"convention must be '{TAU_SCALED}' or '{UNSCALED}', got {convention!r}")

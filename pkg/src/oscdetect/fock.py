"""Truncated number-basis oracle for displacement overlaps.

Every preparation is expanded as an exact amplitude vector with analytic
tail accounting, and the displacement operator is applied through its
exact matrix elements.  Results from this module are ground truth for the
closed forms in :mod:`oscdetect.overlaps`; the two never share code paths
beyond the scalar special functions.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .special import assoc_laguerre, laguerre, ln_factorial

__all__ = [
    "Coherent",
    "SqueezedVacuum",
    "NumberState",
    "Cat",
    "StatePrep",
    "FixedPerturbation",
    "RandomPhasePerturbation",
    "Perturbation",
    "FockVector",
    "OverlapResult",
    "TruncationReport",
    "FockTruncationError",
    "QuadratureConvergenceError",
    "fock_amplitudes",
    "displacement_element",
    "overlap_numeric",
    "phase_averaged_kappa_numeric",
    "truncation_check",
    "default_dim",
]

EVEN = "even"
ODD = "odd"


class FockTruncationError(Exception):
    """Truncated expansion too small for the requested tolerance."""

    def __init__(self, message: str, suggested_dim: int | None = None,
                 tail_norm: float | None = None):
        super().__init__(message)
        self.suggested_dim = suggested_dim
        self.tail_norm = tail_norm


class QuadratureConvergenceError(Exception):
    """Phase-average quadrature did not stabilize under node doubling."""


# ---------------------------------------------------------------------------
# Preparations and perturbations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Coherent:
    """Coherent state |alpha>."""

    alpha: complex = 0j

    def __post_init__(self):
        a = complex(self.alpha)
        if not (math.isfinite(a.real) and math.isfinite(a.imag)):
            raise ValueError("alpha must be finite")
        object.__setattr__(self, "alpha", a)


@dataclass(frozen=True)
class SqueezedVacuum:
    """Squeezed vacuum with real squeeze parameter r >= 0 (squeezing phase
    fixed to zero)."""

    r: float

    def __post_init__(self):
        r = float(self.r)
        if not math.isfinite(r) or r < 0.0:
            raise ValueError(f"r must be finite and >= 0, got {self.r!r}")
        object.__setattr__(self, "r", r)


@dataclass(frozen=True)
class NumberState:
    """Number state |n>."""

    n: int

    def __post_init__(self):
        if self.n != int(self.n) or self.n < 0:
            raise ValueError(f"n must be a nonnegative integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))


@dataclass(frozen=True)
class Cat:
    """Normalized superposition |alpha> +/- |-alpha| with real alpha > 0.

    parity "even" keeps only even number components, "odd" only odd ones.
    """

    alpha: float
    parity: str = EVEN

    def __post_init__(self):
        a = float(self.alpha)
        if not math.isfinite(a) or a <= 0.0:
            raise ValueError(f"cat alpha must be finite and > 0, got {self.alpha!r}")
        if self.parity not in (EVEN, ODD):
            raise ValueError(f"parity must be 'even' or 'odd', got {self.parity!r}")
        object.__setattr__(self, "alpha", a)

    @property
    def sign(self) -> int:
        return 1 if self.parity == EVEN else -1


StatePrep = Coherent | SqueezedVacuum | NumberState | Cat


@dataclass(frozen=True)
class FixedPerturbation:
    """Displacement by a fixed complex amplitude z."""

    z: complex

    def __post_init__(self):
        z = complex(self.z)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise ValueError("z must be finite")
        object.__setattr__(self, "z", z)

    @property
    def intensity(self) -> float:
        return abs(self.z) ** 2

    @property
    def phase(self) -> float:
        return cmath.phase(self.z)


@dataclass(frozen=True)
class RandomPhasePerturbation:
    """Displacement of known intensity |z|^2 but uniformly random phase."""

    intensity: float

    def __post_init__(self):
        i = float(self.intensity)
        if not math.isfinite(i) or i < 0.0:
            raise ValueError(f"intensity must be finite and >= 0, got {self.intensity!r}")
        object.__setattr__(self, "intensity", i)


Perturbation = FixedPerturbation | RandomPhasePerturbation


# ---------------------------------------------------------------------------
# Vectors and results
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FockVector:
    """Truncated number-basis expansion with tail-norm accounting.

    The stored squared norm plus ``tail_norm`` equals one (the analytic
    full-space normalization) within 1e-12.
    """

    dim: int
    amplitudes: np.ndarray = field(repr=False)
    tail_norm: float

    def __post_init__(self):
        amp = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)
        if self.dim < 1 or amp.shape != (self.dim,):
            raise ValueError("amplitudes must have shape (dim,), dim >= 1")
        if self.tail_norm < 0.0:
            raise ValueError("tail_norm must be >= 0")
        total = float(np.vdot(amp, amp).real) + self.tail_norm
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"stored norm + tail = {total!r}, expected 1")

    @property
    def mean_excitation(self) -> float:
        """Mean excitation of the stored part, sum n |c_n|^2."""
        n = np.arange(self.dim)
        return float(np.dot(n, np.abs(self.amplitudes) ** 2))


@dataclass(frozen=True)
class OverlapResult:
    """Complex overlap O and strength kappa = |O|^2."""

    overlap: complex
    kappa: float

    def __post_init__(self):
        if not (0.0 <= self.kappa <= 1.0):
            raise ValueError(f"kappa must lie in [0, 1], got {self.kappa!r}")
        if abs(self.kappa - abs(self.overlap) ** 2) > 1e-12:
            raise ValueError("kappa must equal |overlap|^2")


@dataclass(frozen=True)
class TruncationReport:
    passed: bool
    tail_norm: float
    tol: float


def truncation_check(v: FockVector, tol: float) -> TruncationReport:
    """Pass iff the analytic tail mass outside the stored amplitudes is
    within tol."""
    if not (tol > 0.0):
        raise ValueError("tol must be > 0")
    return TruncationReport(v.tail_norm <= tol, v.tail_norm, tol)


# ---------------------------------------------------------------------------
# Amplitude expansions
# ---------------------------------------------------------------------------

def _coherent_amplitudes(alpha: complex, dim: int) -> np.ndarray:
    amp = np.zeros(dim, dtype=np.complex128)
    a = abs(alpha)
    if a == 0.0:
        amp[0] = 1.0
        return amp
    n = np.arange(dim, dtype=np.float64)
    lnf = np.array([ln_factorial(i) for i in range(dim)])
    mag = np.exp(-0.5 * a * a + n * math.log(a) - 0.5 * lnf)
    amp[:] = mag * np.exp(1j * cmath.phase(alpha) * n)
    return amp


def _squeezed_amplitudes(r: float, dim: int) -> np.ndarray:
    amp = np.zeros(dim, dtype=np.complex128)
    if r == 0.0:
        amp[0] = 1.0
        return amp
    m = np.arange((dim + 1) // 2)
    ln_tanh = math.log(math.tanh(r))
    lnf2m = np.array([ln_factorial(2 * i) for i in m])
    lnfm = np.array([ln_factorial(i) for i in m])
    ln_c = (-0.5 * math.log(math.cosh(r)) + m * ln_tanh
            + 0.5 * lnf2m - m * math.log(2.0) - lnfm)
    amp[::2] = np.exp(ln_c)
    return amp


def _cat_amplitudes(state: Cat, dim: int) -> np.ndarray:
    a = state.alpha
    # 2 (1 +/- e^{-2 a^2}) via expm1 so small alpha keeps full precision
    em1 = math.expm1(-2.0 * a * a)
    norm_factor = 2.0 * (2.0 + em1) if state.sign > 0 else -2.0 * em1
    amp = np.zeros(dim, dtype=np.complex128)
    start = 0 if state.sign > 0 else 1
    n = np.arange(start, dim, 2, dtype=np.float64)
    lnf = np.array([ln_factorial(int(i)) for i in n])
    ln_mag = (-0.5 * a * a + n * math.log(a) - 0.5 * lnf
              + math.log(2.0) - 0.5 * math.log(norm_factor))
    amp[start::2] = np.exp(ln_mag)
    return amp


def fock_amplitudes(state: StatePrep, dim: int) -> FockVector:
    """Expand a preparation over the first ``dim`` number states.

    The tail norm is inferred from the analytic unit normalization of the
    full-space state.
    """
    dim = int(dim)
    if dim < 1:
        raise ValueError("dim must be >= 1")
    if isinstance(state, Coherent):
        amp = _coherent_amplitudes(state.alpha, dim)
    elif isinstance(state, SqueezedVacuum):
        amp = _squeezed_amplitudes(state.r, dim)
    elif isinstance(state, NumberState):
        if state.n >= dim:
            raise FockTruncationError(
                f"dim={dim} cannot hold NumberState n={state.n}",
                suggested_dim=state.n + 1, tail_norm=1.0)
        amp = np.zeros(dim, dtype=np.complex128)
        amp[state.n] = 1.0
    elif isinstance(state, Cat):
        amp = _cat_amplitudes(state, dim)
    else:
        raise TypeError(f"unsupported preparation {state!r}")
    tail = max(0.0, 1.0 - float(np.vdot(amp, amp).real))
    return FockVector(dim=dim, amplitudes=amp, tail_norm=tail)


# ---------------------------------------------------------------------------
# Displacement operator
# ---------------------------------------------------------------------------

def displacement_element(m: int, n: int, z: complex) -> complex:
    """Exact matrix element <m|D(z)|n>, factorial ratios taken in log space."""
    if m != int(m) or m < 0 or n != int(n) or n < 0:
        raise ValueError("m and n must be nonnegative integers")
    m, n = int(m), int(n)
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError("z must be finite")
    if z == 0:
        return 1.0 + 0.0j if m == n else 0.0 + 0.0j
    x = abs(z) ** 2
    if m >= n:
        lag = assoc_laguerre(n, m - n, x) if m > n else laguerre(n, x)
        if lag == 0.0:
            return 0.0 + 0.0j
        ln_mag = (0.5 * (ln_factorial(n) - ln_factorial(m))
                  + (m - n) * math.log(abs(z)) - 0.5 * x + math.log(abs(lag)))
        phase = cmath.exp(1j * (m - n) * cmath.phase(z))
        return math.copysign(1.0, lag) * math.exp(ln_mag) * phase
    lag = assoc_laguerre(m, n - m, x)
    if lag == 0.0:
        return 0.0 + 0.0j
    ln_mag = (0.5 * (ln_factorial(m) - ln_factorial(n))
              + (n - m) * math.log(abs(z)) - 0.5 * x + math.log(abs(lag)))
    phase = cmath.exp(-1j * (n - m) * cmath.phase(z)) * (-1.0) ** (n - m)
    return math.copysign(1.0, lag) * math.exp(ln_mag) * phase


def default_dim(state: StatePrep, intensity: float = 0.0) -> int:
    """Default truncation: covers the displaced support with margin."""
    if isinstance(state, Coherent):
        scale = abs(state.alpha) ** 2
    elif isinstance(state, SqueezedVacuum):
        scale = math.sinh(state.r) ** 2
    elif isinstance(state, NumberState):
        scale = float(state.n)
    else:
        scale = state.alpha ** 2
    return max(32, math.ceil(4.0 * (scale + float(intensity)) + 10.0))


def _displacement_margin(v: FockVector, abs_z: float) -> int:
    nbar = v.mean_excitation
    return max(16, math.ceil(4.0 * abs_z * abs_z + 8.0 * abs_z * math.sqrt(nbar + 1.0) + 8.0))


def _suggest_dim(state: StatePrep, dim: int, intensity: float, tol: float) -> int:
    d = max(dim, default_dim(state, intensity))
    for _ in range(64):
        d = int(d * 1.5) + 8
        if fock_amplitudes(state, d).tail_norm <= 0.25 * tol:
            break
    return d


def _gated_expansion(state: StatePrep, dim: int, abs_z: float,
                     probe_phases, trunc_tol: float):
    """Expand at dim, then verify both the state tail and the displaced
    leakage (estimated at a margin-extended dimension) stay within tol."""
    v = fock_amplitudes(state, dim)
    if v.tail_norm > trunc_tol:
        raise FockTruncationError(
            f"state tail {v.tail_norm:.3e} exceeds {trunc_tol:.1e} at dim={dim}; "
            f"try dim>={_suggest_dim(state, dim, abs_z * abs_z, trunc_tol)}",
            suggested_dim=_suggest_dim(state, dim, abs_z * abs_z, trunc_tol),
            tail_norm=v.tail_norm)
    big = dim + _displacement_margin(v, abs_z)
    vb = fock_amplitudes(state, big)
    worst = 0.0
    for phi in probe_phases:
        w = kernels.displace_apply(vb.amplitudes, abs_z * cmath.exp(1j * phi))
        leak = vb.tail_norm + float(np.sum(np.abs(w[dim:]) ** 2))
        worst = max(worst, leak)
    if worst > trunc_tol:
        sug = _suggest_dim(state, big, abs_z * abs_z, trunc_tol)
        raise FockTruncationError(
            f"displaced leakage {worst:.3e} exceeds {trunc_tol:.1e} at dim={dim}; "
            f"try dim>={sug}", suggested_dim=sug, tail_norm=worst)
    return v, vb


def overlap_numeric(state: StatePrep, z: complex, dim: int | None = None,
                    trunc_tol: float = 1e-10) -> OverlapResult:
    """<psi|D(z)|psi> summed over exact matrix elements.

    Requires the truncation gate (state tail and displaced leakage both
    within ``trunc_tol``) to pass; raises FockTruncationError with a
    suggested dimension otherwise.
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError("z must be finite")
    if dim is None:
        dim = default_dim(state, abs(z) ** 2)
    if z == 0:
        fock_amplitudes(state, dim)  # still validates dim against the state
        return OverlapResult(overlap=1.0 + 0.0j, kappa=1.0)
    _, vb = _gated_expansion(state, int(dim), abs(z), (cmath.phase(z),), trunc_tol)
    w = kernels.displace_apply(vb.amplitudes, z)
    o = complex(np.vdot(vb.amplitudes, w))
    kappa = min(abs(o) ** 2, 1.0)
    return OverlapResult(overlap=o, kappa=kappa)


_GATE_PROBE_PHASES = (0.0, math.pi / 4, math.pi / 2, 3 * math.pi / 4)


def phase_averaged_kappa_numeric(state: StatePrep, intensity: float,
                                 dim: int | None = None, quad_points: int = 128,
                                 trunc_tol: float = 1e-10) -> float:
    """Phase-averaged overlap strength by periodic trapezoid quadrature.

    This is |mean_phi O(|z| e^{i phi})|^2, the squared modulus of the
    averaged complex overlap (not the average of kappa).  The node count
    is doubled once; if that changes the result by more than 1e-9 the
    quadrature is declared unconverged.
    """
    intensity = float(intensity)
    if not math.isfinite(intensity) or intensity < 0.0:
        raise ValueError("intensity must be finite and >= 0")
    if quad_points < 16:
        raise ValueError("quad_points must be >= 16")
    if dim is None:
        dim = default_dim(state, intensity)
    if intensity == 0.0:
        fock_amplitudes(state, dim)
        return 1.0
    r = math.sqrt(intensity)
    _, vb = _gated_expansion(state, int(dim), r, _GATE_PROBE_PHASES, trunc_tol)
    k1 = min(abs(kernels.phase_average(vb.amplitudes, r, int(quad_points))) ** 2, 1.0)
    k2 = min(abs(kernels.phase_average(vb.amplitudes, r, 2 * int(quad_points))) ** 2, 1.0)
    if abs(k1 - k2) > 1e-9:
        raise QuadratureConvergenceError(
            f"phase average moved by {abs(k1 - k2):.3e} when doubling "
            f"{quad_points} quadrature nodes; increase quad_points")
    return k2

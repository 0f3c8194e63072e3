"""Closed-form displacement overlaps and strengths for each preparation.

Primary functions evaluate the exact expressions (validated against the
number-basis oracle in :mod:`oscdetect.fock`).  A few widely quoted
reference forms disagree with the exact ones away from special points;
those are kept alongside, clearly suffixed ``_reference``, so the
discrepancies can be reported instead of silently hidden.

All exponential-times-Bessel products are assembled in log space.
"""

from __future__ import annotations

import cmath
import math
from typing import Callable

from .fock import (
    Cat,
    Coherent,
    NumberState,
    OverlapResult,
    SqueezedVacuum,
    StatePrep,
)
from .special import bessel_i0_scaled, bessel_j0, laguerre

__all__ = [
    "PHASE0",
    "PHASE_HALF_PI",
    "RANDOM_PHASE",
    "overlap_coherent",
    "kappa_squeezed",
    "kappa_squeezed_reference",
    "kappa_squeezed_random_phase",
    "kappa_squeezed_random_phase_reference",
    "kappa_number",
    "overlap_cat",
    "overlap_cat_compact",
    "kappa_cat",
    "kappa_cat_reference",
    "kappa_coherent_random_phase",
    "mean_excitation",
    "kappa_profile",
    "squeeze_r_for_nbar",
    "cat_alpha_for_nbar",
]

PHASE0 = "phase0"
PHASE_HALF_PI = "phase_half_pi"
RANDOM_PHASE = "random"

_CAT_MODES = (PHASE0, PHASE_HALF_PI, RANDOM_PHASE)


def _check_intensity(intensity: float) -> float:
    intensity = float(intensity)
    if not math.isfinite(intensity) or intensity < 0.0:
        raise ValueError(f"intensity must be finite and >= 0, got {intensity!r}")
    return intensity


# ---------------------------------------------------------------------------
# Coherent states
# ---------------------------------------------------------------------------

def overlap_coherent(alpha: complex, z: complex) -> OverlapResult:
    """<alpha|D(z)|alpha>.

    The amplitude enters only through a pure phase, so the strength
    kappa = e^{-|z|^2} is independent of alpha.
    """
    alpha = complex(alpha)
    z = complex(z)
    for w in (alpha, z):
        if not (math.isfinite(w.real) and math.isfinite(w.imag)):
            raise ValueError("arguments must be finite")
    x = abs(z) ** 2
    # z conj(alpha) - alpha conj(z) is purely imaginary, so build the
    # exponent componentwise; kappa is then exactly alpha independent
    o = cmath.exp(complex(-0.5 * x, 2.0 * (z * alpha.conjugate()).imag))
    return OverlapResult(overlap=o, kappa=min(abs(o) ** 2, 1.0))


def kappa_coherent_random_phase(alpha: complex, intensity: float) -> float:
    """Phase-averaged strength for a coherent preparation.

    Unlike the fixed-phase strength this does depend on |alpha|:
    averaging the overlap phase e^{2i Im(z conj(alpha))} gives a J0 factor.
    """
    intensity = _check_intensity(intensity)
    a = abs(complex(alpha))
    return math.exp(-intensity) * bessel_j0(2.0 * a * math.sqrt(intensity)) ** 2


# ---------------------------------------------------------------------------
# Squeezed vacuum
# ---------------------------------------------------------------------------

def kappa_squeezed(r: float, intensity: float, phase: float) -> float:
    """Strength for squeezed vacuum, exact:

        kappa = exp{-|z|^2 [cosh 2r - sinh 2r cos(2 phi)]}

    At phi = 0 this is exp{-|z|^2 e^{-2r}} (phase matched, overlap
    enhanced); at phi = pi/2 it is exp{-|z|^2 e^{2r}}.
    """
    r = float(r)
    intensity = _check_intensity(intensity)
    phase = float(phase)
    if not (math.isfinite(r) and math.isfinite(phase)) or r < 0.0:
        raise ValueError("r must be finite and >= 0, phase finite")
    return math.exp(-intensity * (math.cosh(2 * r) - math.sinh(2 * r) * math.cos(2 * phase)))


def kappa_squeezed_reference(r: float, intensity: float, phase: float) -> float:
    """Commonly quoted squeezed-vacuum strength with a cos^2(phi) phase
    dependence.  It agrees with :func:`kappa_squeezed` only at phi = 0
    (mod pi); kept as a labeled comparison value."""
    r = float(r)
    intensity = _check_intensity(intensity)
    phase = float(phase)
    if not (math.isfinite(r) and math.isfinite(phase)) or r < 0.0:
        raise ValueError("r must be finite and >= 0, phase finite")
    return math.exp(-intensity * (math.cosh(2 * r) - math.sinh(2 * r) * math.cos(phase) ** 2))


def kappa_squeezed_random_phase(r: float, intensity: float) -> float:
    """Phase-averaged strength for squeezed vacuum, exact:

        kbar = exp{-|z|^2 (2 nbar + 1)} I0(|z|^2 sqrt(nbar (nbar+1)))^2

    evaluated in log space through the scaled Bessel function, so large
    nbar never overflows.
    """
    r = float(r)
    intensity = _check_intensity(intensity)
    if not math.isfinite(r) or r < 0.0:
        raise ValueError(f"r must be finite and >= 0, got {r!r}")
    nbar = math.sinh(r) ** 2
    s = math.sqrt(nbar * (nbar + 1.0))
    # -I (2 nbar + 1) + 2 I s  ==  -I e^{-2r}
    ln_k = -intensity * math.exp(-2.0 * r) + 2.0 * math.log(bessel_i0_scaled(intensity * s))
    return math.exp(ln_k)


def kappa_squeezed_random_phase_reference(r: float, intensity: float) -> float:
    """Commonly quoted phase-averaged squeezed strength (Bessel argument
    halved and the exponent shifted).  Follows from the cos^2 reference
    form; disagrees with the quadrature oracle, kept for comparison."""
    r = float(r)
    intensity = _check_intensity(intensity)
    if not math.isfinite(r) or r < 0.0:
        raise ValueError(f"r must be finite and >= 0, got {r!r}")
    nbar = math.sinh(r) ** 2
    s = math.sqrt(nbar * (nbar + 1.0))
    ln_k = (-intensity * math.exp(-2.0 * r)
            + 2.0 * math.log(bessel_i0_scaled(0.5 * intensity * s)))
    return math.exp(ln_k)


# ---------------------------------------------------------------------------
# Number states
# ---------------------------------------------------------------------------

def kappa_number(n: int, intensity: float) -> float:
    """Strength for |n>: e^{-|z|^2} L_n(|z|^2)^2, phase insensitive."""
    intensity = _check_intensity(intensity)
    return math.exp(-intensity) * laguerre(n, intensity) ** 2


# ---------------------------------------------------------------------------
# Cat states
# ---------------------------------------------------------------------------

def _coherent_displaced_element(beta: complex, gamma: complex, z: complex) -> complex:
    """<beta|D(z)|gamma> from the composition rule
    D(z) D(gamma) = D(z + gamma) exp{(z conj(gamma) - conj(z) gamma)/2}."""
    comp = cmath.exp(0.5 * (z * gamma.conjugate() - z.conjugate() * gamma))
    delta = z + gamma
    inner = cmath.exp(-0.5 * abs(beta) ** 2 - 0.5 * abs(delta) ** 2
                      + beta.conjugate() * delta)
    return comp * inner


def _cat_norm_sq(alpha: float, sign: int) -> float:
    em1 = math.expm1(-2.0 * alpha * alpha)
    return 2.0 * (2.0 + em1) if sign > 0 else -2.0 * em1


def overlap_cat(alpha: float, parity: str, z: complex) -> complex:
    """<cat|D(z)|cat> from the four coherent-pair matrix elements with unit
    normalization."""
    state = Cat(alpha, parity)
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError("z must be finite")
    a = complex(state.alpha)
    sgn = state.sign
    total = (_coherent_displaced_element(a, a, z)
             + _coherent_displaced_element(-a, -a, z)
             + sgn * _coherent_displaced_element(a, -a, z)
             + sgn * _coherent_displaced_element(-a, a, z))
    return total / _cat_norm_sq(state.alpha, sgn)


def overlap_cat_compact(alpha: float, parity: str, z: complex) -> complex:
    """Equivalent compact trig form of :func:`overlap_cat`:

        e^{-|z|^2/2} [cos(2 a |z| sin phi) +/- e^{-2 a^2} cosh(2 a |z| cos phi)]
        / (1 +/- e^{-2 a^2})
    """
    state = Cat(alpha, parity)
    z = complex(z)
    rz = abs(z)
    phi = cmath.phase(z)
    a = state.alpha
    sgn = state.sign
    num = (math.cos(2.0 * a * rz * math.sin(phi))
           + sgn * math.exp(-2.0 * a * a) * math.cosh(2.0 * a * rz * math.cos(phi)))
    denom = 1.0 + sgn * math.exp(-2.0 * a * a)
    return complex(math.exp(-0.5 * rz * rz) * num / denom)


def _cat_random_phase_bracket(alpha: float, sign: int, u: float) -> float:
    """J0(u) +/- e^{-2 a^2} I0(u), the I0 piece assembled in log space."""
    ln_i0 = u + math.log(bessel_i0_scaled(u))
    return bessel_j0(u) + sign * math.exp(ln_i0 - 2.0 * alpha * alpha)


def kappa_cat(alpha: float, parity: str, intensity: float, mode: str) -> float:
    """Cat-state strength at phi = 0, phi = pi/2, or phase averaged.

    Derived from the unit-normalized overlap; the phase-averaged case is

        e^{-I} [J0(2 a sqrt(I)) +/- e^{-2 a^2} I0(2 a sqrt(I))]^2
        / (1 +/- e^{-2 a^2})^2
    """
    state = Cat(alpha, parity)
    intensity = _check_intensity(intensity)
    if mode not in _CAT_MODES:
        raise ValueError(f"mode must be one of {_CAT_MODES}, got {mode!r}")
    rz = math.sqrt(intensity)
    if mode == PHASE0:
        return min(abs(overlap_cat(alpha, parity, rz)) ** 2, 1.0)
    if mode == PHASE_HALF_PI:
        return min(abs(overlap_cat(alpha, parity, rz * 1j)) ** 2, 1.0)
    bracket = _cat_random_phase_bracket(state.alpha, state.sign, 2.0 * state.alpha * rz)
    denom = 1.0 + state.sign * math.exp(-2.0 * state.alpha ** 2)
    return min(math.exp(-intensity) * (bracket / denom) ** 2, 1.0)


def kappa_cat_reference(alpha: float, parity: str, intensity: float, mode: str) -> float:
    """Commonly quoted cat strengths carrying (1 +/- 2 e^{-2 a^2})^2
    denominators, inconsistent with the squared unit normalization.  Kept
    as a labeled comparison value; the oracle arbitrates."""
    state = Cat(alpha, parity)
    intensity = _check_intensity(intensity)
    if mode not in _CAT_MODES:
        raise ValueError(f"mode must be one of {_CAT_MODES}, got {mode!r}")
    a = state.alpha
    sgn = state.sign
    denom = (1.0 + 2.0 * sgn * math.exp(-2.0 * a * a)) ** 2
    rz = math.sqrt(intensity)
    if mode == PHASE0:
        num = (1.0 + sgn * math.exp(-2.0 * a * a) * math.cosh(2.0 * a * rz)) ** 2
        return math.exp(-intensity) * num / denom
    if mode == PHASE_HALF_PI:
        num = (math.cos(2.0 * a * rz) + sgn * math.exp(-2.0 * a * a)) ** 2
        return math.exp(-intensity) * num / denom
    bracket = _cat_random_phase_bracket(a, sgn, 2.0 * a * rz)
    return math.exp(-intensity) * bracket ** 2 / denom


# ---------------------------------------------------------------------------
# Mean excitation and profiles
# ---------------------------------------------------------------------------

def mean_excitation(state: StatePrep) -> float:
    """Mean excitation number of a preparation."""
    if isinstance(state, Coherent):
        return abs(state.alpha) ** 2
    if isinstance(state, SqueezedVacuum):
        return math.sinh(state.r) ** 2
    if isinstance(state, NumberState):
        return float(state.n)
    if isinstance(state, Cat):
        a2 = state.alpha ** 2
        em1 = math.expm1(-2.0 * a2)  # e^{-2 a^2} - 1
        if state.sign > 0:
            return a2 * (-em1) / (2.0 + em1)
        return a2 * (2.0 + em1) / (-em1)
    raise TypeError(f"unsupported preparation {state!r}")


def squeeze_r_for_nbar(nbar: float) -> float:
    """Squeeze parameter with mean excitation nbar: r = asinh(sqrt(nbar))."""
    nbar = float(nbar)
    if not math.isfinite(nbar) or nbar < 0.0:
        raise ValueError(f"nbar must be finite and >= 0, got {nbar!r}")
    return math.asinh(math.sqrt(nbar))


def cat_alpha_for_nbar(nbar: float, parity: str = "even") -> float:
    """Invert mean_excitation(Cat(alpha, parity)) = nbar by bisection."""
    nbar = float(nbar)
    if not math.isfinite(nbar) or nbar <= 0.0:
        raise ValueError(f"nbar must be finite and > 0, got {nbar!r}")
    lo, hi = 1e-8, max(4.0, 2.0 * math.sqrt(nbar) + 4.0)
    f = lambda a: mean_excitation(Cat(a, parity)) - nbar
    if f(lo) > 0.0:
        # odd cats carry at least one excitation, so nbar < 1 is unreachable
        raise ValueError(f"nbar={nbar} below the reachable range for parity {parity!r}")
    if f(hi) < 0.0:
        raise ValueError("nbar outside bracketable range")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-14 * max(1.0, hi):
            break
    return 0.5 * (lo + hi)


def kappa_profile(state: StatePrep, phase: float | None) -> Callable[[float], float]:
    """kappa as a function of intensity for a preparation.

    ``phase`` fixes the perturbation phase; None means the phase-averaged
    strength.  The returned callable is pure and cheap, suitable for root
    finding.
    """
    if isinstance(state, Coherent):
        if phase is None:
            alpha = state.alpha
            return lambda i: kappa_coherent_random_phase(alpha, i)
        return lambda i: math.exp(-_check_intensity(i))
    if isinstance(state, SqueezedVacuum):
        r = state.r
        if phase is None:
            return lambda i: kappa_squeezed_random_phase(r, i)
        return lambda i: kappa_squeezed(r, i, phase)
    if isinstance(state, NumberState):
        n = state.n
        return lambda i: kappa_number(n, i)
    if isinstance(state, Cat):
        a, p = state.alpha, state.parity
        if phase is None:
            return lambda i: kappa_cat(a, p, i, RANDOM_PHASE)
        return lambda i: min(abs(overlap_cat(a, p, math.sqrt(_check_intensity(i))
                                             * cmath.exp(1j * phase))) ** 2, 1.0)
    raise TypeError(f"unsupported preparation {state!r}")

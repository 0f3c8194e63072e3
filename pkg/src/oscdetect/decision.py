"""Optimal binary-decision performance and minimum detectable intensity.

The detection probability of the best test at fixed false-alarm
probability depends on the two hypotheses only through the overlap
strength kappa.  The threshold "detection probability reaches 1/2"
defines the minimum detectable perturbation intensity, located here by a
forward scan plus bisection so that oscillating strengths (number and cat
preparations) yield the smallest root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

__all__ = [
    "DecisionPoint",
    "MinIntensity",
    "AlwaysDetectableError",
    "CrossingNotFoundError",
    "ROOT_FIND",
    "CLOSED_FORM",
    "detection_probability",
    "critical_kappa",
    "critical_kappa_bisect",
    "min_detectable_intensity",
    "min_intensity_exponential",
    "reference_scaling",
    "ReferenceScaling",
    "REFERENCE_FAMILIES",
]

ROOT_FIND = "root-find"
CLOSED_FORM = "closed-form"


class AlwaysDetectableError(Exception):
    """False alarm above 1/2: the detection threshold is met for every
    overlap strength, so no critical strength exists."""


class CrossingNotFoundError(Exception):
    """No intensity in the scanned range brought kappa to the critical
    value."""

    def __init__(self, message: str, scan_max: float):
        super().__init__(message)
        self.scan_max = scan_max


def _check_prob(p: float, name: str) -> float:
    p = float(p)
    if not math.isfinite(p) or not (0.0 <= p <= 1.0):
        raise ValueError(f"{name} must lie in [0, 1], got {p!r}")
    return p


@dataclass(frozen=True)
class DecisionPoint:
    """One operating point of the optimal test."""

    false_alarm: float
    kappa: float
    detection: float

    def __post_init__(self):
        _check_prob(self.false_alarm, "false_alarm")
        _check_prob(self.kappa, "kappa")
        _check_prob(self.detection, "detection")


@dataclass(frozen=True)
class MinIntensity:
    """Minimum detectable intensity result (units of oscillator quanta)."""

    intensity: float
    bracket: tuple[float, float]
    method: str
    false_alarm: float


def detection_probability(p01: float, kappa: float) -> float:
    """Best detection probability at false alarm p01 and overlap strength
    kappa:

        P11 = [sqrt(p01 kappa) + sqrt((1 - p01)(1 - kappa))]^2   p01 <= kappa
        P11 = 1                                                  otherwise
    """
    p01 = _check_prob(p01, "p01")
    kappa = _check_prob(kappa, "kappa")
    if p01 >= kappa:
        return 1.0
    root = math.sqrt(p01 * kappa) + math.sqrt((1.0 - p01) * (1.0 - kappa))
    return min(root * root, 1.0)


def critical_kappa(p01: float) -> float:
    """The overlap strength at which detection drops to 1/2:

        kappa* = (1 + 2 sqrt(p01 (1 - p01))) / 2,  p01 in [0, 1/2].

    Above p01 = 1/2 every strength is detectable at threshold.
    """
    p01 = _check_prob(p01, "p01")
    if p01 > 0.5:
        raise AlwaysDetectableError(
            f"p01={p01} > 1/2: detection reaches 1/2 for every kappa")
    return 0.5 * (1.0 + 2.0 * math.sqrt(p01 * (1.0 - p01)))


def critical_kappa_bisect(p01: float, tol: float = 1e-12) -> float:
    """Same threshold located by bisection on detection_probability;
    independent of the analytic expression."""
    p01 = _check_prob(p01, "p01")
    if p01 > 0.5:
        raise AlwaysDetectableError(
            f"p01={p01} > 1/2: detection reaches 1/2 for every kappa")
    lo, hi = p01, 1.0  # detection decreases from 1 to p01 on [p01, 1]
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if detection_probability(p01, mid) > 0.5:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def min_detectable_intensity(kappa_of_intensity: Callable[[float], float],
                             p01: float, scan_max: float = 50.0,
                             scan_step: float = 1e-3,
                             tol: float = 1e-10) -> MinIntensity:
    """Smallest intensity at which detection reaches 1/2.

    Forward scan for the first down-crossing of kappa through the critical
    strength, then bisection; the scan keeps the smallest root when kappa
    oscillates.  Raises CrossingNotFoundError when no crossing lies inside
    (0, scan_max].
    """
    if not (scan_max > 0.0 and scan_step > 0.0 and tol > 0.0):
        raise ValueError("scan_max, scan_step and tol must be positive")
    k0 = kappa_of_intensity(0.0)
    if abs(k0 - 1.0) > 1e-9:
        raise ValueError(f"kappa(0) must be 1, got {k0!r}")
    kc = critical_kappa(p01)

    lo, klo = 0.0, k0
    hi = None
    steps = int(math.ceil(scan_max / scan_step))
    for i in range(1, steps + 1):
        x = min(i * scan_step, scan_max)
        kx = kappa_of_intensity(x)
        if kx <= kc:
            hi = x
            break
        lo, klo = x, kx
    if hi is None:
        raise CrossingNotFoundError(
            f"kappa never fell to the critical value {kc:.12g} on "
            f"(0, {scan_max}] at step {scan_step}", scan_max)

    for _ in range(200):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if kappa_of_intensity(mid) <= kc:
            hi = mid
        else:
            lo = mid
    return MinIntensity(intensity=0.5 * (lo + hi), bracket=(lo, hi),
                        method=ROOT_FIND, false_alarm=p01)


def min_intensity_exponential(decay_rate: float, p01: float) -> MinIntensity:
    """Closed-form minimum for strengths of the form e^{-c I}:
    M = -ln(kappa*) / c.  Exact inverse of the root-finding path for
    coherent and fixed-phase squeezed preparations."""
    decay_rate = float(decay_rate)
    if not math.isfinite(decay_rate) or decay_rate <= 0.0:
        raise ValueError(f"decay_rate must be finite and > 0, got {decay_rate!r}")
    m = -math.log(critical_kappa(p01)) / decay_rate
    return MinIntensity(intensity=m, bracket=(m, m), method=CLOSED_FORM,
                        false_alarm=p01)


# ---------------------------------------------------------------------------
# Reference scalings
# ---------------------------------------------------------------------------

COHERENT_REF = "coherent"
SQUEEZED_PHASE0 = "squeezed_phase0"
SQUEEZED_PHASE_HALF_PI = "squeezed_phase_half_pi"
SQUEEZED_RANDOM_ASYMPTOTIC = "squeezed_random_asymptotic"
NUMBER_ASYMPTOTIC = "number_asymptotic"
CAT_PHASE0 = "cat_phase0"
CAT_PHASE_HALF_PI = "cat_phase_half_pi"
CAT_RANDOM = "cat_random"

REFERENCE_FAMILIES = (
    COHERENT_REF,
    SQUEEZED_PHASE0,
    SQUEEZED_PHASE_HALF_PI,
    SQUEEZED_RANDOM_ASYMPTOTIC,
    NUMBER_ASYMPTOTIC,
    CAT_PHASE0,
    CAT_PHASE_HALF_PI,
    CAT_RANDOM,
)


@dataclass(frozen=True)
class ReferenceScaling:
    """A quoted reference value or proportionality for the minimum
    intensity.

    ``value`` is None for pure proportionalities; ``exponent`` gives the
    quoted power of the mean excitation; ``in_validity`` is False when the
    requested point lies outside the quoted asymptotic regime.
    """

    family: str
    value: float | None
    exponent: int | None
    in_validity: bool
    note: str


def _reference_prefactor(p01: float) -> float:
    """ln(2 / (1 + sqrt(p01 (1 - p01)))), the quoted false-alarm prefactor.

    Note: substituting it back into detection_probability does not return
    1/2 for p01 > 0; the root-finding path is authoritative and the
    discrepancy is asserted by the acceptance suite.
    """
    p01 = _check_prob(p01, "p01")
    return math.log(2.0 / (1.0 + math.sqrt(p01 * (1.0 - p01))))


def reference_scaling(family: str, p01: float, *, r: float | None = None,
                      nbar: float | None = None,
                      n: int | None = None) -> ReferenceScaling:
    """Quoted closed-form or asymptotic reference for the minimum
    detectable intensity.  These are reported values for comparison, not
    the root-finding result."""
    c = _reference_prefactor(p01)
    if family == COHERENT_REF:
        return ReferenceScaling(family, c, None, True,
                                "independent of the coherent amplitude")
    if family == SQUEEZED_PHASE0:
        if r is None:
            raise ValueError("squeezed_phase0 needs r")
        return ReferenceScaling(family, c * math.exp(2.0 * float(r)), 1, True,
                                "grows as e^{2r}, roughly linear in nbar")
    if family == SQUEEZED_PHASE_HALF_PI:
        nb = math.sinh(float(r)) ** 2 if nbar is None else float(nbar)
        return ReferenceScaling(family, c / (2.0 * nb + 1.0), -1, True,
                                "decays as 1/(2 nbar + 1)")
    if family == SQUEEZED_RANDOM_ASYMPTOTIC:
        nb = math.sinh(float(r)) ** 2 if nbar is None else float(nbar)
        if nb <= 0.0:
            raise ValueError("squeezed_random_asymptotic needs nbar > 0")
        return ReferenceScaling(family, c / nb, -1, nb >= 10.0,
                                "quoted interpolation, valid for nbar >= 10")
    if family == NUMBER_ASYMPTOTIC:
        a = 0.3 - 1.5 * _check_prob(p01, "p01")
        if n is None:
            return ReferenceScaling(family, a, -1, True,
                                    "constant A in M ~ A/n, quoted as rough")
        if n <= 0:
            raise ValueError("number_asymptotic needs n >= 1")
        return ReferenceScaling(family, a / float(n), -1, n >= 10,
                                "M ~ A/n with A quoted as rough")
    if family == CAT_PHASE0:
        return ReferenceScaling(family, None, 1, True,
                                "quoted proportional to nbar")
    if family == CAT_PHASE_HALF_PI:
        return ReferenceScaling(family, None, -1, True,
                                "quoted proportional to 1/(2 nbar)")
    if family == CAT_RANDOM:
        return ReferenceScaling(family, None, -1, True,
                                "quoted proportional to 1/nbar")
    raise ValueError(f"unknown family {family!r}; expected one of {REFERENCE_FAMILIES}")

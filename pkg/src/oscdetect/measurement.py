"""First-principles construction of the optimal binary measurement.

Both hypotheses are pure states, so the optimal test lives in the
two-dimensional span of the unperturbed and perturbed vectors.  The
weighted difference of the two projectors is diagonalized analytically in
the orthonormal basis {e0 = psi0, e1 ~ psi1 - <psi0|psi1> psi0}; the
positive-eigenvalue projector is the "infer perturbed" outcome.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "MeasurementModel",
    "DegenerateStatesError",
    "build_measurement",
    "roc_curve",
    "find_lambda_for_false_alarm",
    "simulate_decisions",
    "H0",
    "H1",
]

H0 = "H0"
H1 = "H1"


class DegenerateStatesError(Exception):
    """kappa = 1: the hypotheses coincide and deciding is pure guessing."""


@dataclass(frozen=True)
class MeasurementModel:
    """The 2x2 representation of rho1 - lam * rho0 and its decision data.

    ``positive_eigvec`` holds the accept-H1 eigenvector coefficients in
    the orthonormal basis {e0, e1}; ``operating_point`` is (P01, P11).
    """

    kappa: float
    overlap_phase: float
    lam: float
    eigenvalues: tuple[float, float]
    positive_eigvec: tuple[complex, complex]
    operating_point: tuple[float, float]

    @property
    def p01(self) -> float:
        return self.operating_point[0]

    @property
    def p11(self) -> float:
        return self.operating_point[1]


def build_measurement(kappa: float, overlap_phase: float, lam: float) -> MeasurementModel:
    """Diagonalize rho1 - lam rho0 in the 2D span and read off the
    operating point.

    In the {e0, e1} basis, with O = sqrt(kappa) e^{i theta} and
    s = sqrt(1 - kappa):

        rho0 = [[1, 0], [0, 0]],   rho1 = [[kappa, O s], [conj(O) s, 1 - kappa]]

    The eigenvalue product is -lam (1 - kappa) <= 0, so exactly one
    eigenvalue is nonnegative; its eigenvector defines the accept-H1
    projector.
    """
    kappa = float(kappa)
    overlap_phase = float(overlap_phase)
    lam = float(lam)
    if not (0.0 <= kappa <= 1.0) or not math.isfinite(kappa):
        raise ValueError(f"kappa must lie in [0, 1], got {kappa!r}")
    if kappa == 1.0:
        raise DegenerateStatesError(
            "kappa = 1: hypotheses indistinguishable, guessing only")
    if not math.isfinite(lam) or lam < 0.0:
        raise ValueError(f"lam must be finite and >= 0, got {lam!r}")
    if not math.isfinite(overlap_phase):
        raise ValueError("overlap_phase must be finite")

    s2 = 1.0 - kappa
    s = math.sqrt(s2)
    tr = 1.0 - lam
    det = -lam * s2
    disc = math.sqrt(tr * tr - 4.0 * det)
    # stable quadratic roots (avoid cancellation for |tr| >> 0)
    if tr >= 0.0:
        eig_pos = 0.5 * (tr + disc)
        eig_neg = det / eig_pos if eig_pos != 0.0 else 0.5 * (tr - disc)
    else:
        eig_neg = 0.5 * (tr - disc)
        eig_pos = det / eig_neg

    # eigenvector of eig_pos: (O s, eig_pos - kappa + lam), unnormalized
    v0 = cmath.exp(1j * overlap_phase) * math.sqrt(kappa) * s
    v1 = eig_pos - kappa + lam
    norm2 = kappa * s2 + v1 * v1
    if norm2 == 0.0:
        # kappa = 0 and lam = 0: accept vector is psi1 = e1
        vec = (0.0 + 0.0j, 1.0 + 0.0j)
        p01, p11 = 0.0, 1.0
    else:
        inv = 1.0 / math.sqrt(norm2)
        vec = (v0 * inv, complex(v1 * inv))
        p01 = min(max(kappa * s2 / norm2, 0.0), 1.0)
        p11 = min(max(s2 * (eig_pos + lam) ** 2 / norm2, 0.0), 1.0)
    return MeasurementModel(kappa=kappa, overlap_phase=overlap_phase, lam=lam,
                            eigenvalues=(eig_pos, eig_neg),
                            positive_eigvec=vec, operating_point=(p01, p11))


def roc_curve(kappa: float, lambda_grid) -> list[tuple[float, float]]:
    """Operating points (P01, P11) for each Lagrange weight, sorted by P01."""
    pts = [build_measurement(kappa, 0.0, lam).operating_point for lam in lambda_grid]
    return sorted(pts, key=lambda p: p[0])


def find_lambda_for_false_alarm(kappa: float, p01: float,
                                rel_tol: float = 1e-14) -> MeasurementModel:
    """Locate the Lagrange weight whose operating point has the requested
    false-alarm probability (0 < p01 <= kappa)."""
    kappa = float(kappa)
    p01 = float(p01)
    if not (0.0 < p01 <= kappa):
        raise ValueError(
            f"p01 must lie in (0, kappa={kappa!r}]; beyond kappa the optimal "
            "test already has P11 = 1 at P01 = kappa")
    if p01 == kappa:
        return build_measurement(kappa, 0.0, 0.0)
    lo, hi = 0.0, 1.0
    while build_measurement(kappa, 0.0, hi).p01 > p01:
        lo, hi = hi, 4.0 * hi
        if hi > 1e18:
            raise ValueError(f"no Lagrange weight reaches p01={p01!r}")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if build_measurement(kappa, 0.0, mid).p01 > p01:
            lo = mid
        else:
            hi = mid
        if hi - lo <= rel_tol * max(1.0, hi):
            break
    return build_measurement(kappa, 0.0, 0.5 * (lo + hi))


def simulate_decisions(model: MeasurementModel, hypothesis: str,
                       n_trials: int, seed: int) -> tuple[int, int]:
    """Draw measurement outcomes under one hypothesis and count accepts.

    Bernoulli trials at the model's own operating probability, from a
    deterministic seeded generator: identical seeds give identical counts.
    """
    if hypothesis not in (H0, H1):
        raise ValueError(f"hypothesis must be '{H0}' or '{H1}', got {hypothesis!r}")
    n_trials = int(n_trials)
    if n_trials < 1:
        raise ValueError("n_trials must be >= 1")
    p = model.p01 if hypothesis == H0 else model.p11
    rng = np.random.default_rng(int(seed))
    accepts = int(np.count_nonzero(rng.random(n_trials) < p))
    return accepts, n_trials

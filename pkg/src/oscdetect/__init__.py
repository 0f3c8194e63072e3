"""Optimal binary-decision limits for a driven quantum harmonic oscillator.

Computes the best achievable detection probability for "has the
oscillator been displaced?" as a function of the false-alarm probability
and the initial preparation (coherent, squeezed vacuum, number, or cat
state), along with the minimum detectable perturbation intensity.  Every
closed form is cross-validated by an independent truncated number-basis
oracle and a Monte Carlo measurement simulation.
"""

from ._backend import BACKEND
from .decision import (
    AlwaysDetectableError,
    CrossingNotFoundError,
    DecisionPoint,
    MinIntensity,
    ReferenceScaling,
    critical_kappa,
    critical_kappa_bisect,
    detection_probability,
    min_detectable_intensity,
    min_intensity_exponential,
    reference_scaling,
)
from .drive import DriveSignal, GammaEstimate, gamma_integral, perturbation_amplitude
from .fock import (
    Cat,
    Coherent,
    FixedPerturbation,
    FockTruncationError,
    FockVector,
    NumberState,
    OverlapResult,
    Perturbation,
    QuadratureConvergenceError,
    RandomPhasePerturbation,
    SqueezedVacuum,
    StatePrep,
    TruncationReport,
    default_dim,
    displacement_element,
    fock_amplitudes,
    overlap_numeric,
    phase_averaged_kappa_numeric,
    truncation_check,
)
from .measurement import (
    DegenerateStatesError,
    MeasurementModel,
    build_measurement,
    find_lambda_for_false_alarm,
    roc_curve,
    simulate_decisions,
)
from .overlaps import (
    kappa_cat,
    kappa_cat_reference,
    kappa_coherent_random_phase,
    kappa_number,
    kappa_profile,
    kappa_squeezed,
    kappa_squeezed_random_phase,
    kappa_squeezed_random_phase_reference,
    kappa_squeezed_reference,
    mean_excitation,
    overlap_cat,
    overlap_cat_compact,
    overlap_coherent,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

"""Two-dimensional optimal-measurement construction and Monte Carlo."""

import math

import numpy as np
import pytest

from oscdetect.decision import detection_probability
from oscdetect.measurement import (
    H0,
    H1,
    DegenerateStatesError,
    build_measurement,
    find_lambda_for_false_alarm,
    roc_curve,
    simulate_decisions,
)


def test_orthogonal_states():
    model = build_measurement(0.0, 0.0, 1.0)
    assert model.operating_point == (0.0, 1.0)


def test_lambda_zero_projects_onto_perturbed_state():
    for kappa in (0.1, 0.5, 0.9):
        model = build_measurement(kappa, 0.7, 0.0)
        assert model.p11 == pytest.approx(1.0, abs=1e-12)
        assert model.p01 == pytest.approx(kappa, abs=1e-12)
        # accept vector is psi1 = (O, s) in the {e0, e1} basis
        v0, v1 = model.positive_eigvec
        assert abs(v0) == pytest.approx(math.sqrt(kappa), abs=1e-12)
        assert v1.real == pytest.approx(math.sqrt(1.0 - kappa), abs=1e-12)


def test_determinant_identity():
    for kappa in (0.0, 0.3, 0.99):
        for lam in (0.0, 0.5, 2.0, 100.0):
            model = build_measurement(kappa, 0.0, lam)
            prod = model.eigenvalues[0] * model.eigenvalues[1]
            assert prod == pytest.approx(-lam * (1.0 - kappa), abs=1e-12)
            assert model.eigenvalues[0] >= 0.0 >= model.eigenvalues[1]


def test_operating_points_on_detection_curve():
    lams = np.concatenate(([0.0], np.geomspace(1e-3, 1e3, 61)))
    for kappa in (0.5, math.exp(-1.0)):
        for lam in lams:
            p01, p11 = build_measurement(kappa, 0.0, float(lam)).operating_point
            assert p11 == pytest.approx(detection_probability(p01, kappa), abs=1e-10)


def test_operating_point_independent_of_overlap_phase():
    for phase in (-2.5, 0.0, 0.4, 3.1):
        model = build_measurement(0.42, phase, 1.3)
        ref = build_measurement(0.42, 0.0, 1.3)
        assert model.p01 == pytest.approx(ref.p01, abs=1e-15)
        assert model.p11 == pytest.approx(ref.p11, abs=1e-15)


def test_roc_sorted_and_dominant():
    pts = roc_curve(0.37, np.geomspace(1e-3, 1e3, 41))
    p01s = [p for p, _ in pts]
    p11s = [q for _, q in pts]
    assert p01s == sorted(p01s)
    assert all(b2 >= b1 - 1e-12 for b1, b2 in zip(p11s, p11s[1:]))


def test_roc_near_degenerate_limit():
    pts = roc_curve(1.0 - 1e-9, [0.1, 1.0, 10.0])
    for p01, p11 in pts:
        assert p11 == pytest.approx(p01, abs=1e-4)


def test_degenerate_states_error_and_validation():
    with pytest.raises(DegenerateStatesError):
        build_measurement(1.0, 0.0, 0.5)
    with pytest.raises(ValueError):
        build_measurement(0.5, 0.0, -1.0)
    with pytest.raises(ValueError):
        build_measurement(1.2, 0.0, 1.0)


def test_find_lambda_for_false_alarm():
    model = find_lambda_for_false_alarm(math.exp(-1.0), 0.05)
    assert model.p01 == pytest.approx(0.05, abs=1e-12)
    assert model.p11 == pytest.approx(
        detection_probability(0.05, math.exp(-1.0)), abs=1e-10)
    with pytest.raises(ValueError):
        find_lambda_for_false_alarm(0.3, 0.4)  # beyond kappa: P11 = 1 region
    with pytest.raises(ValueError):
        find_lambda_for_false_alarm(0.3, 0.0)


def test_simulate_trivial_probabilities():
    sure = build_measurement(0.2, 0.0, 0.0)       # P11 = 1
    accepts, n = simulate_decisions(sure, H1, 4096, 7)
    assert accepts == n
    silent = build_measurement(0.0, 0.0, 1.0)     # P01 = 0
    accepts, _ = simulate_decisions(silent, H0, 4096, 7)
    assert accepts == 0


def test_simulate_deterministic_under_seed():
    model = find_lambda_for_false_alarm(math.exp(-1.0), 0.05)
    a = simulate_decisions(model, H1, 100000, 42)
    b = simulate_decisions(model, H1, 100000, 42)
    c = simulate_decisions(model, H1, 100000, 43)
    assert a == b
    assert a != c


def test_simulate_concentrates_on_model_probability():
    model = find_lambda_for_false_alarm(math.exp(-1.0), 0.05)
    n = 100000
    accepts, _ = simulate_decisions(model, H1, n, 1234)
    p = model.p11
    assert abs(accepts / n - p) <= 3.0 * math.sqrt(p * (1.0 - p) / n)


def test_simulate_validation():
    model = build_measurement(0.5, 0.0, 1.0)
    with pytest.raises(ValueError):
        simulate_decisions(model, "H2", 10, 1)
    with pytest.raises(ValueError):
        simulate_decisions(model, H0, 0, 1)

"""Acceptance suite: one test per criterion, one printed line per criterion.

Run with ``pytest tests/test_acceptance.py -v -s``.

Three criteria (05, part of 06, part of 08) assert quoted reference
scalings that conflict with the exact overlap physics this package
computes (and which its independent number-basis oracle confirms).  They
are implemented exactly as stated and left to fail; the assertion
messages and README explain each discrepancy.  Everything else passes.
"""

import math
import subprocess
import sys

import numpy as np

from oscdetect import decision, fock, measurement, overlaps
from oscdetect.cli import main as cli_main

LN2 = math.log(2.0)


def _criterion(num: int, ok: bool, text: str) -> None:
    print(f"\n[ACCEPTANCE {num:02d}] {'PASS' if ok else 'FAIL'}: {text}")


# ---------------------------------------------------------------------------
# 01: detection-curve identity for the 2D measurement construction
# ---------------------------------------------------------------------------

def test_criterion_01_detection_curve_identity():
    lams = np.concatenate(([0.0], np.geomspace(1e-3, 1e3, 63)))
    worst = 0.0
    for kappa in (0.1, math.exp(-1.0), 0.5, 0.9):
        for lam in lams:
            p01, p11 = measurement.build_measurement(kappa, 0.0, float(lam)).operating_point
            worst = max(worst, abs(p11 - decision.detection_probability(p01, kappa)))
    ok = worst < 1e-10
    _criterion(1, ok, f"measurement operating points on the detection curve "
                      f"(worst |dP11| = {worst:.2e}, 64 weights x 4 strengths)")
    assert ok, f"operating points deviate from the detection curve by {worst:.2e}"


# ---------------------------------------------------------------------------
# 02: closed forms match the number-basis oracle
# ---------------------------------------------------------------------------

def test_criterion_02_oracle_equivalence():
    intensities = (0.1, 0.5, 1.0, 2.0)
    phases = (0.0, math.pi / 4, math.pi / 2)
    worst = 0.0

    for alpha in (0.0, 1.0, 3 + 2j):
        for i in intensities:
            for phi in phases:
                z = math.sqrt(i) * complex(math.cos(phi), math.sin(phi))
                k_or = fock.overlap_numeric(fock.Coherent(alpha), z, dim=160).kappa
                worst = max(worst, abs(k_or - overlaps.overlap_coherent(alpha, z).kappa))

    dims = {0.0: 64, 0.5: 96, 1.0: 192, 1.5: 288}
    for r, dim in dims.items():
        for i in intensities:
            for phi in phases:
                z = math.sqrt(i) * complex(math.cos(phi), math.sin(phi))
                k_or = fock.overlap_numeric(fock.SqueezedVacuum(r), z, dim=dim).kappa
                worst = max(worst, abs(k_or - overlaps.kappa_squeezed(r, i, phi)))
            k_or = fock.phase_averaged_kappa_numeric(fock.SqueezedVacuum(r), i,
                                                     dim=dim, quad_points=256)
            worst = max(worst, abs(k_or - overlaps.kappa_squeezed_random_phase(r, i)))

    for n in range(11):
        for i in intensities:
            for phi in phases:
                z = math.sqrt(i) * complex(math.cos(phi), math.sin(phi))
                k_or = fock.overlap_numeric(fock.NumberState(n), z, dim=96).kappa
                worst = max(worst, abs(k_or - overlaps.kappa_number(n, i)))

    ok = worst < 1e-8
    _criterion(2, ok, f"closed forms vs oracle over the full grid "
                      f"(worst |dkappa| = {worst:.2e})")
    assert ok, f"closed form vs oracle mismatch {worst:.2e} exceeds 1e-8"


# ---------------------------------------------------------------------------
# 03: coherent minimum intensity
# ---------------------------------------------------------------------------

def test_criterion_03_coherent_minimum():
    ms = []
    for alpha in (0.0, 1.0, 3 + 2j):
        profile = overlaps.kappa_profile(fock.Coherent(alpha), 0.0)
        ms.append(decision.min_detectable_intensity(profile, 0.0).intensity)
    spread = max(ms) - min(ms)
    err = max(abs(m - LN2) for m in ms)
    ok = err < 1e-10 and spread < 1e-10
    _criterion(3, ok, f"coherent minimum ln 2 (err {err:.2e}), amplitude "
                      f"invariant (spread {spread:.2e})")
    assert ok, f"coherent minimum off ln2 by {err:.2e} or alpha-dependent ({spread:.2e})"


# ---------------------------------------------------------------------------
# 04: squeezed phase-matched scaling e^{2r}
# ---------------------------------------------------------------------------

def test_criterion_04_squeezed_phase_matched_scaling():
    base = decision.min_detectable_intensity(
        overlaps.kappa_profile(fock.SqueezedVacuum(0.0), 0.0), 0.0).intensity
    worst = 0.0
    for r in (0.5, 1.0, 2.0):
        m = decision.min_detectable_intensity(
            overlaps.kappa_profile(fock.SqueezedVacuum(r), 0.0), 0.0).intensity
        worst = max(worst, abs(m / base - math.exp(2.0 * r)) / math.exp(2.0 * r))
    ok = worst < 1e-8
    _criterion(4, ok, f"M(phi=0, r)/M(phi=0, 0) = e^(2r) (worst rel err {worst:.2e})")
    assert ok, f"phase-matched scaling deviates by {worst:.2e} relative"


# ---------------------------------------------------------------------------
# 05: squeezed out-of-phase scaling ln2 / (2 nbar + 1)  [quoted reference]
# ---------------------------------------------------------------------------

def test_criterion_05_squeezed_out_of_phase_scaling():
    rows = []
    worst = 0.0
    for r in (0.5, 1.0, 2.0):
        nbar = math.sinh(r) ** 2
        m = decision.min_detectable_intensity(
            overlaps.kappa_profile(fock.SqueezedVacuum(r), math.pi / 2), 0.0).intensity
        quoted = LN2 / (2.0 * nbar + 1.0)
        exact = LN2 * math.exp(-2.0 * r)
        rows.append((r, m, quoted, exact))
        worst = max(worst, abs(m - quoted) / quoted)
    ok = worst < 1e-8
    detail = "; ".join(f"r={r}: M={m:.6f}, quoted={q:.6f}, exact-form={e:.6f}"
                       for r, m, q, e in rows)
    _criterion(5, ok, f"out-of-phase minimum vs quoted ln2/(2 nbar + 1): {detail}")
    assert ok, (
        "KNOWN DISCREPANCY, kept failing by design: the root-found minimum "
        "follows the exact out-of-phase strength kappa = exp(-I e^{2r}) "
        "(confirmed against the number-basis oracle to 1e-10, see acceptance "
        "02), giving M = ln2 * e^{-2r}.  The quoted scaling ln2/(2 nbar + 1) "
        "follows from a cos^2 phase dependence that the oracle rules out.  "
        f"Details: {detail}.  See README 'Documented discrepancies'.")


# ---------------------------------------------------------------------------
# 06: random-phase squeezed asymptote
# ---------------------------------------------------------------------------

def test_criterion_06_random_phase_squeezed_asymptote():
    cs = {}
    for nbar in (10, 20, 50, 100, 200):
        r = overlaps.squeeze_r_for_nbar(nbar)
        profile = overlaps.kappa_profile(fock.SqueezedVacuum(r), None)
        m = decision.min_detectable_intensity(profile, 0.0).intensity
        cs[nbar] = m * nbar

    # closed form used for speed is oracle-checked at the regime edge
    r10 = overlaps.squeeze_r_for_nbar(10.0)
    i10 = cs[10] / 10.0
    k_quad = fock.phase_averaged_kappa_numeric(fock.SqueezedVacuum(r10), i10,
                                               dim=576, quad_points=256)
    k_cf = overlaps.kappa_squeezed_random_phase(r10, i10)
    oracle_ok = abs(k_quad - k_cf) < 1e-8

    tail = [cs[n] for n in (20, 50, 100, 200)]
    stability = (max(tail) - min(tail)) / min(tail)
    stab_ok = stability < 0.10
    band = max(abs(c - LN2) / LN2 for c in cs.values())
    band_ok = band < 0.25
    ok = oracle_ok and stab_ok and band_ok
    detail = (f"c(nbar)=M*nbar: " + ", ".join(f"{n}: {c:.4f}" for n, c in cs.items())
              + f"; stability {stability:.2%}; max |c - ln2|/ln2 = {band:.1%}; "
                f"quadrature check |dk| = {abs(k_quad - k_cf):.1e}")
    _criterion(6, ok, detail)
    assert oracle_ok, "closed-form random-phase strength no longer matches quadrature"
    assert stab_ok, f"c(nbar) varies by {stability:.1%} between nbar=20 and 200"
    assert band_ok, (
        "KNOWN DISCREPANCY, kept failing by design: the interpolation band "
        "'within 25% of ln 2' presumes the quoted phase-averaged strength "
        "(halved Bessel argument).  Against the exact phase average, which "
        "the quadrature oracle confirms (see the quadrature check above), "
        "M*nbar converges to ~0.382 = the root of e^{-2c} I0(c)^2 = 1/2, "
        f"44.9% below ln 2.  Computed: {detail}.  See README.")


# ---------------------------------------------------------------------------
# 07: number-state constant
# ---------------------------------------------------------------------------

def test_criterion_07_number_state_constant():
    prods0, prods5 = [], []
    for n in (50, 100, 200):
        m0 = decision.min_detectable_intensity(
            overlaps.kappa_profile(fock.NumberState(n), None), 0.0).intensity
        m5 = decision.min_detectable_intensity(
            overlaps.kappa_profile(fock.NumberState(n), None), 0.05).intensity
        prods0.append(m0 * n)
        prods5.append(m5 * n)
    in_band = all(0.28 <= p <= 0.36 for p in prods0)
    decreased = all(b < a for a, b in zip(prods0, prods5))
    ok = in_band and decreased
    _criterion(7, ok, f"M*n at p01=0: {[f'{p:.4f}' for p in prods0]} (band [0.28, 0.36]); "
                      f"at p01=0.05: {[f'{p:.4f}' for p in prods5]} (decreasing trend)")
    assert in_band, f"M*n outside [0.28, 0.36]: {prods0}"
    assert decreased, f"M*n did not decrease at p01=0.05: {prods5} vs {prods0}"


# ---------------------------------------------------------------------------
# 08: cat asymptotic ratios
# ---------------------------------------------------------------------------

def test_criterion_08_cat_asymptotics():
    modes = ((0.0, 2.0, "phi=0"), (math.pi / 2, 0.5, "phi=pi/2"), (None, 0.5, "random"))
    results = {}
    for phase, expected, tag in modes:
        ratios = []
        for nbar in (5.0, 10.0, 20.0):
            a1 = overlaps.cat_alpha_for_nbar(nbar, "even")
            a2 = overlaps.cat_alpha_for_nbar(2.0 * nbar, "even")
            m1 = decision.min_detectable_intensity(
                overlaps.kappa_profile(fock.Cat(a1, "even"), phase), 0.0).intensity
            m2 = decision.min_detectable_intensity(
                overlaps.kappa_profile(fock.Cat(a2, "even"), phase), 0.0).intensity
            ratios.append(m2 / m1)
        results[tag] = (expected, ratios)
    checks = {tag: all(abs(rat - exp) / exp <= 0.15 for rat in rats)
              for tag, (exp, rats) in results.items()}
    ok = all(checks.values())
    detail = "; ".join(
        f"{tag}: M(2 nbar)/M(nbar) = {[f'{x:.3f}' for x in rats]} vs {exp}"
        for tag, (exp, rats) in results.items())
    _criterion(8, ok, detail)
    assert checks["phi=pi/2"], f"pi/2 ratios off: {results['phi=pi/2']}"
    assert checks["random"], f"random-phase ratios off: {results['random']}"
    assert checks["phi=0"], (
        "KNOWN DISCREPANCY, kept failing by design: along the lobe axis the "
        "phase-matched cat strength collapses like a coherent state's, "
        "kappa(I) ~= e^{-I} (1 + e^{-2 a^2} cosh(2 a sqrt(I)))^2 with the "
        "cosh revival peaking at kappa ~= 1/4 < 1/2, so the threshold "
        "crossing sits at M ~= ln 2 for every large nbar and the ratio "
        "M(2 nbar)/M(nbar) is ~1, not the quoted 2.  The out-of-phase and "
        f"phase-averaged ratios do match.  Computed: {detail}.  See README.")


# ---------------------------------------------------------------------------
# 09: Monte Carlo concentration
# ---------------------------------------------------------------------------

def test_criterion_09_monte_carlo_concentration():
    model = measurement.find_lambda_for_false_alarm(math.exp(-1.0), 0.05)
    n = 10 ** 5
    worst = 0.0
    for seed in range(10):
        for hyp, p, s in ((measurement.H0, model.p01, seed),
                          (measurement.H1, model.p11, seed + 2000)):
            accepts, _ = measurement.simulate_decisions(model, hyp, n, s)
            bound = 3.0 * math.sqrt(p * (1.0 - p) / n)
            worst = max(worst, abs(accepts / n - p) / bound)
    ok = worst <= 1.0
    _criterion(9, ok, f"empirical frequencies within 3 sigma for 10 seeds per "
                      f"hypothesis (worst deviation {worst:.2f} of the bound)")
    assert ok, f"empirical frequency outside 3 sigma bound (ratio {worst:.2f})"


# ---------------------------------------------------------------------------
# 10: emitted minimum-intensity grid ordering in the false alarm
# ---------------------------------------------------------------------------

def test_criterion_10_figure_grid_ordering(tmp_path):
    out = tmp_path / "fig4.csv"
    rc = cli_main(["fig", "--which", "4", "--p01", "0,0.01,0.02,0.05",
                   "--nbar", "1", "--out", str(out)])
    assert rc == 0
    data_rows = [ln for ln in out.read_text().splitlines()
                 if ln and not ln.startswith("#")]
    header, row = data_rows[0].split(","), data_rows[1].split(",")
    assert header[0] == "nbar" and float(row[0]) == 1.0
    ms = [float(v) for v in row[1:]]
    ok = all(a > b for a, b in zip(ms, ms[1:]))
    _criterion(10, ok, f"emitted grid at nbar=1: M = {[f'{m:.5f}' for m in ms]} "
                       f"strictly decreasing over p01 = 0, 0.01, 0.02, 0.05")
    assert ok, f"minimum intensity not strictly decreasing in p01: {ms}"


# ---------------------------------------------------------------------------
# 11: quoted false-alarm prefactor vs root-found minimum
# ---------------------------------------------------------------------------

def test_criterion_11_reference_prefactor_discrepancy():
    p01 = 0.05
    m_quoted = decision.reference_scaling("coherent", p01).value
    p11_quoted = decision.detection_probability(p01, math.exp(-m_quoted))
    res = decision.min_detectable_intensity(
        overlaps.kappa_profile(fock.Coherent(0), 0.0), p01, tol=1e-12)
    p11_root = decision.detection_probability(p01, math.exp(-res.intensity))
    quoted_off = abs(p11_quoted - 0.615) < 1e-3 and abs(p11_quoted - 0.5) > 0.1
    root_on = abs(p11_root - 0.5) < 1e-10
    ok = quoted_off and root_on
    _criterion(11, ok, f"quoted prefactor M={m_quoted:.6f} back-substitutes to "
                       f"P11={p11_quoted:.6f} (not 1/2); root-found M={res.intensity:.6f} "
                       f"gives P11={p11_root:.12f}")
    assert quoted_off, (f"expected the quoted prefactor to back-substitute to ~0.615, "
                        f"got {p11_quoted}")
    assert root_on, f"root-found minimum misses P11 = 1/2 by {abs(p11_root - 0.5):.2e}"


if __name__ == "__main__":
    sys.exit(subprocess.call([sys.executable, "-m", "pytest", __file__, "-v", "-s"]))

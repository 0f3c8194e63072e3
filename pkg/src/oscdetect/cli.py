"""Command-line front end.

Subcommands compute overlaps, ROC curves, minimum detectable intensities,
parameter sweeps, Monte Carlo runs, drive-record processing, and the
standard figure grids, all emitted as CSV with a '#'-prefixed metadata
block.  Identical flags produce byte-identical output.
"""

from __future__ import annotations

import argparse
import cmath
import math
import re
import sys

import numpy as np

from . import decision, drive, fock, measurement, overlaps
from ._backend import BACKEND

__all__ = ["main"]

_PI_RE = re.compile(r"^\s*([+-]?)\s*(\d+\.?\d*)?\s*pi\s*(?:/\s*(\d+\.?\d*))?\s*$")


def _parse_float(text: str) -> float:
    """Float literal, or a pi fraction like 'pi', '-pi/2', '0.75pi'."""
    m = _PI_RE.match(text)
    if m:
        sign = -1.0 if m.group(1) == "-" else 1.0
        coef = float(m.group(2)) if m.group(2) else 1.0
        div = float(m.group(3)) if m.group(3) else 1.0
        return sign * coef * math.pi / div
    return float(text)


def _parse_complex(text: str) -> complex:
    return complex(text.strip().replace("i", "j"))


def _parse_values(text: str, default_count: int = 50) -> list[float]:
    """Comma list, or a range 'lo..hi[:count[:log|lin]]'."""
    if ".." in text:
        head, *opts = text.split(":")
        lo_s, hi_s = head.split("..")
        lo, hi = _parse_float(lo_s), _parse_float(hi_s)
        count = int(opts[0]) if opts else default_count
        spacing = opts[1] if len(opts) > 1 else "lin"
        if count < 1:
            raise ValueError("range count must be >= 1")
        if spacing == "log":
            if lo <= 0.0 or hi <= 0.0:
                raise ValueError("log spacing needs positive endpoints")
            return list(np.geomspace(lo, hi, count))
        if spacing != "lin":
            raise ValueError(f"unknown spacing {spacing!r}")
        return list(np.linspace(lo, hi, count))
    return [_parse_float(tok) for tok in text.split(",") if tok.strip()]


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, str):
        return x
    return f"{float(x):.17g}"


def _emit(out_path: str, meta: dict, columns: list[str], rows) -> None:
    lines = [f"# oscdetect {meta.pop('subcommand')}"]
    lines.append(f"# backend={BACKEND}")
    for key in sorted(meta):
        lines.append(f"# {key}={meta[key]}")
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    text = "\n".join(lines) + "\n"
    if out_path == "-":
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


# ---------------------------------------------------------------------------
# State / perturbation flags
# ---------------------------------------------------------------------------

def _add_state_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--state", required=required,
                   choices=["coherent", "squeezed", "number", "cat"])
    p.add_argument("--alpha", default=None,
                   help="coherent amplitude (complex, e.g. '1+0.5i') or cat amplitude (real > 0)")
    p.add_argument("--r", default=None, help="squeeze parameter r >= 0")
    p.add_argument("--nbar", default=None,
                   help="mean excitation; alternative to --r / --alpha for squeezed and cat")
    p.add_argument("--n", type=int, default=None, help="number-state index")
    p.add_argument("--parity", choices=["even", "odd"], default="even")


def _state_from_args(ns) -> fock.StatePrep:
    if ns.state == "coherent":
        return fock.Coherent(_parse_complex(ns.alpha) if ns.alpha is not None else 0j)
    if ns.state == "squeezed":
        if ns.nbar is not None:
            return fock.SqueezedVacuum(overlaps.squeeze_r_for_nbar(_parse_float(ns.nbar)))
        if ns.r is None:
            raise ValueError("squeezed state needs --r or --nbar")
        return fock.SqueezedVacuum(_parse_float(ns.r))
    if ns.state == "number":
        if ns.n is None:
            raise ValueError("number state needs --n")
        return fock.NumberState(ns.n)
    if ns.nbar is not None:
        return fock.Cat(overlaps.cat_alpha_for_nbar(_parse_float(ns.nbar), ns.parity),
                        ns.parity)
    if ns.alpha is None:
        raise ValueError("cat state needs --alpha or --nbar")
    return fock.Cat(_parse_float(ns.alpha), ns.parity)


def _state_meta(state: fock.StatePrep) -> dict:
    if isinstance(state, fock.Coherent):
        return {"state": "coherent", "alpha": _fmt(state.alpha.real) + "+" + _fmt(state.alpha.imag) + "i"}
    if isinstance(state, fock.SqueezedVacuum):
        return {"state": "squeezed", "r": _fmt(state.r)}
    if isinstance(state, fock.NumberState):
        return {"state": "number", "n": state.n}
    return {"state": "cat", "alpha": _fmt(state.alpha), "parity": state.parity}


def _add_perturbation_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--z-abs", default=None, help="|z| of a fixed perturbation")
    p.add_argument("--z-phase", default="0", help="arg z (accepts 'pi/4' style)")
    p.add_argument("--intensity", default=None, help="|z|^2 instead of --z-abs")
    p.add_argument("--random-phase", action="store_true",
                   help="perturbation of known intensity, uniformly random phase")


def _perturbation_from_args(ns) -> fock.Perturbation:
    if ns.random_phase:
        if ns.intensity is None:
            raise ValueError("--random-phase needs --intensity")
        return fock.RandomPhasePerturbation(_parse_float(ns.intensity))
    if ns.z_abs is not None:
        r = _parse_float(ns.z_abs)
    elif ns.intensity is not None:
        r = math.sqrt(_parse_float(ns.intensity))
    else:
        raise ValueError("need --z-abs or --intensity")
    return fock.FixedPerturbation(cmath.rect(r, _parse_float(ns.z_phase)) if r else 0j)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default="-", help="output CSV path (default stdout)")
    p.add_argument("--dim", type=int, default=0,
                   help="oracle truncation override (0 = automatic)")
    p.add_argument("--quad", type=int, default=128,
                   help="oracle phase-average quadrature nodes")


def _oracle_kappa(state, pert, dim, quad) -> float:
    start = dim if dim else None
    for _ in range(8):
        try:
            if isinstance(pert, fock.RandomPhasePerturbation):
                return fock.phase_averaged_kappa_numeric(
                    state, pert.intensity, dim=start, quad_points=quad)
            return fock.overlap_numeric(state, pert.z, dim=start).kappa
        except fock.FockTruncationError as err:
            if err.suggested_dim is None:
                raise
            start = err.suggested_dim
    raise fock.FockTruncationError("oracle truncation did not settle")


def _closed_kappa(state, pert) -> float:
    if isinstance(pert, fock.RandomPhasePerturbation):
        return overlaps.kappa_profile(state, None)(pert.intensity)
    return overlaps.kappa_profile(state, pert.phase)(pert.intensity)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _cmd_overlap(ns) -> int:
    state = _state_from_args(ns)
    pert = _perturbation_from_args(ns)
    meta = {"subcommand": "overlap", **_state_meta(state)}
    kappa = _closed_kappa(state, pert)
    if isinstance(pert, fock.RandomPhasePerturbation):
        meta["perturbation"] = "random-phase"
        columns = ["intensity", "kappa_bar"]
        row = [pert.intensity, kappa]
    else:
        meta["perturbation"] = "fixed"
        o = None
        if isinstance(state, fock.Coherent):
            o = overlaps.overlap_coherent(state.alpha, pert.z).overlap
        elif isinstance(state, fock.Cat):
            o = overlaps.overlap_cat(state.alpha, state.parity, pert.z)
        columns = ["z_abs", "z_phase", "overlap_re", "overlap_im", "kappa"]
        row = [abs(pert.z), pert.phase,
               o.real if o is not None else "", o.imag if o is not None else "", kappa]
    if ns.oracle:
        k_or = _oracle_kappa(state, pert, ns.dim, ns.quad)
        columns += ["kappa_oracle", "abs_diff"]
        row += [k_or, abs(k_or - kappa)]
    _emit(ns.out, meta, columns, [row])
    _say(f"kappa = {kappa:.12g} ({meta['state']})")
    return 0


def _cmd_roc(ns) -> int:
    if ns.kappa is not None:
        kappa = _parse_float(ns.kappa)
    elif ns.state is not None:
        kappa = _closed_kappa(_state_from_args(ns), _perturbation_from_args(ns))
    else:
        raise ValueError("roc needs --kappa or a state preparation")
    lams = [0.0] + _parse_values(ns.lambdas, default_count=63)
    rows = []
    for lam in lams:
        model = measurement.build_measurement(kappa, 0.0, lam)
        rows.append([lam, model.p01, model.p11,
                     model.eigenvalues[0], model.eigenvalues[1]])
    rows.sort(key=lambda r: r[1])
    _emit(ns.out, {"subcommand": "roc", "kappa": _fmt(kappa), "lambdas": ns.lambdas},
          ["lam", "p01", "p11", "eig_pos", "eig_neg"], rows)
    _say(f"ROC with {len(rows)} operating points at kappa = {kappa:.12g}")
    return 0


def _min_profile(ns, state):
    phase = None if ns.random_phase else _parse_float(ns.z_phase)
    return overlaps.kappa_profile(state, phase), phase


def _cmd_min_intensity(ns) -> int:
    state = _state_from_args(ns)
    profile, phase = _min_profile(ns, state)
    p01s = _parse_values(ns.p01)
    rows = []
    for p01 in p01s:
        res = decision.min_detectable_intensity(
            profile, p01, scan_max=ns.scan_max, scan_step=ns.scan_step, tol=ns.tol)
        kappa_at = profile(res.intensity)
        row = [p01, res.intensity, res.bracket[0], res.bracket[1], res.method,
               kappa_at, decision.detection_probability(p01, kappa_at)]
        if ns.oracle:
            pert = (fock.RandomPhasePerturbation(res.intensity) if phase is None
                    else fock.FixedPerturbation(cmath.rect(math.sqrt(res.intensity), phase)))
            row.append(_oracle_kappa(state, pert, ns.dim, ns.quad))
        rows.append(row)
    columns = ["p01", "min_intensity", "bracket_lo", "bracket_hi", "method",
               "kappa_at_min", "p11_at_min"]
    if ns.oracle:
        columns.append("kappa_oracle_at_min")
    meta = {"subcommand": "min-intensity", **_state_meta(state),
            "phase": "random" if phase is None else _fmt(phase),
            "scan_max": _fmt(ns.scan_max), "scan_step": _fmt(ns.scan_step),
            "tol": _fmt(ns.tol)}
    _emit(ns.out, meta, columns, rows)
    _say(f"{len(rows)} minimum-intensity value(s) for {meta['state']}")
    return 0


def _cmd_sweep(ns) -> int:
    state = _state_from_args(ns)
    profile, phase = _min_profile(ns, state)
    grid = _parse_values(ns.intensities)
    rows = []
    for i in grid:
        row = [i, profile(i)]
        if ns.oracle:
            pert = (fock.RandomPhasePerturbation(i) if phase is None
                    else fock.FixedPerturbation(cmath.rect(math.sqrt(i), phase)))
            row.append(_oracle_kappa(state, pert, ns.dim, ns.quad))
        rows.append(row)
    columns = ["intensity", "kappa"] + (["kappa_oracle"] if ns.oracle else [])
    meta = {"subcommand": "sweep", **_state_meta(state),
            "phase": "random" if phase is None else _fmt(phase),
            "intensities": ns.intensities}
    _emit(ns.out, meta, columns, rows)
    _say(f"swept {len(rows)} intensities for {meta['state']}")
    return 0


def _cmd_simulate(ns) -> int:
    kappa = _parse_float(ns.kappa)
    p01 = _parse_float(ns.p01)
    model = measurement.find_lambda_for_false_alarm(kappa, p01)
    rows = []
    for hyp, seed in ((measurement.H0, ns.seed), (measurement.H1, ns.seed + 1)):
        accepts, trials = measurement.simulate_decisions(model, hyp, ns.trials, seed)
        prob = model.p01 if hyp == measurement.H0 else model.p11
        rows.append([hyp, prob, accepts, trials, accepts / trials, seed])
    meta = {"subcommand": "simulate", "kappa": _fmt(kappa), "p01": _fmt(p01),
            "lam": _fmt(model.lam), "trials": ns.trials, "seed": ns.seed}
    _emit(ns.out, meta, ["hypothesis", "probability", "accepts", "trials",
                         "frequency", "stream_seed"], rows)
    _say(f"simulated {ns.trials} trials per hypothesis at P01 = {model.p01:.6g}")
    return 0


def _cmd_drive(ns) -> int:
    try:
        raw = np.loadtxt(ns.input, delimiter=",", comments="#", ndmin=2)
    except ValueError:
        # tolerate a single header line such as "t,F"
        raw = np.loadtxt(ns.input, delimiter=",", comments="#", ndmin=2, skiprows=1)
    if raw.shape[1] != 2:
        raise ValueError("drive record must be two-column CSV (t, F)")
    sig = drive.DriveSignal(times=raw[:, 0], forces=raw[:, 1],
                            omega=_parse_float(ns.omega), mass=_parse_float(ns.mass))
    est = drive.gamma_integral(sig)
    z = drive.perturbation_amplitude(est.value, sig, ns.convention)
    meta = {"subcommand": "drive", "input": ns.input, "omega": _fmt(sig.omega),
            "mass": _fmt(sig.mass), "tau": _fmt(sig.tau),
            "convention": ns.convention, "rule": est.rule}
    _emit(ns.out, meta,
          ["gamma_re", "gamma_im", "gamma_err_est", "z_re", "z_im", "intensity",
           "convention"],
          [[est.value.real, est.value.imag, est.error_estimate, z.real, z.imag,
            abs(z) ** 2, ns.convention]])
    _say(f"gamma = {est.value:.6g} (err ~ {est.error_estimate:.2g}), "
         f"|z|^2 = {abs(z) ** 2:.6g} [{ns.convention}]")
    return 0


def _cmd_fig(ns) -> int:
    which = ns.which
    meta = {"subcommand": "fig", "which": which}
    if which == 2:
        p01s = _parse_values(ns.p01 or "0..1:41")
        kappas = _parse_values(ns.kappa or "0..1:41")
        rows = [[p, k, decision.detection_probability(p, k)]
                for p in p01s for k in kappas]
        columns = ["p01", "kappa", "p11"]
        meta.update(p01=ns.p01 or "0..1:41", kappa=ns.kappa or "0..1:41")
    elif which == 3:
        rs = _parse_values(ns.r or "0..2:41")
        phis = _parse_values(ns.phi or "-pi..pi:81")
        rows = []
        for r in rs:
            for phi in phis:
                k = overlaps.kappa_squeezed(r, 1.0, phi)
                rows.append([r, phi, math.sqrt(k), k])
        columns = ["r", "phi", "overlap_abs", "kappa"]
        meta.update(r=ns.r or "0..2:41", phi=ns.phi or "-pi..pi:81", intensity=1)
    elif which == 4:
        p01s = _parse_values(ns.p01 or "0,0.01,0.02,0.05")
        nbars = _parse_values(ns.nbar or "0.1..100:40:log")
        columns = ["nbar"] + [f"m_p01_{_fmt(p)}" for p in p01s]
        rows = []
        for nb in nbars:
            r = overlaps.squeeze_r_for_nbar(nb)
            profile = overlaps.kappa_profile(fock.SqueezedVacuum(r), None)
            row = [nb]
            for p in p01s:
                row.append(decision.min_detectable_intensity(profile, p).intensity)
            rows.append(row)
        meta.update(p01=ns.p01 or "0,0.01,0.02,0.05", nbar=ns.nbar or "0.1..100:40:log",
                    perturbation="random-phase squeezed")
    elif which == 5:
        n_values = [int(v) for v in _parse_values(ns.n or "0..30:31")]
        z2s = _parse_values(ns.z2 or "0..8:81")
        rows = [[n, z2, overlaps.kappa_number(n, z2)] for n in n_values for z2 in z2s]
        columns = ["n", "z2", "kappa"]
        meta.update(n=ns.n or "0..30:31", z2=ns.z2 or "0..8:81")
    else:
        raise ValueError(f"unknown figure id {which}")
    _emit(ns.out, meta, columns, rows)
    _say(f"figure {which}: {len(rows)} rows")
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oscdetect",
        description="Optimal binary-decision limits for detecting a displacement "
                    "perturbation on a quantum harmonic oscillator.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("overlap", help="overlap strength for one perturbation")
    _add_state_args(p)
    _add_perturbation_args(p)
    _add_common(p)
    p.add_argument("--oracle", action="store_true",
                   help="add the number-basis oracle value and the difference")
    p.set_defaults(func=_cmd_overlap)

    p = sub.add_parser("roc", help="operating points of the optimal test")
    _add_state_args(p, required=False)  # optional when --kappa is given
    _add_perturbation_args(p)
    _add_common(p)
    p.add_argument("--kappa", default=None, help="overlap strength directly")
    p.add_argument("--lambdas", default="1e-3..1e3:63:log",
                   help="Lagrange weight grid (0 is always included)")
    p.set_defaults(func=_cmd_roc)

    p = sub.add_parser("min-intensity", help="minimum detectable intensity")
    _add_state_args(p)
    _add_perturbation_args(p)
    _add_common(p)
    p.add_argument("--p01", default="0", help="false-alarm value(s)")
    p.add_argument("--scan-max", type=float, default=50.0)
    p.add_argument("--scan-step", type=float, default=1e-3)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--oracle", action="store_true",
                   help="cross-check kappa at the found intensity")
    p.set_defaults(func=_cmd_min_intensity)

    p = sub.add_parser("sweep", help="kappa over an intensity grid")
    _add_state_args(p)
    _add_perturbation_args(p)
    _add_common(p)
    p.add_argument("--intensities", default="0.01..5:100",
                   help="intensity grid, e.g. '0.1..4:50' or '0.5,1,2'")
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("simulate", help="Monte Carlo decision counts")
    _add_common(p)
    p.add_argument("--kappa", required=True)
    p.add_argument("--p01", required=True)
    p.add_argument("--trials", type=int, default=100000)
    p.add_argument("--seed", type=int, default=12345)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("drive", help="force record to displacement amplitude")
    _add_common(p)
    p.add_argument("--input", required=True, help="two-column CSV (t, F)")
    p.add_argument("--omega", required=True)
    p.add_argument("--mass", required=True)
    p.add_argument("--convention", choices=[drive.TAU_SCALED, drive.UNSCALED],
                   default=drive.TAU_SCALED)
    p.set_defaults(func=_cmd_drive)

    p = sub.add_parser("fig", help="emit a standard figure grid")
    _add_common(p)
    p.add_argument("--which", type=int, required=True, choices=[2, 3, 4, 5])
    p.add_argument("--p01", default=None)
    p.add_argument("--kappa", default=None)
    p.add_argument("--r", default=None)
    p.add_argument("--phi", default=None)
    p.add_argument("--nbar", default=None)
    p.add_argument("--n", default=None)
    p.add_argument("--z2", default=None)
    p.set_defaults(func=_cmd_fig)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return ns.func(ns)
    except (ValueError,
            fock.FockTruncationError,
            fock.QuadratureConvergenceError,
            decision.AlwaysDetectableError,
            decision.CrossingNotFoundError,
            measurement.DegenerateStatesError,
            OSError) as exc:
        _say(f"error: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())

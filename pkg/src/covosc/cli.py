"""Command-line entry point: ``covosc <command> [options]``.

Every command writes a table (csv) or a table plus checks (json).  Exit
status is 0 when all checks pass, 1 when any check fails and 2 when the
configuration is invalid.

Defaults may come from a ``key=value`` file given with ``--config``; flags
override it.  Without ``--output`` the report goes to ``$COVOSC_OUTPUT_DIR/
<command>.<format>`` when that variable is set, otherwise to stdout.
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import desitter, fockalg, formfactor, oscillator
from .algebra import DEFAULT_TOLERANCE
from .report import Check, Report, check_within
from .specfun import QuadratureError

OUTPUT_DIR_ENV = "COVOSC_OUTPUT_DIR"
COMMANDS = ("wavefunction", "formfactor", "algebra", "contract", "expansion", "uncertainty")


class ConfigError(ValueError):
    pass


def _axis(extent, step):
    if extent < 0 or step <= 0:
        raise ConfigError("grid extent must be >= 0 and step > 0")
    m = int(round(extent / step))
    return np.arange(-m, m + 1) * step


def run_wavefunction(eta, n=0, grid=4.0, step=0.1, nodes=128, tolerance=1e-8):
    if n < 0:
        raise ConfigError("n must be >= 0")
    axis = _axis(grid, step)
    z, t = np.meshgrid(axis, axis, indexing="ij")
    values = oscillator.psi(n, eta, z, t)
    rows = [(zz, tt, v, v * v) for zz, tt, v in zip(z.ravel(), t.ravel(), values.ravel())]
    checks = [check_within("norm", abs(oscillator.norm_squared(n, eta, nodes) - 1), tolerance)]
    if n == 0:
        closed = oscillator.psi_ground_closed_form(eta, z, t)
        checks.append(check_within("ground_state_closed_form", np.max(np.abs(closed - values)), 1e-12))
    params = {"eta": eta, "n": n, "grid": grid, "step": step, "nodes": nodes}
    return Report("wavefunction", params, ["z", "t", "psi", "density"], rows, checks)


def run_formfactor(q2_max=100.0, samples=50, mass=1.0, nodes=128, tolerance=1e-10):
    if samples < 2 or q2_max <= 0:
        raise ConfigError("need samples >= 2 and q2_max > 0")
    if mass <= 0:
        raise ConfigError("mass must be > 0")
    q2 = np.linspace(0.0, q2_max, samples)
    rows, quad_dev = [], 0.0
    for q in q2:
        g = formfactor.g_closed_form(q, mass)
        quad_dev = max(quad_dev, abs(formfactor.g_by_quadrature(q, mass, nodes) - g))
        rows.append((q, g, formfactor.f_three_quark(q, mass), formfactor.g_nonrelativistic(q / mass**2)))
    g_vals = np.array([r[1] for r in rows])
    f_vals = np.array([r[2] for r in rows])
    checks = [
        check_within("g_quadrature_vs_closed_form", quad_dev, tolerance),
        Check("unit_at_zero", rows[0][1:] == (1.0, 1.0, 1.0)),
        Check("g_decreasing", bool(np.all(np.diff(g_vals) < 0))),
        Check("F_decreasing", bool(np.all(np.diff(f_vals) < 0))),
    ]
    params = {"q2_max": q2_max, "samples": samples, "mass": mass, "nodes": nodes}
    return Report("formfactor", params, ["Q2", "g", "F", "g_nonrel"], rows, checks)


def run_algebra(truncation=8, tolerance=DEFAULT_TOLERANCE, convention="closed"):
    gens = fockalg.build_generators(truncation, convention)
    reports = fockalg.verify_algebra(gens, tolerance)
    rows = [(f"{a},{b}", r.expected, r.max_deviation, r.passed)
            for r in reports for a, b in [r.pair]]
    herm = max(fockalg.hermiticity_deviation(gens).values())
    checks = [Check(f"[{a},{b}]", r.passed, r.max_deviation, tolerance)
              for r in reports for a, b in [r.pair]]
    checks.append(check_within("hermitian_on_safe_subspace", herm, 1e-12))
    checks.append(check_within("ladder_commutators", fockalg.ladder_commutator_deviation(truncation), 1e-13))
    checks.append(check_within("matches_5x5_structure", desitter.representation_equivalence(gens), tolerance))
    params = {"truncation": truncation, "tolerance": tolerance, "convention": convention}
    return Report("algebra", params, ["pair", "expected", "max_deviation", "pass"], rows, checks,
                  {"commutators": [r.to_dict() for r in reports]})


def run_contract(epsilons=(1e-1, 1e-2, 1e-3, 1e-4), slope_tolerance=0.01):
    if any(e <= 0 for e in epsilons) or len(epsilons) < 2:
        raise ConfigError("need at least two positive epsilons")
    gens = desitter.build_matrix_generators()
    trans = desitter.translation_generators()
    rows, checks = [], []
    for label, gen in gens.items():
        vanishing = desitter.vanishing_entries(gen)
        for eps in epsilons:
            m = desitter.contract(gen, eps)
            small = max((abs(m[r, c]) for r, c in vanishing), default=0.0)
            rows.append((label, eps, small))
        limit = desitter.contraction_limit(gen)
        if label in desitter.CONTRACTS_TO:
            target = desitter.CONTRACTS_TO[label]
            slope = desitter.contraction_slope(gen, epsilons)
            checks.append(check_within(f"slope_{label}", abs(slope - 2.0), slope_tolerance))
            checks.append(Check(f"limit_{label}_is_{target}", bool(np.array_equal(limit, trans[target].matrix))))
        else:
            dev = max(np.max(np.abs(desitter.contract(gen, e) - gen.matrix)) for e in epsilons)
            checks.append(check_within(f"fixed_{label}", dev, 1e-12))
    params = {"epsilons": list(epsilons)}
    return Report("contract", params, ["generator", "epsilon", "vanishing_entry"], rows, checks)


def run_expansion(eta, max_n=20, truncation=40, grid=2.0, step=0.5, tolerance=1e-8):
    if max_n < 0:
        raise ConfigError("max_n must be >= 0")
    if max_n > truncation:
        raise ConfigError("max_n must not exceed truncation")
    coeffs = oscillator.expansion_coefficients(eta, max_n)
    state = fockalg.squeeze_vacuum(eta, truncation)
    amps = fockalg.diagonal_amplitudes(state, truncation, max_n)
    rows = [(n, a, b.real, abs(b - a)) for n, (a, b) in enumerate(zip(coeffs, amps))]
    axis = _axis(grid, step)
    pts = [(z, t) for z in axis for t in axis]
    series_dev = oscillator.verify_expansion(eta, max_n, pts)
    bound = oscillator.expansion_tail_bound(eta, max_n)
    checks = [
        check_within("squeeze_vs_series", max(r[3] for r in rows), tolerance),
        check_within("off_diagonal_vanishes", fockalg.off_diagonal_weight(state, truncation), tolerance),
        check_within("series_vs_wavefunction", series_dev, max(bound, 1e-12)),
    ]
    params = {"eta": eta, "max_n": max_n, "truncation": truncation, "grid": grid, "step": step}
    return Report("expansion", params, ["n", "A_n", "squeeze_amplitude", "abs_diff"], rows, checks)


def run_uncertainty(etas=(0.0, 0.5, 1.0, 2.0), nodes=128, tolerance=1e-10):
    rows = []
    for eta in etas:
        r = oscillator.uncertainty_products(eta, nodes)
        rows.append((eta, r.mean_zplus_sq, r.mean_zminus_sq, r.mean_qplus_sq, r.mean_qminus_sq, *r.products))
    prods = np.array([r[5:] for r in rows])
    checks = [
        check_within("zplus_qminus_invariant", np.max(np.abs(prods[:, 0] - 0.25)), tolerance),
        check_within("zminus_qplus_invariant", np.max(np.abs(prods[:, 1] - 0.25)), tolerance),
    ]
    params = {"etas": list(etas), "nodes": nodes}
    cols = ["eta", "zplus_sq", "zminus_sq", "qplus_sq", "qminus_sq", "zplus_qminus", "zminus_qplus"]
    return Report("uncertainty", params, cols, rows, checks)


def _float_list(text):
    try:
        return tuple(float(x) for x in str(text).replace(" ", "").split(",") if x)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def read_config(path):
    """Parse ``key=value`` lines; ``#`` starts a comment, dashes equal underscores."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        values[key.replace("-", "_")] = value
    return values


def build_parser():
    ap = argparse.ArgumentParser(prog="covosc", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="report path (default: stdout or $%s)" % OUTPUT_DIR_ENV)
    common.add_argument("--format", choices=("csv", "json"), help="default: from extension, else json")
    common.add_argument("--config", help="key=value defaults file")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("wavefunction", parents=[common], help="boosted wave function on a grid")
    p.add_argument("--eta", type=float, default=0.0)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--grid", type=float, default=4.0, help="half-width of the square grid")
    p.add_argument("--step", type=float, default=0.1)
    p.add_argument("--nodes", type=int, default=128)
    p.add_argument("--tolerance", type=float, default=1e-8)

    p = sub.add_parser("formfactor", parents=[common], help="g, F and non-relativistic g versus Q^2")
    p.add_argument("--q2-max", type=float, default=100.0)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--mass", type=float, default=1.0)
    p.add_argument("--nodes", type=int, default=128)
    p.add_argument("--tolerance", type=float, default=1e-10)

    p = sub.add_parser("algebra", parents=[common], help="verify the 45 Fock-space commutators")
    p.add_argument("--truncation", type=int, default=8)
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    p.add_argument("--convention", choices=fockalg.CONVENTIONS, default="closed")

    p = sub.add_parser("contract", parents=[common], help="contraction sweep over epsilon")
    p.add_argument("--epsilons", type=_float_list, default=(1e-1, 1e-2, 1e-3, 1e-4))
    p.add_argument("--slope-tolerance", type=float, default=0.01)

    p = sub.add_parser("expansion", parents=[common], help="two-mode series versus squeezed vacuum")
    p.add_argument("--eta", type=float, default=0.5)
    p.add_argument("--max-n", type=int, default=20)
    p.add_argument("--truncation", type=int, default=40)
    p.add_argument("--grid", type=float, default=2.0)
    p.add_argument("--step", type=float, default=0.5)
    p.add_argument("--tolerance", type=float, default=1e-8)

    p = sub.add_parser("uncertainty", parents=[common], help="light-cone uncertainty products")
    p.add_argument("--etas", type=_float_list, default=(0.0, 0.5, 1.0, 2.0))
    p.add_argument("--nodes", type=int, default=128)
    p.add_argument("--tolerance", type=float, default=1e-10)
    return ap


RUNNERS = {
    "wavefunction": (run_wavefunction, ("eta", "n", "grid", "step", "nodes", "tolerance")),
    "formfactor": (run_formfactor, ("q2_max", "samples", "mass", "nodes", "tolerance")),
    "algebra": (run_algebra, ("truncation", "tolerance", "convention")),
    "contract": (run_contract, ("epsilons", "slope_tolerance")),
    "expansion": (run_expansion, ("eta", "max_n", "truncation", "grid", "step", "tolerance")),
    "uncertainty": (run_uncertainty, ("etas", "nodes", "tolerance")),
}


def parse_args(argv):
    parser = build_parser()
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("command", nargs="?")
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if known.config and known.command in COMMANDS:
        try:
            defaults = read_config(known.config)
        except (OSError, ConfigError) as exc:
            parser.error(str(exc))
        subparser = parser._subparsers._group_actions[0].choices[known.command]
        allowed = {a.dest for a in subparser._actions}
        unknown = set(defaults) - allowed
        if unknown:
            parser.error(f"unknown config keys for {known.command}: {sorted(unknown)}")
        subparser.set_defaults(**defaults)
    return parser.parse_args(argv)


def run(args):
    fn, keys = RUNNERS[args.command]
    return fn(**{k: getattr(args, k) for k in keys})


def _destination(args):
    fmt = args.format
    if args.output:
        path = Path(args.output)
        if fmt is None:
            fmt = "csv" if path.suffix.lower() == ".csv" else "json"
        return path, fmt
    fmt = fmt or "json"
    out_dir = os.environ.get(OUTPUT_DIR_ENV)
    if out_dir:
        return Path(out_dir) / f"{args.command}.{fmt}", fmt
    return None, fmt


def main(argv=None):
    args = parse_args(sys.argv[1:] if argv is None else argv)
    path, fmt = _destination(args)
    started = time.perf_counter()
    try:
        report = run(args)
    except ValueError as exc:
        print(f"covosc: invalid configuration: {exc}", file=sys.stderr)
        return 2
    except QuadratureError as exc:
        print(f"covosc: {exc}", file=sys.stderr)
        return 1
    text = report.render(fmt)
    if path is None:
        sys.stdout.write(text)
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    failed = [c.name for c in report.checks if not c.passed]
    elapsed = time.perf_counter() - started
    summary = f"{args.command}: {len(report.checks) - len(failed)}/{len(report.checks)} checks passed ({elapsed:.2f}s)"
    print(summary, file=sys.stderr)
    for name in failed:
        print(f"  FAIL {name}", file=sys.stderr)
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())

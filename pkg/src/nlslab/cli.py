"""Command-line surface: constants, classification, tables, sweeps, simulation.

Exit codes: 0 success/classified, 1 error, 2 unknown verdict,
3 inconclusive simulation.  CSV output carries 10 significant digits so
identical inputs give bit-identical files; printed tables use the 4-decimal
convention of the reference tables.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import criteria
from .criteria import VerdictKind
from .errors import NotApplicableError, OutOfRegimeError
from .functionals import FieldGrid, InitialData, build_context, initial_functionals
from .params import critical_exponent, make_params
from .solver import SolverConfig, detect_blowup, evolve, verify_verdict

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNKNOWN = 2
EXIT_INCONCLUSIVE = 3


def _fmt(x) -> str:
    return f"{x:.10g}"


def _emit(text: str, out: str | None) -> None:
    if out and out != "-":
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _thread_count() -> int:
    raw = os.environ.get("NLSLAB_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    return max(1, n) if n else min(8, os.cpu_count() or 1)


def load_field_csv(path: str) -> tuple[np.ndarray, np.ndarray]:
    """Read the grid CSV format: header r,re,im then one row per radius."""
    data = np.genfromtxt(path, delimiter=",", names=True)
    for col in ("r", "re", "im"):
        if col not in (data.dtype.names or ()):
            raise ValueError(f"grid CSV is missing column {col!r}")
    return np.atleast_1d(data["r"]), \
        np.atleast_1d(data["re"]) + 1j * np.atleast_1d(data["im"])


def save_field_csv(path: str, radii, values) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("r,re,im\n")
        for r, v in zip(radii, np.asarray(values, dtype=complex)):
            fh.write(f"{_fmt(r)},{_fmt(v.real)},{_fmt(v.imag)}\n")


def parse_initial_data(spec, n_dim: int) -> InitialData:
    """Build InitialData from the JSON descriptor (dict, JSON text, or path)."""
    if isinstance(spec, str):
        if spec.lstrip().startswith("{"):
            spec = json.loads(spec)
        else:
            with open(spec, encoding="utf-8") as fh:
                spec = json.load(fh)
    if "input" in spec and "type" not in spec:
        spec = spec["input"]  # round-trip: accept a previous classify report
    kind = spec.get("type")
    gamma = float(spec.get("phase_gamma", 0.0))
    if kind == "gaussian":
        return InitialData.gaussian(float(spec["alpha"]), float(spec["beta"]),
                                    phase_gamma=gamma)
    if kind == "ground_state":
        return InitialData.ground_state(float(spec.get("scale", 1.0)),
                                        phase_gamma=gamma)
    if kind == "grid":
        radii, values = load_field_csv(spec["file"])
        return InitialData.grid(FieldGrid(radii=radii, values=values, N=n_dim),
                                phase_gamma=gamma)
    raise ValueError(f"unknown initial-data type {kind!r}")


def describe_initial_data(init: InitialData) -> dict:
    if init.kind == "gaussian":
        return {"type": "gaussian", "alpha": init.alpha, "beta": init.beta,
                "phase_gamma": init.phase_gamma}
    if init.kind == "ground_state":
        return {"type": "ground_state", "scale": init.scale,
                "phase_gamma": init.phase_gamma}
    return {"type": "grid", "phase_gamma": init.phase_gamma}


# ---------------------------------------------------------------------------
# commands


def cmd_constants(args) -> int:
    params = make_params(args.p, args.N)
    ctx = build_context(args.p, args.N)
    payload = {
        "p": params.p, "n_dim": params.N, "s_c": params.s_c, "k": params.k,
        "a_const": params.A, "kappa": params.kappa,
        "well_posed": params.well_posed,
        "c_pn": ctx.sharp.C_pN, "d_pn": ctx.sharp.D_pN,
    }
    if not math.isnan(ctx.sharp.c_Q):
        payload["c_q"] = ctx.sharp.c_Q
        payload["c_gn"] = ctx.sharp.c_gn
    if params.energy_critical:
        payload["energy_w"] = ctx.sharp.E_W
        payload["grad_sq_w"] = ctx.sharp.gradW_sq
    elif params.energy_subcritical:
        payload["ground_state"] = {
            "center_value": ctx.gs.center_value, "mass": ctx.gs.mass,
            "lp1": ctx.gs.lp1, "grad_sq": ctx.gs.grad_sq,
            "energy": ctx.gs.energy, "variance": ctx.gs.variance,
        }
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_classify(args) -> int:
    ctx = build_context(args.p, args.N)
    init = parse_initial_data(args.data, args.N)
    report = criteria.classify_data(init, ctx)
    payload = report.to_dict()
    payload["input"] = describe_initial_data(init)
    payload["p"] = args.p
    payload["n_dim"] = args.N
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_UNKNOWN if report.verdict.kind == VerdictKind.UNKNOWN else EXIT_OK


def _table_rows(which: str, n_lo: int, n_hi: int):
    rows = []
    for n in range(n_lo, n_hi + 1):
        if which == "kappa_energy":
            ks, kb = criteria.gaussian_energy_threshold_roots(n)
            rows.append((n, ks, kb))
        else:
            params = make_params(critical_exponent(n), n)
            t1, t2 = criteria.gaussian_blowup_thresholds(params)
            rows.append((n, t1, t2))
    return rows


def cmd_tables(args) -> int:
    header = {"kappa_energy": "N,kappa_s,kappa_b",
              "gaussian_thresholds": "N,kappa_T1,kappa_T2"}[args.which]
    lines = [header]
    for n, a, b in _table_rows(args.which, args.n_min, args.n_max):
        lines.append(f"{n},{a:.4f},{b:.4f}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _sweep_row(alpha: float, params, ctx, cc_pn):
    scale = alpha ** (1.0 / (params.p - 1.0))

    def scaled(fn, *fargs):
        try:
            return fn(*fargs)
        except (NotApplicableError, criteria.NonConvergenceError):
            return None

    e0 = criteria.gaussian_zero_energy_threshold(params) * scale
    t1t2 = criteria.gaussian_blowup_thresholds(params, cc_pn)
    me_roots = None
    if params.s_c <= 1.0:
        me_roots = scaled(criteria.gaussian_me_roots, params, ctx)
    row = [alpha, e0]
    row.extend((me_roots[0] * scale, me_roots[1] * scale) if me_roots
               else (None, None))
    row.extend((t1t2[0] * scale, t1t2[1] * scale))
    return row


def cmd_sweep(args) -> int:
    params = make_params(args.p, args.N)
    ctx = build_context(args.p, args.N)
    alphas = np.linspace(args.alpha_min, args.alpha_max, args.alpha_count)
    cc_pn = ctx.sharp.C_pN
    with ThreadPoolExecutor(max_workers=_thread_count()) as pool:
        rows = list(pool.map(
            lambda a: _sweep_row(float(a), params, ctx, cc_pn), alphas))
    lines = ["alpha,beta_E0,beta_kappa_s,beta_kappa_b,beta_T1,beta_T2"]
    for row in rows:
        lines.append(",".join("NotApplicable" if v is None else _fmt(v)
                              for v in row))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _solver_config(args, ctx) -> SolverConfig:
    radius = args.radius
    if radius is None:
        radius = 20.0 if ctx.params.N == 1 else 15.0
    return SolverConfig(outer_radius=radius, points=args.points, dt=args.dt,
                        t_max=args.t_max, blowup_factor=args.blowup_factor,
                        absorbing_layer_width=args.absorbing_width,
                        nonlinear_coupling=args.coupling,
                        record_every=args.record_every)


def cmd_simulate(args) -> int:
    ctx = build_context(args.p, args.N)
    init = parse_initial_data(args.data, args.N)
    cfg = _solver_config(args, ctx)
    traj = evolve(init, cfg, ctx)
    outcome = detect_blowup(traj, cfg)
    traj.to_csv(args.out or "trajectory.csv")
    summary = {"outcome": outcome.kind, "t_star": outcome.t_star,
               "steps": int(traj.times.size)}
    sys.stdout.write(json.dumps(summary, indent=2) + "\n")
    return EXIT_INCONCLUSIVE if outcome.kind == "inconclusive" else EXIT_OK


def cmd_verify(args) -> int:
    ctx = build_context(args.p, args.N)
    init = parse_initial_data(args.data, args.N)
    report = criteria.classify_data(init, ctx)
    if report.verdict.kind == VerdictKind.UNKNOWN:
        sys.stdout.write(json.dumps({"verdict": "unknown",
                                     "consistent": None}, indent=2) + "\n")
        return EXIT_UNKNOWN
    cfg = _solver_config(args, ctx)
    if report.verdict.kind in (VerdictKind.SCATTERS_FORWARD,
                               VerdictKind.SCATTERS_BOTH_DIRECTIONS,
                               VerdictKind.BOUNDED_LP1_FORWARD) \
            and cfg.absorbing_layer_width == 0.0:
        cfg = SolverConfig(outer_radius=cfg.outer_radius, points=cfg.points,
                           dt=cfg.dt, t_max=cfg.t_max, scheme=cfg.scheme,
                           blowup_factor=cfg.blowup_factor,
                           absorbing_layer_width=0.1 * cfg.outer_radius,
                           nonlinear_coupling=cfg.nonlinear_coupling,
                           record_every=cfg.record_every)
    result = verify_verdict(init, report, cfg, ctx)
    if args.out:
        traj = evolve(init, cfg, ctx)
        traj.to_csv(args.out)
    payload = {"verdict": report.verdict.kind.value,
               "outcome": result["detail"]["outcome"],
               "consistent": result["consistent"],
               "detail": result["detail"]}
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    if result["detail"]["outcome"] == "inconclusive":
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nlslab",
        description="Blow-up and scattering thresholds of the focusing NLS")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_eq(sp):
        sp.add_argument("--p", type=float, required=True, help="nonlinearity exponent")
        sp.add_argument("--N", type=int, required=True, help="space dimension")
        sp.add_argument("--out", default=None, help="output file (stdout if omitted)")

    sp = sub.add_parser("constants", help="equation constants and ground-state data")
    add_eq(sp)
    sp.set_defaults(func=cmd_constants)

    sp = sub.add_parser("classify", help="classify one initial datum")
    add_eq(sp)
    sp.add_argument("--data", required=True,
                    help="JSON descriptor (inline, or a path to a JSON file)")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("tables", help="reproduce the threshold tables")
    sp.add_argument("--which", choices=("kappa_energy", "gaussian_thresholds"),
                    required=True)
    sp.add_argument("--n-min", type=int, default=3)
    sp.add_argument("--n-max", type=int, default=8)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_tables)

    sp = sub.add_parser("sweep", help="threshold curves over an alpha grid")
    add_eq(sp)
    sp.add_argument("--alpha-min", type=float, default=0.5)
    sp.add_argument("--alpha-max", type=float, default=2.0)
    sp.add_argument("--alpha-count", type=int, default=16)
    sp.set_defaults(func=cmd_sweep)

    def add_solver(sp):
        add_eq(sp)
        sp.add_argument("--data", required=True)
        sp.add_argument("--t-max", type=float, default=5.0)
        sp.add_argument("--dt", type=float, default=1e-3)
        sp.add_argument("--points", type=int, default=4096)
        sp.add_argument("--radius", type=float, default=None)
        sp.add_argument("--blowup-factor", type=float, default=100.0)
        sp.add_argument("--absorbing-width", type=float, default=0.0)
        sp.add_argument("--coupling", type=float, default=1.0)
        sp.add_argument("--record-every", type=int, default=1)

    sp = sub.add_parser("simulate", help="evolve a datum and dump the trajectory")
    add_solver(sp)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("verify", help="classify, evolve, and compare")
    add_solver(sp)
    sp.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OutOfRegimeError, NotApplicableError, ValueError, OSError,
            json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

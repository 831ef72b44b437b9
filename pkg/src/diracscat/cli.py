"""Command-line front end.

Every subcommand evaluates a grid of ``(E, h)`` points and emits one or more
rows per point.  Rows echo the full parameter set, floats are written with 17
significant digits and angles appear both raw and reduced to ``[0, 2 pi)``.

Exit codes: 0 on success, 2 on validation errors, 3 on numerical failures.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, ValidationError
from .jost import (Propagation, ScatteringMatrix, SolverSettings, scattering_matrix,
                   total_reflection_solve)
from .model import PhysicalParams, PiecewiseConstant, PotentialProfile, load_profile
from .oracle import StepPotential, staircase_approximation, step_reflection, step_scattering
from .spectral import EnergyRegion, classify_energy, essential_spectrum, find_turning_points
from .wkb import (predict_klein, predict_total_reflection, predict_total_transmission,
                  predict_zero_mass, reduce_angle)

__all__ = ["main", "build_parser", "COLUMNS", "PARAM_COLUMNS", "SweepRequest"]

TASKS = ("classify", "smatrix", "wkb", "oracle", "reflection")
DEFAULT_STAIRCASE = (64, 128, 256)

PARAM_COLUMNS = ["task", "profile", "m", "c", "h", "E", "method", "tail_tol", "dps"]

COLUMNS = {
    "classify": ["region", "turning_points", "n_turning_points", "sigma_lower", "sigma_upper"],
    "smatrix": ["region", "kind",
                "s11_re", "s11_im", "s12_re", "s12_im", "s21_re", "s21_im", "s22_re", "s22_im",
                "R", "T", "unitarity_defect", "det_defect",
                "alpha_out_re", "alpha_out_im", "alpha_out_abs",
                "beta_d_re", "beta_d_im", "beta_d_abs", "oracle_max_abs_dS"],
    "wkb": ["region", "quantity", "modulus_num", "modulus_wkb", "modulus_ratio",
            "phase_num", "phase_num_mod2pi", "phase_wkb", "phase_wkb_mod2pi",
            "phase_defect", "error_order", "decay_rate"],
    "oracle": ["region", "oracle_kind", "n_steps", "oracle_max_abs_dS", "oracle_norm_dS"],
}
COLUMNS["reflection"] = COLUMNS["smatrix"]


@dataclass(frozen=True)
class SweepRequest:
    profile: PotentialProfile
    params: PhysicalParams
    h_values: tuple[float, ...]
    energies: tuple[float, ...]
    tasks: tuple[str, ...]
    settings: SolverSettings
    staircase: tuple[int, ...] = DEFAULT_STAIRCASE
    with_oracle: bool = False

    def __post_init__(self):
        if not self.energies:
            raise ValidationError("at least one energy is required")
        if not self.h_values or any(not h > 0 for h in self.h_values):
            raise ValidationError("all h values must be positive")
        bad = set(self.tasks) - set(TASKS)
        if bad:
            raise ValidationError(f"unknown tasks {sorted(bad)}")

    def points(self):
        return [(E, h) for E in sorted(self.energies) for h in sorted(self.h_values, reverse=True)]


# -- per-point evaluation -----------------------------------------------------

def _angles(prefix, value):
    return {prefix: value, f"{prefix}_mod2pi": reduce_angle(value)}


def _complex(prefix, z):
    return {f"{prefix}_re": z.real, f"{prefix}_im": z.imag}


def _classify_rows(req, params, E):
    region = classify_energy(params, req.profile, E)
    lo, hi = essential_spectrum(params, req.profile)
    tps = () if region is EnergyRegion.BOUNDARY else find_turning_points(params, req.profile, E)
    label = ";".join(f"{tp.branch_tag.split('-')[0]}={tp.location:.6f}" for tp in tps) or "none"
    return [{"region": str(region), "turning_points": label, "n_turning_points": len(tps),
             "sigma_lower": lo, "sigma_upper": hi}]


def _reflection_row(req, params, E, region):
    rc = total_reflection_solve(params, req.profile, E, req.settings)
    row = {"region": str(region), "kind": "reflection",
           **_complex("alpha_out", rc.alpha_out), "alpha_out_abs": abs(rc.alpha_out),
           **_complex("beta_d", rc.beta_d), "beta_d_abs": abs(rc.beta_d)}
    if req.with_oracle and isinstance(req.profile, PiecewiseConstant):
        ex = step_reflection(params, StepPotential.from_profile(req.profile), E)
        row["oracle_max_abs_dS"] = max(abs(ex.alpha_out - rc.alpha_out),
                                       abs(ex.beta_d - rc.beta_d))
    return row


def _smatrix_rows(req, params, E):
    region = classify_energy(params, req.profile, E)
    if region.reflecting:
        return [_reflection_row(req, params, E, region)]
    if not region.scattering:
        raise ValidationError(f"E={E} lies in {region}; no scattering solutions")
    prop = Propagation(params, req.profile, E, req.settings)
    S = ScatteringMatrix.from_transfer(prop.transfer)
    row = {"region": str(region), "kind": "scattering"}
    for name in ("s11", "s12", "s21", "s22"):
        row.update(_complex(name, getattr(S, name)))
    row.update(R=S.R, T=S.T, unitarity_defect=S.unitarity_defect(),
               det_defect=prop.transfer.det_defect())
    if req.with_oracle and isinstance(req.profile, PiecewiseConstant):
        exact = step_scattering(params, StepPotential.from_profile(req.profile), E)
        row["oracle_max_abs_dS"] = float(np.abs(exact.matrix - S.matrix).max())
    return [row]


def _wkb_row(region, pred, value):
    num_mod = abs(value)
    phase = float(np.angle(value))
    row = {"region": str(region), "quantity": pred.quantity, "modulus_num": num_mod,
           "modulus_wkb": pred.leading_modulus, "error_order": pred.error_order,
           **_angles("phase_num", phase), **_angles("phase_wkb", pred.phase_unreduced)}
    if pred.leading_modulus > 0:
        row["modulus_ratio"] = num_mod / pred.leading_modulus
    if math.isfinite(pred.phase_unreduced):
        row["phase_defect"] = pred.phase_defect(value)
    return row


def _wkb_rows(req, params, E):
    region = classify_energy(params, req.profile, E)
    if region.reflecting:
        rc = total_reflection_solve(params, req.profile, E, req.settings)
        alpha, beta = predict_total_reflection(params, req.profile, E)
        return [_wkb_row(region, alpha, rc.alpha_out), _wkb_row(region, beta, rc.beta_d)]
    if not region.scattering:
        raise ValidationError(f"E={E} lies in {region}; nothing to compare")
    S = scattering_matrix(params, req.profile, E, req.settings)
    if params.m == 0:
        preds = predict_zero_mass(req.profile, E, params.c, params.h)
    elif region is EnergyRegion.III:
        preds = predict_klein(params, req.profile, E)
    else:
        preds = predict_total_transmission(params, req.profile, E)
    return [_wkb_row(region, p, getattr(S, p.quantity)) for p in preds]


def _oracle_rows(req, params, E):
    region = classify_energy(params, req.profile, E)
    if not region.scattering:
        raise ValidationError(f"oracle comparison needs region I, III or V; E={E} is {region}")
    S = scattering_matrix(params, req.profile, E, req.settings).matrix
    if isinstance(req.profile, PiecewiseConstant):
        exact = step_scattering(params, StepPotential.from_profile(req.profile), E).matrix
        d = exact - S
        return [{"region": str(region), "oracle_kind": "exact",
                 "oracle_max_abs_dS": float(np.abs(d).max()),
                 "oracle_norm_dS": float(np.linalg.norm(d, 2))}]
    rows = []
    for n in req.staircase:
        stair = staircase_approximation(req.profile, n, req.settings.tail_tol)
        d = step_scattering(params, stair, E).matrix - S
        rows.append({"region": str(region), "oracle_kind": "staircase", "n_steps": n,
                     "oracle_max_abs_dS": float(np.abs(d).max()),
                     "oracle_norm_dS": float(np.linalg.norm(d, 2))})
    return rows


_RUNNERS = {
    "classify": _classify_rows,
    "smatrix": _smatrix_rows,
    "wkb": _wkb_rows,
    "oracle": _oracle_rows,
    "reflection": lambda req, params, E: (
        [_reflection_row(req, params, E, classify_energy(params, req.profile, E))]
        if classify_energy(params, req.profile, E).reflecting else []),
}


def _evaluate(job):
    req, E, h = job
    params = req.params.with_h(h)
    echo = {"profile": req.profile.to_json(), "m": params.m, "c": params.c, "h": h, "E": E,
            "method": req.settings.method, "tail_tol": req.settings.tail_tol,
            "dps": req.settings.dps}
    out = []
    for task in req.tasks:
        for row in _RUNNERS[task](req, params, E):
            out.append({"task": task, **echo, **row})
    return out


def _fit_decay_rates(rows):
    """Least-squares ``C`` in ``ln|s21| = a - C/h`` per energy, attached to s21 rows."""
    groups = {}
    for row in rows:
        if row.get("task") == "wkb" and row.get("quantity") == "s21" and row["region"] in ("I", "V"):
            groups.setdefault(row["E"], []).append(row)
    for group in groups.values():
        pts = [(1.0 / r["h"], math.log(r["modulus_num"])) for r in group if r["modulus_num"] > 0]
        if len({x for x, _ in pts}) < 2:
            continue
        slope = np.polyfit([x for x, _ in pts], [y for _, y in pts], 1)[0]
        for r in group:
            r["decay_rate"] = float(-slope)


def run(req: SweepRequest, workers: int = 1) -> list[dict]:
    jobs = [(req, E, h) for E, h in req.points()]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_evaluate, jobs))
    else:
        chunks = [_evaluate(j) for j in jobs]
    rows = [row for chunk in chunks for row in chunk]
    _fit_decay_rates(rows)
    return rows


# -- output ---------------------------------------------------------------------

def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def _json_value(v):
    if isinstance(v, (np.floating, float)):
        return float(v) if math.isfinite(v) else None
    if isinstance(v, np.integer):
        return int(v)
    return v


def columns_for(tasks) -> list[str]:
    cols = list(PARAM_COLUMNS)
    for task in tasks:
        cols += [c for c in COLUMNS[task] if c not in cols]
    return cols


def emit(rows, columns, fmt, stream):
    if fmt == "json":
        doc = [{c: _json_value(r.get(c)) for c in columns} for r in rows]
        json.dump(doc, stream, indent=1)
        stream.write("\n")
        return
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r.get(c)) for c in columns])


# -- argument handling ----------------------------------------------------------

def _common(p):
    p.add_argument("--profile", required=True, help="inline JSON, JSON file or two-column CSV")
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--h", type=float, action="append", help="repeatable")
    p.add_argument("--h-range", type=float, nargs=3, metavar=("START", "STOP", "N"),
                   help="N geometrically spaced values from START to STOP")
    p.add_argument("--energy", type=float, action="append", required=True, help="repeatable")
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--method", choices=("magnus", "taylor"), default="magnus")
    p.add_argument("--dps", type=int, help="working digits for --method taylor")
    p.add_argument("--tail-tol", type=float, default=SolverSettings.tail_tol)
    p.add_argument("--rtol", type=float, default=SolverSettings.rtol)
    p.add_argument("--workers", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="diracscat",
                                     description="Semiclassical Dirac scattering on step-like potentials")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (("classify", "energy regions, turning points, essential spectrum"),
                        ("smatrix", "scattering matrix (reflection coefficients in regions II/IV)"),
                        ("wkb", "numerical values against the leading semiclassical terms"),
                        ("sweep", "several tasks over an (E, h) grid"),
                        ("oracle-check", "ODE solver against exact step matching")):
        p = sub.add_parser(name, help=help_)
        _common(p)
        if name == "smatrix":
            p.add_argument("--oracle", action="store_true",
                           help="add max|dS| against the exact step solution")
        if name in ("oracle-check", "sweep"):
            p.add_argument("--staircase", type=int, action="append",
                           help="staircase sizes for smooth profiles (repeatable)")
        if name == "sweep":
            p.add_argument("--tasks", default="smatrix",
                           help=f"comma-separated subset of {','.join(TASKS)}")
    return parser


def _h_values(args):
    hs = list(args.h or [])
    if args.h_range:
        start, stop, n = args.h_range
        if n < 1 or n != int(n) or not (start > 0 and stop > 0):
            raise ValidationError("--h-range needs positive bounds and a positive integer count")
        hs += np.geomspace(start, stop, int(n)).tolist()
    return tuple(hs) if hs else (PhysicalParams.h,)


def _request(args) -> tuple[SweepRequest, int]:
    if args.command == "sweep":
        tasks = tuple(t.strip() for t in args.tasks.split(",") if t.strip())
    else:
        tasks = ({"classify": ("classify",), "smatrix": ("smatrix",), "wkb": ("wkb",),
                  "oracle-check": ("oracle",)})[args.command]
    if args.workers < 1:
        raise ValidationError("--workers must be at least 1")
    try:
        settings = SolverSettings(rtol=args.rtol, tail_tol=args.tail_tol,
                                  method=args.method, dps=args.dps)
    except ValueError as exc:
        raise ValidationError(str(exc)) from None
    if not (args.tail_tol > 0 and args.rtol > 0):
        raise ValidationError("tolerances must be positive")
    profile = load_profile(args.profile)
    params = PhysicalParams(args.m, args.c)
    stairs = tuple(getattr(args, "staircase", None) or DEFAULT_STAIRCASE)
    if any(n < 1 for n in stairs):
        raise ValidationError("staircase sizes must be positive")
    req = SweepRequest(profile, params, _h_values(args), tuple(args.energy), tasks,
                       settings, stairs, bool(getattr(args, "oracle", False)))
    return req, args.workers


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        req, workers = _request(args)
        for h in req.h_values:
            PhysicalParams(req.params.m, req.params.c, h)
        rows = run(req, workers)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    columns = columns_for(req.tasks)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            emit(rows, columns, args.format, fh)
    else:
        emit(rows, columns, args.format, sys.stdout)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

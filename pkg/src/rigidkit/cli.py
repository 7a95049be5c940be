"""Command-line entry point: JSON reports over the library operations.

Every report embeds a run manifest (subcommand, resolved parameters, sha256
digests of input files, tool version, timestamp); bodies are deterministic
for identical inputs, so reports are reproducible modulo the timestamp.
Exit codes: 0 success, 2 validation error, 3 solver failure.
"""

from __future__ import annotations

import argparse
import datetime
import hashlib
import json
import math
import sys

import numpy as np

from . import __version__
from .errors import SolverError, ValidationError
from .fractal import PointCloud, box_dimension_estimate, rigidity_threshold_check
from .geometry import (
    build_domains,
    build_nesting_forest,
    config_from_json_dict,
    mu,
    sample_boundary,
)
from .poly import MultiPoly
from .remez import inverse_remez, remez_bound_topological, remez_estimate_lp
from .rigidity import FORMULAS, rigidity_1d_bound, rigidity_report
from .curves import composition_report, crossing_count, fit_curve
from .prooftrace import bezout_check, default_perturbation, domain_pigeonhole_report
from .svg import render_svg

__all__ = ["main", "dispatch"]


def _read_bytes(path: str) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read input file {path}: {exc}") from exc


def _load_json(path: str) -> dict:
    raw = _read_bytes(path)
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON in {path}: {exc}") from exc


def _load_points_csv(path: str) -> np.ndarray:
    rows = []
    width = None
    for ln, line in enumerate(_read_bytes(path).decode("utf-8").splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            row = [float(tok) for tok in line.split(",")]
        except ValueError as exc:
            raise ValidationError(f"malformed point in {path} line {ln}: {exc}") from exc
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ValidationError(f"inconsistent column count in {path} line {ln}")
        rows.append(row)
    if not rows:
        raise ValidationError(f"no points in {path}")
    return np.array(rows, dtype=float)


def _load_config(path: str):
    return config_from_json_dict(_load_json(path))


def _load_poly(path: str) -> MultiPoly:
    return MultiPoly.from_json_dict(_load_json(path))


def _candidate_grid(n: int, k: int) -> np.ndarray:
    """k-per-axis lattice over [-1,1]^n clipped to the Euclidean ball."""
    if k < 2:
        raise ValidationError(f"candidate grid must be >= 2 points per axis, got {k}")
    axis = np.linspace(-1.0, 1.0, k)
    if n == 1:
        return axis.reshape(-1, 1)
    grids = np.meshgrid(*([axis] * n), indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1)
    keep = np.sqrt(np.sum(pts**2, axis=1)) <= 1.0 + 1e-12
    return pts[keep]


def _manifest(args: argparse.Namespace, inputs: list[str]) -> dict:
    params = {
        k: v
        for k, v in sorted(vars(args).items())
        if k not in ("func",) and (v is None or isinstance(v, (str, int, float, bool)))
    }
    digests = {}
    for path in inputs:
        digests[path] = "sha256:" + hashlib.sha256(_read_bytes(path)).hexdigest()
    return {
        "subcommand": args.subcommand,
        "parameters": params,
        "inputs": digests,
        "version": __version__,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }


def _emit(report: dict, out: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- subcommands ---------------------------------------------------------


def _cmd_decompose(args) -> dict:
    config = _load_config(args.config)
    forest = build_nesting_forest(config)
    domains = build_domains(forest)
    report = {
        "manifest": _manifest(args, [args.config]),
        "forest": {
            str(node.oval_id): {
                "depth": node.depth,
                "parent": node.parent,
                "children": sorted(node.children),
            }
            for node in forest.nodes.values()
        },
        "domains": [
            {
                "outer": dom.outer.id,
                "holes": sorted(h.id for h in dom.holes),
                "area": dom.area,
                "formula": "shoelace(outer) - sum of shoelace(holes)",
            }
            for dom in domains
        ],
        "mu": mu(domains),
        "mu_formula": "min over domains of area(W_j)",
    }
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(render_svg(config, domains))
        report["svg"] = args.svg
    return report


def _zsamples_for(args) -> tuple[np.ndarray, list[str]]:
    if args.z.endswith(".json"):
        config = _load_config(args.z)
        chunks = [sample_boundary(o, args.samples_per_oval) for o in config.ovals]
        return np.concatenate(chunks, axis=0), [args.z]
    return _load_points_csv(args.z), [args.z]


def _cmd_remez_lp(args) -> dict:
    zsamples, inputs = _zsamples_for(args)
    n = zsamples.shape[1]
    candidates = _candidate_grid(n, args.grid)
    est = remez_estimate_lp(zsamples, args.degree, candidates, tol=args.tol)
    return {
        "manifest": _manifest(args, inputs),
        "degree": args.degree,
        "n": n,
        "infinite": est.is_infinite,
        "value": None if est.is_infinite else est.value,
        "inverse": inverse_remez(est),
        "witness_poly": None if est.witness_poly is None else est.witness_poly.to_json_dict(),
        "witness_point": None if est.witness_point is None else [float(v) for v in est.witness_point],
        "diagnostics": est.diagnostics,
        "formula": "min K with sup_B |P| <= K sup_Z |P| (LP on sampled constraints)",
    }


def _cmd_bounds(args) -> dict:
    config = _load_config(args.config)
    mu_val = mu(build_domains(build_nesting_forest(config)))
    count = config.N
    required = (args.degree - 1) ** args.n + 1
    remez_val = remez_bound_topological(mu_val, args.degree, args.n, count, enforce_count=False)
    rep = rigidity_report(args.degree, mu_value=mu_val, n=args.n, oval_count=count)
    return {
        "manifest": _manifest(args, [args.config]),
        "degree": args.degree,
        "n": args.n,
        "mu": mu_val,
        "oval_count": count,
        "remez_topological": {
            "value": remez_val,
            "formula": "(4n/mu)^d",
            "hypothesis_ok": count >= required,
            "ovals_required": required,
        },
        "rigidity": rep.to_json_dict(),
    }


def _cmd_rigidity(args) -> dict:
    config = _load_config(args.config)
    mu_val = mu(build_domains(build_nesting_forest(config)))
    count = config.N
    chunks = [sample_boundary(o, args.samples_per_oval) for o in config.ovals]
    zsamples = np.concatenate(chunks, axis=0)
    candidates = _candidate_grid(2, args.grid)
    est = remez_estimate_lp(zsamples, args.degree, candidates, tol=args.tol)
    inv = inverse_remez(est)
    rep = rigidity_report(args.degree, mu_value=mu_val, n=2, oval_count=count, inv_remez=inv)
    return {
        "manifest": _manifest(args, [args.config]),
        "degree": args.degree,
        "mu": mu_val,
        "oval_count": count,
        "remez_estimate": {
            "infinite": est.is_infinite,
            "value": None if est.is_infinite else est.value,
            "inverse": inv,
            "diagnostics": est.diagnostics,
        },
        "rigidity": rep.to_json_dict(),
    }


def _parse_floats(text: str, what: str) -> list[float]:
    try:
        vals = [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise ValidationError(f"malformed {what}: {exc}") from exc
    if not vals:
        raise ValidationError(f"empty {what}")
    return vals


def _cmd_rigidity_1d(args) -> dict:
    zeros = sorted(_parse_floats(args.zeros, "zeros list"))
    bound = rigidity_1d_bound(zeros, args.z0, args.fz0, args.degree)
    floor = math.factorial(args.degree + 1) / 2 ** (args.degree + 1)
    return {
        "manifest": _manifest(args, []),
        "degree": args.degree,
        "zeros": zeros,
        "z0": args.z0,
        "fz0": args.fz0,
        "bound": bound,
        "formula": FORMULAS["one_dimensional"],
        "universal_floor": floor,
        "universal_floor_formula": "(d+1)!/2^(d+1)",
    }


def _cmd_curve_check(args) -> dict:
    f = _load_poly(args.f)
    points = _load_points_csv(args.points)
    curve = fit_curve(points, args.s)
    comp = composition_report(f, curve, args.degree, args.tgrid)
    inputs = [args.f, args.points]
    crossings = None
    if args.config:
        config = _load_config(args.config)
        crossings = crossing_count(curve, config, args.tol)
        inputs.append(args.config)
    return {
        "manifest": _manifest(args, inputs),
        "curve": {
            "s": curve.s,
            "components": [c.to_json_dict() for c in curve.components],
            "max_image_norm": curve.max_image_norm(),
        },
        "composition": comp.to_json_dict(),
        "composition_formula": (
            "sum_{k=ceil((d+1)/s)}^{d+1} |f^(k)(omega(t))| >= c * |g^(d+1)(t)|"
        ),
        "crossings": crossings,
    }


def _cmd_boxdim(args) -> dict:
    points = _load_points_csv(args.points)
    cloud = PointCloud(points)
    scales = _parse_floats(args.scales, "scales list")
    fit = box_dimension_estimate(cloud, scales)
    threshold = rigidity_threshold_check(fit.slope, cloud.dim, args.degree)
    return {
        "manifest": _manifest(args, [args.points]),
        "fit": fit.to_json_dict(),
        "slope_formula": "least-squares slope of log N(eps) vs log(1/eps)",
        "threshold": threshold,
        "threshold_formula": "beta > n - 1/(d+1)",
    }


def _cmd_verify_proof(args) -> dict:
    p = _load_poly(args.poly)
    config = _load_config(args.config)
    direction = default_perturbation(p)
    eps_abs = args.eps * max(p.coefficient_norm(), 1.0)
    xi = (direction[0], direction[1], eps_abs)
    report = domain_pigeonhole_report(
        p,
        config,
        newton_grid=args.grid,
        perturbation=xi,
    )
    body = report.to_json_dict()
    if args.degree is not None and args.degree != report.degree:
        body["bezout_at_degree"] = bezout_check(report.critical_points, args.degree).to_json_dict()
    return {
        "manifest": _manifest(args, [args.poly, args.config]),
        "bezout_formula": "at most (d-1)^2 isolated critical points",
        **body,
    }


# --- parser --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rigidkit",
        description="Nested-oval zero sets: decomposition, Remez-type bounds, rigidity estimates.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    d = sub.add_parser("decompose", help="validate a configuration and emit forest/domains/mu")
    d.add_argument("--config", required=True, help="configuration JSON")
    d.add_argument("--svg", default=None, help="also write an SVG rendering here")
    d.add_argument("--out", default=None)
    d.set_defaults(func=_cmd_decompose)

    r = sub.add_parser("remez-lp", help="LP lower estimate of the Remez constant of sampled Z")
    r.add_argument("--degree", type=int, required=True)
    r.add_argument("--z", required=True, help="points CSV (x or x,y rows) or configuration JSON")
    r.add_argument("--grid", type=int, default=64, help="candidate grid points per axis")
    r.add_argument("--samples-per-oval", type=int, default=256)
    r.add_argument("--tol", type=float, default=1e-9)
    r.add_argument("--out", default=None)
    r.set_defaults(func=_cmd_remez_lp)

    b = sub.add_parser("bounds", help="closed-form Remez and rigidity bounds from mu")
    b.add_argument("--config", required=True)
    b.add_argument("--degree", type=int, required=True)
    b.add_argument("--n", type=int, default=2, help="ambient dimension for the formulas")
    b.add_argument("--out", default=None)
    b.set_defaults(func=_cmd_bounds)

    g = sub.add_parser("rigidity", help="full pipeline: geometry, LP estimate, rigidity report")
    g.add_argument("--config", required=True)
    g.add_argument("--degree", type=int, required=True)
    g.add_argument("--grid", type=int, default=64)
    g.add_argument("--samples-per-oval", type=int, default=256)
    g.add_argument("--tol", type=float, default=1e-9)
    g.add_argument("--out", default=None)
    g.set_defaults(func=_cmd_rigidity)

    r1 = sub.add_parser("rigidity-1d", help="divided-difference lower bound on a line")
    r1.add_argument("--zeros", required=True, help="comma-separated zeros, d+1 of them")
    r1.add_argument("--z0", type=float, required=True, help="witness point")
    r1.add_argument("--fz0", type=float, default=1.0, help="|f(z0)| after normalization")
    r1.add_argument("--degree", type=int, required=True)
    r1.add_argument("--out", default=None)
    r1.set_defaults(func=_cmd_rigidity_1d)

    c = sub.add_parser("curve-check", help="fit a test curve and probe the composition inequality")
    c.add_argument("--f", required=True, help="polynomial JSON")
    c.add_argument("--points", required=True, help="points CSV to interpolate")
    c.add_argument("--s", type=int, required=True, help="curve degree")
    c.add_argument("--degree", type=int, required=True, help="derivative order d")
    c.add_argument("--tgrid", type=int, default=512)
    c.add_argument("--config", default=None, help="optional configuration for crossing count")
    c.add_argument("--tol", type=float, default=1e-9, help="crossing isolation tolerance")
    c.add_argument("--out", default=None)
    c.set_defaults(func=_cmd_curve_check)

    x = sub.add_parser("boxdim", help="box-counting dimension estimate and threshold verdict")
    x.add_argument("--points", required=True, help="points CSV")
    x.add_argument("--scales", required=True, help="comma-separated decreasing scales")
    x.add_argument("--degree", type=int, required=True)
    x.add_argument("--out", default=None)
    x.set_defaults(func=_cmd_boxdim)

    v = sub.add_parser("verify-proof", help="critical-point count and domain pigeonhole evidence")
    v.add_argument("--poly", required=True, help="polynomial JSON")
    v.add_argument("--config", required=True)
    v.add_argument("--degree", type=int, default=None, help="also check the count at this degree")
    v.add_argument("--grid", type=int, default=64, help="Newton seed grid per axis")
    v.add_argument("--eps", type=float, default=1e-6, help="perturbation size relative to coefficient norm")
    v.add_argument("--out", default=None)
    v.set_defaults(func=_cmd_verify_proof)

    return parser


def dispatch(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args)
        _emit(report, args.out)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SolverError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return 3
    return 0


def main(argv=None) -> int:
    return dispatch(argv)


if __name__ == "__main__":
    sys.exit(main())

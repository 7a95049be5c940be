"""Critical-point counting and the domain pigeonhole argument.

A real polynomial of degree d in the plane has at most (d-1)^2 isolated
critical points (the gradient components have degrees <= d-1 and their
common zeros are counted by the product). A nested-oval decomposition with
more domains than that bound therefore contains a domain without interior
critical points, which pins the sup of |p| on that domain to its boundary.
This module locates critical points numerically, checks the count, and
assembles the per-domain evidence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, ValidationError
from .geometry import (
    OvalConfiguration,
    build_domains,
    build_nesting_forest,
    domain_contains_point,
    points_in_polygon,
    sample_boundary,
)
from .poly import MultiPoly, eval_poly, partial_derivative

__all__ = [
    "CriticalPointSet",
    "BezoutVerdict",
    "DomainPigeonholeReport",
    "find_critical_points",
    "perturb_linear",
    "default_perturbation",
    "bezout_check",
    "domain_pigeonhole_report",
]

_GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0
_DET_FLOOR = 1e-14
_MAX_ITER = 80


@dataclass
class CriticalPointSet:
    """Clustered Newton solutions of grad p = 0.

    Representatives are pairwise farther apart than the merge radius; each
    carries the number of converged seeds merged into it. Gradient norms at
    representatives satisfy the acceptance filter used by
    ``find_critical_points``.
    """

    representatives: np.ndarray
    gradient_norms: np.ndarray
    cluster_sizes: np.ndarray
    merge_radius: float
    diagnostics: dict = field(default_factory=dict)

    @property
    def n_clusters(self) -> int:
        return int(self.representatives.shape[0])

    def to_json_dict(self) -> dict:
        return {
            "n_clusters": self.n_clusters,
            "merge_radius": self.merge_radius,
            "representatives": [[float(a), float(b)] for a, b in self.representatives],
            "gradient_norms": [float(g) for g in self.gradient_norms],
            "cluster_sizes": [int(s) for s in self.cluster_sizes],
            "diagnostics": self.diagnostics,
        }


def _normalize_box(box):
    arr = np.asarray(box, dtype=float).reshape(-1)
    if arr.size == 2:
        arr = np.array([arr[0], arr[1], arr[0], arr[1]])
    if arr.size != 4:
        raise ValidationError(f"box must be (xmin, xmax, ymin, ymax), got {box!r}")
    if not np.all(np.isfinite(arr)) or arr[0] >= arr[1] or arr[2] >= arr[3]:
        raise ValidationError(f"degenerate search box {box!r}")
    return arr


def find_critical_points(
    p: MultiPoly,
    box,
    grid: int,
    merge_radius: float = 1e-6,
    max_iter: int = _MAX_ITER,
) -> CriticalPointSet:
    """Multi-start Newton on the gradient system over a seed lattice.

    Seeds form a grid x grid lattice over the box. Newton steps use the
    exact Hessian; seeds are dropped when the Hessian determinant falls
    under 1e-14 times its scale or the iterate leaves the inflated box.
    Survivors are kept only if their gradient norm is at most
    1e-8 * (1 + coefficient norm), then greedily clustered: a point joins
    the first representative within the merge radius, in lexicographic
    point order, so representatives stay pairwise separated.

    A polynomial with identically zero gradient (a constant) has no isolated
    critical points and yields the empty set.
    """
    if p.nvars != 2:
        raise DimensionMismatch(2, p.nvars)
    if grid < 2:
        raise ValidationError(f"seed grid must be >= 2, got {grid}")
    xmin, xmax, ymin, ymax = _normalize_box(box)

    gx = partial_derivative(p, 0)
    gy = partial_derivative(p, 1)
    coefnorm = p.coefficient_norm()
    grad_tol = 1e-8 * (1.0 + coefnorm)
    empty = CriticalPointSet(
        representatives=np.zeros((0, 2)),
        gradient_norms=np.zeros(0),
        cluster_sizes=np.zeros(0, dtype=np.int64),
        merge_radius=merge_radius,
        diagnostics={"seeds": grid * grid, "converged": 0, "note": ""},
    )
    if gx.is_zero() and gy.is_zero():
        empty.diagnostics["note"] = "gradient vanishes identically"
        return empty

    hxx = partial_derivative(gx, 0)
    hxy = partial_derivative(gx, 1)
    hyy = partial_derivative(gy, 1)

    xs = np.linspace(xmin, xmax, grid)
    ys = np.linspace(ymin, ymax, grid)
    gxs, gys = np.meshgrid(xs, ys, indexing="ij")
    pts = np.stack([gxs.ravel(), gys.ravel()], axis=1)
    alive = np.ones(len(pts), dtype=bool)

    # leave room around the box so roots just outside the seed hull survive
    pad_x = 0.5 * (xmax - xmin) + 1.0
    pad_y = 0.5 * (ymax - ymin) + 1.0
    lo = np.array([xmin - pad_x, ymin - pad_y])
    hi = np.array([xmax + pad_x, ymax + pad_y])

    for _ in range(max_iter):
        cx, cy = pts[:, 0], pts[:, 1]
        gv1 = eval_poly(gx, [cx, cy])
        gv2 = eval_poly(gy, [cx, cy])
        a = eval_poly(hxx, [cx, cy])
        b = eval_poly(hxy, [cx, cy])
        c = eval_poly(hyy, [cx, cy])
        det = a * c - b * b
        scale = np.abs(a) + np.abs(b) + np.abs(c)
        ok = alive & (np.abs(det) > _DET_FLOOR * np.maximum(1.0, scale * scale))
        step_x = np.where(ok, (c * gv1 - b * gv2) / np.where(ok, det, 1.0), 0.0)
        step_y = np.where(ok, (a * gv2 - b * gv1) / np.where(ok, det, 1.0), 0.0)
        pts[:, 0] -= step_x
        pts[:, 1] -= step_y
        alive = ok & np.all(np.isfinite(pts), axis=1)
        alive &= np.all(pts >= lo, axis=1) & np.all(pts <= hi, axis=1)
        if not np.any(alive):
            break

    if not np.any(alive):
        empty.diagnostics["note"] = "no seed converged"
        return empty

    cand = pts[alive]
    gn = np.hypot(eval_poly(gx, [cand[:, 0], cand[:, 1]]), eval_poly(gy, [cand[:, 0], cand[:, 1]]))
    keep = gn <= grad_tol
    cand, gn = cand[keep], gn[keep]
    if len(cand) == 0:
        empty.diagnostics["note"] = "no seed reached the gradient tolerance"
        return empty

    order = np.lexsort((cand[:, 1], cand[:, 0]))
    cand, gn = cand[order], gn[order]
    reps: list[np.ndarray] = []
    rep_gn: list[float] = []
    sizes: list[int] = []
    for point, g in zip(cand, gn):
        placed = False
        for i, r in enumerate(reps):
            if np.hypot(point[0] - r[0], point[1] - r[1]) <= merge_radius:
                sizes[i] += 1
                placed = True
                break
        if not placed:
            reps.append(point)
            rep_gn.append(float(g))
            sizes.append(1)

    return CriticalPointSet(
        representatives=np.array(reps),
        gradient_norms=np.array(rep_gn),
        cluster_sizes=np.array(sizes, dtype=np.int64),
        merge_radius=merge_radius,
        diagnostics={
            "seeds": grid * grid,
            "converged": int(len(cand)),
            "gradient_tolerance": grad_tol,
        },
    )


def default_perturbation(p: MultiPoly) -> tuple[float, float, float]:
    """Deterministic generic direction (1, golden ratio) with tiny size."""
    norm = math.hypot(1.0, _GOLDEN)
    eps = 1e-6 * p.coefficient_norm()
    if eps == 0.0:
        eps = 1e-6
    return (1.0 / norm, _GOLDEN / norm, eps)


def _unpack_xi(xi) -> tuple[float, float, float]:
    # accepts (a, b, eps) or ((a, b), eps)
    if len(xi) == 2:
        (a, b), eps = xi
    elif len(xi) == 3:
        a, b, eps = xi
    else:
        raise ValidationError(f"perturbation must be (a, b, eps), got {xi!r}")
    return float(a), float(b), float(eps)


def perturb_linear(p: MultiPoly, xi=None) -> MultiPoly:
    """p + eps * (a*x + b*y) for xi = (a, b, eps); a generic tilt.

    Adding a tiny linear form splits degenerate critical points, so the
    perturbed polynomial is Morse for all but finitely many directions.
    The direction is normalized to a unit vector; the default xi comes from
    ``default_perturbation``.
    """
    if p.nvars != 2:
        raise DimensionMismatch(2, p.nvars)
    if xi is None:
        xi = default_perturbation(p)
    a, b, eps = _unpack_xi(xi)
    if eps <= 0.0:
        raise ValidationError(f"perturbation size must be positive, got {eps}")
    norm = math.hypot(a, b)
    if norm == 0.0:
        raise ValidationError("perturbation direction must be nonzero")
    a, b = a / norm, b / norm
    tilt = MultiPoly(2, {(1, 0): eps * a, (0, 1): eps * b})
    return p + tilt


@dataclass
class BezoutVerdict:
    """Cluster count against the (d-1)^2 critical-point bound."""

    degree: int
    bound: int
    n_clusters: int
    verdict: str
    note: str | None = None

    def to_json_dict(self) -> dict:
        return {
            "degree": self.degree,
            "bound": self.bound,
            "n_clusters": self.n_clusters,
            "verdict": self.verdict,
            "note": self.note,
        }


def bezout_check(cps: CriticalPointSet, d: int) -> BezoutVerdict:
    """Check the cluster count against (d-1)^2.

    An exceeded bound is impossible for a degree-d polynomial with isolated
    critical points, so a violation is labeled a numerical artifact (split
    clusters, or a positive-dimensional critical set sampled at many
    points), never a counterexample.
    """
    if d < 1:
        raise ValidationError(f"degree must be >= 1, got {d}")
    bound = (d - 1) ** 2
    if cps.n_clusters <= bound:
        return BezoutVerdict(degree=d, bound=bound, n_clusters=cps.n_clusters, verdict="consistent")
    return BezoutVerdict(
        degree=d,
        bound=bound,
        n_clusters=cps.n_clusters,
        verdict="violation",
        note=(
            "cluster count exceeds the degree bound; this is a numerical "
            "artifact (split clusters or a positive-dimensional critical "
            "set sampled repeatedly), not a counterexample"
        ),
    )


@dataclass
class DomainPigeonholeReport:
    """Per-domain sup evidence plus critical-point accounting."""

    degree: int
    perturbation: tuple[float, float, float]
    bezout: BezoutVerdict
    critical_points: CriticalPointSet
    assignments: list[int | None]
    domains: list[dict]
    global_boundary_max: float
    pigeonhole_forced: bool
    n_without_critical_point: int
    confinement_violations: list[int]

    def to_json_dict(self) -> dict:
        return {
            "degree": self.degree,
            "perturbation": {
                "direction": [self.perturbation[0], self.perturbation[1]],
                "eps": self.perturbation[2],
            },
            "bezout": self.bezout.to_json_dict(),
            "critical_points": self.critical_points.to_json_dict(),
            "assignments": self.assignments,
            "domains": self.domains,
            "global_boundary_max": self.global_boundary_max,
            "pigeonhole_forced": self.pigeonhole_forced,
            "n_without_critical_point": self.n_without_critical_point,
            "confinement_violations": self.confinement_violations,
        }


def domain_pigeonhole_report(
    p: MultiPoly,
    config: OvalConfiguration,
    domains=None,
    samples: int = 512,
    interior_grid: int = 33,
    newton_grid: int = 48,
    merge_radius: float = 1e-6,
    perturbation=None,
) -> DomainPigeonholeReport:
    """Assemble the pigeonhole evidence for p over a nested-oval config.

    The polynomial is first tilted by a tiny generic linear form so its
    critical points are isolated; everything below refers to the perturbed
    polynomial. Per domain the report compares the max of |p| on ``samples``
    boundary points per ring against an interior lattice max and flags
    domains whose interior max wins, which forces an interior critical point
    for a smooth function. Critical points are then located over the
    configuration bounding box and assigned to the unique domain containing
    them (or none). A critical value exceeding every boundary sample while
    its point sits outside all domains is recorded as a confinement
    violation: the decomposition fails to trap that extremum.

    Boundary samples at count k nest inside those at 2k, and the interior
    lattice at g points per axis nests inside 2g-1, so maxima (and flags
    already raised) are monotone under sample doubling.
    """
    if p.nvars != 2:
        raise DimensionMismatch(2, p.nvars)
    xi = perturbation if perturbation is not None else default_perturbation(p)
    pt_poly = perturb_linear(p, xi)
    d = pt_poly.degree

    if domains is None:
        domains = build_domains(build_nesting_forest(config))
    all_verts = np.concatenate([o.vertices for o in config.ovals], axis=0)
    xmin, ymin = all_verts.min(axis=0)
    xmax, ymax = all_verts.max(axis=0)
    span = max(xmax - xmin, ymax - ymin, 1e-3)
    box = (xmin - 0.05 * span, xmax + 0.05 * span, ymin - 0.05 * span, ymax + 0.05 * span)

    cps = find_critical_points(pt_poly, box, newton_grid, merge_radius=merge_radius)
    bez = bezout_check(cps, d)

    assignments: list[int | None] = []
    for rep in cps.representatives:
        owner: int | None = None
        for dom in domains:
            if domain_contains_point(dom, rep):
                owner = dom.outer.id
                break
        assignments.append(owner)

    global_bmax = 0.0
    dom_entries: list[dict] = []
    for dom in domains:
        rings = [dom.outer] + list(dom.holes)
        bmax = 0.0
        for ring in rings:
            bpts = sample_boundary(ring, samples)
            vals = np.abs(eval_poly(pt_poly, [bpts[:, 0], bpts[:, 1]]))
            bmax = max(bmax, float(np.max(vals)))
        global_bmax = max(global_bmax, bmax)

        vx = dom.outer.vertices
        bx0, by0 = vx.min(axis=0)
        bx1, by1 = vx.max(axis=0)
        cell_x = np.linspace(bx0, bx1, interior_grid)
        cell_y = np.linspace(by0, by1, interior_grid)
        mx, my = np.meshgrid(cell_x, cell_y, indexing="ij")
        lattice = np.stack([mx.ravel(), my.ravel()], axis=1)
        inside = points_in_polygon(dom.outer.vertices, lattice)
        for hole in dom.holes:
            inside &= ~points_in_polygon(hole.vertices, lattice)
        if np.any(inside):
            ivals = np.abs(eval_poly(pt_poly, [lattice[inside, 0], lattice[inside, 1]]))
            interior_max: float | None = float(np.max(ivals))
            flagged = interior_max > bmax
        else:
            interior_max = None
            flagged = False
        crit_idx = [i for i, a in enumerate(assignments) if a == dom.outer.id]
        dom_entries.append(
            {
                "oval_id": dom.outer.id,
                "area": dom.area,
                "boundary_max": bmax,
                "interior_max": interior_max,
                "flagged": flagged,
                "has_critical_point": bool(crit_idx),
                "critical_indices": crit_idx,
            }
        )

    n_without = sum(1 for e in dom_entries if not e["has_critical_point"])
    violations = [
        i
        for i, rep in enumerate(cps.representatives)
        if assignments[i] is None
        and abs(float(eval_poly(pt_poly, [rep[0], rep[1]]))) > global_bmax
    ]
    return DomainPigeonholeReport(
        degree=d,
        perturbation=_unpack_xi(xi),
        bezout=bez,
        critical_points=cps,
        assignments=assignments,
        domains=dom_entries,
        global_boundary_max=global_bmax,
        pigeonhole_forced=len(domains) > cps.n_clusters,
        n_without_critical_point=n_without,
        confinement_violations=violations,
    )

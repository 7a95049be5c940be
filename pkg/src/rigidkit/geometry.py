"""Plane oval configurations, their nesting forest, and domain decomposition.

Ovals are simple closed polygons with counterclockwise vertex order, pairwise
disjoint boundaries, living in the closed unit disc. Every validated
configuration decomposes the plane into one compact domain per oval: the
region bounded by that oval outside and by its immediate children inside.
The minimal domain area mu drives all topological bounds downstream.

Polygons stand in for smooth ovals; the discretization error of areas is the
caller's modeling responsibility.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BoundariesIntersect,
    EmptyConfiguration,
    NonPositiveArea,
    OutsideUnitBall,
    SelfIntersecting,
    TooFewVertices,
    ValidationError,
)

__all__ = [
    "Oval",
    "OvalConfiguration",
    "ForestNode",
    "NestingForest",
    "Domain",
    "validate_configuration",
    "contains",
    "build_nesting_forest",
    "build_domains",
    "domain_area",
    "mu",
    "point_in_polygon",
    "points_in_polygon",
    "shoelace_area",
    "sample_boundary",
    "regular_polygon",
    "config_from_json_dict",
]

_BALL_TOL = 1e-9
_RAY_NUDGE = 1e-12


@dataclass(frozen=True)
class Oval:
    """Simple closed polygon, counterclockwise, implicitly closed."""

    id: int
    vertices: np.ndarray  # (k, 2), k >= 3

    def __post_init__(self):
        verts = np.asarray(self.vertices, dtype=float)
        if verts.ndim != 2 or verts.shape[1] != 2:
            raise ValidationError(f"oval {self.id}: vertices must be an (k, 2) array")
        object.__setattr__(self, "vertices", verts)

    @property
    def signed_area(self) -> float:
        return shoelace_area(self.vertices)


@dataclass(frozen=True)
class OvalConfiguration:
    """Validated oval collection: disjoint boundaries, each pair nested or apart."""

    ovals: tuple[Oval, ...]

    @property
    def N(self) -> int:
        return len(self.ovals)

    def oval_by_id(self, oval_id: int) -> Oval:
        for o in self.ovals:
            if o.id == oval_id:
                return o
        raise KeyError(oval_id)


@dataclass
class ForestNode:
    oval_id: int
    depth: int
    parent: int | None = None
    children: list[int] = field(default_factory=list)


@dataclass
class NestingForest:
    """Containment hierarchy; depth 1 nodes are contained in no other oval."""

    config: OvalConfiguration
    nodes: dict[int, ForestNode]

    def roots(self) -> list[int]:
        return [nid for nid, node in self.nodes.items() if node.parent is None]


@dataclass(frozen=True)
class Domain:
    """Region bounded by ``outer`` from outside and by ``holes`` from inside."""

    outer: Oval
    holes: tuple[Oval, ...]

    @property
    def area(self) -> float:
        return domain_area(self)


def shoelace_area(vertices: np.ndarray) -> float:
    """Signed area of a closed polygon; positive for counterclockwise order."""
    v = np.asarray(vertices, dtype=float)
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def _edges(vertices: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Edge start/end arrays for the implicitly closed polygon."""
    return vertices, np.roll(vertices, -1, axis=0)


def _cross(o, a, b):
    return (a[..., 0] - o[..., 0]) * (b[..., 1] - o[..., 1]) - (
        a[..., 1] - o[..., 1]
    ) * (b[..., 0] - o[..., 0])


def _segments_intersect_matrix(p0, p1, q0, q1) -> np.ndarray:
    """Boolean (m, k) matrix: segment i of P touches or crosses segment j of Q.

    Inclusive predicate: shared endpoints, collinear overlap, and proper
    crossings all count. Strict boundary disjointness rejects them all, so no
    distinction is needed.
    """
    P0 = p0[:, None, :]
    P1 = p1[:, None, :]
    Q0 = q0[None, :, :]
    Q1 = q1[None, :, :]
    d1 = _cross(Q0, Q1, P0)
    d2 = _cross(Q0, Q1, P1)
    d3 = _cross(P0, P1, Q0)
    d4 = _cross(P0, P1, Q1)
    proper = ((d1 > 0) != (d2 > 0)) & ((d3 > 0) != (d4 > 0)) & (d1 != 0) & (d2 != 0) & (d3 != 0) & (d4 != 0)

    def on_segment(a0, a1, b, d):
        # collinear point b on segment [a0, a1]
        return (
            (d == 0)
            & (b[..., 0] >= np.minimum(a0[..., 0], a1[..., 0]))
            & (b[..., 0] <= np.maximum(a0[..., 0], a1[..., 0]))
            & (b[..., 1] >= np.minimum(a0[..., 1], a1[..., 1]))
            & (b[..., 1] <= np.maximum(a0[..., 1], a1[..., 1]))
        )

    touch = (
        on_segment(Q0, Q1, P0, d1)
        | on_segment(Q0, Q1, P1, d2)
        | on_segment(P0, P1, Q0, d3)
        | on_segment(P0, P1, Q1, d4)
    )
    return proper | touch


def _validate_single(oval: Oval, enforce_ball: bool) -> None:
    verts = oval.vertices
    k = len(verts)
    if k < 3:
        raise TooFewVertices(oval.id, k)
    if enforce_ball and np.any(np.hypot(verts[:, 0], verts[:, 1]) > 1.0 + _BALL_TOL):
        raise OutsideUnitBall(oval.id)
    p0, p1 = _edges(verts)
    if np.any(np.all(p0 == p1, axis=1)):
        raise SelfIntersecting(oval.id)  # zero-length edge
    hits = _segments_intersect_matrix(p0, p1, p0, p1)
    idx = np.arange(k)
    # mask self and neighbours (they legitimately share endpoints)
    neighbour = (
        (idx[:, None] == idx[None, :])
        | ((idx[:, None] + 1) % k == idx[None, :])
        | ((idx[None, :] + 1) % k == idx[:, None])
    )
    if np.any(hits & ~neighbour):
        raise SelfIntersecting(oval.id)
    # fold-back spikes: consecutive edges collinear and overlapping
    prev = np.roll(verts, 1, axis=0)
    nxt = np.roll(verts, -1, axis=0)
    collinear = _cross(verts, prev, nxt) == 0
    folded = np.einsum("ij,ij->i", prev - verts, nxt - verts) > 0
    if np.any(collinear & folded):
        raise SelfIntersecting(oval.id)
    area = shoelace_area(verts)
    if area <= 0:
        raise NonPositiveArea(oval.id, area)


def validate_configuration(ovals, enforce_ball: bool = True) -> OvalConfiguration:
    """Check every configuration invariant and return the validated bundle.

    All edge pairs across every oval pair are tested for intersection after a
    bounding-box prefilter; quadratic cost is fine at the scale this package
    targets. Set ``enforce_ball=False`` to admit coordinates outside the unit
    disc (areas and nesting are scale-free; the normalized bounds are not).
    """
    ovals = tuple(ovals)
    seen_ids = set()
    for o in ovals:
        if o.id in seen_ids:
            raise ValidationError(f"duplicate oval id {o.id}")
        seen_ids.add(o.id)
        _validate_single(o, enforce_ball)
    boxes = [
        (o.vertices[:, 0].min(), o.vertices[:, 0].max(), o.vertices[:, 1].min(), o.vertices[:, 1].max())
        for o in ovals
    ]
    for i in range(len(ovals)):
        for j in range(i + 1, len(ovals)):
            bi, bj = boxes[i], boxes[j]
            if bi[1] < bj[0] or bj[1] < bi[0] or bi[3] < bj[2] or bj[3] < bi[2]:
                continue
            p0, p1 = _edges(ovals[i].vertices)
            q0, q1 = _edges(ovals[j].vertices)
            if np.any(_segments_intersect_matrix(p0, p1, q0, q1)):
                raise BoundariesIntersect(ovals[i].id, ovals[j].id)
    return OvalConfiguration(ovals)


def point_in_polygon(vertices: np.ndarray, point) -> bool:
    """Even-odd ray crossing with a deterministic horizontal ray.

    Rays passing within 1e-12 of a vertex level are nudged upward by 1e-12
    until clear, keeping the test deterministic without randomization. Points
    on the boundary are not meaningful here; validated configurations keep
    query points strictly off every boundary.
    """
    return bool(points_in_polygon(vertices, np.asarray([point], dtype=float))[0])


def points_in_polygon(vertices: np.ndarray, points: np.ndarray) -> np.ndarray:
    verts = np.asarray(vertices, dtype=float)
    pts = np.asarray(points, dtype=float)
    vy = verts[:, 1]
    ry = pts[:, 1].copy()
    # nudge rays off vertex levels; loop is deterministic and terminates
    for _ in range(64):
        clash = np.any(np.abs(vy[None, :] - ry[:, None]) < _RAY_NUDGE, axis=1)
        if not np.any(clash):
            break
        ry[clash] += _RAY_NUDGE
    x1, y1 = verts[:, 0][None, :], verts[:, 1][None, :]
    x2 = np.roll(verts[:, 0], -1)[None, :]
    y2 = np.roll(verts[:, 1], -1)[None, :]
    RY = ry[:, None]
    straddle = (y1 > RY) != (y2 > RY)
    with np.errstate(divide="ignore", invalid="ignore"):
        xi = x1 + (RY - y1) * (x2 - x1) / (y2 - y1)
    crossing = straddle & (xi > pts[:, 0][:, None])
    return np.sum(crossing, axis=1) % 2 == 1


def contains(a: Oval, b: Oval) -> bool:
    """True iff oval ``b`` lies strictly inside oval ``a``.

    Under the validated-configuration precondition the boundaries are
    disjoint, so by the Jordan separation property either every vertex of
    ``b`` is inside ``a`` or none is; testing the single representative
    vertex ``b.vertices[0]`` therefore decides containment.
    """
    return point_in_polygon(a.vertices, b.vertices[0])


def build_nesting_forest(config: OvalConfiguration) -> NestingForest:
    """Containment hierarchy: depth = 1 + number of strictly containing ovals.

    The parent of an oval is its containing oval of maximal depth, i.e. the
    smallest one. Stateless O(N^2) counting; no recursive peeling.
    """
    nodes: dict[int, ForestNode] = {}
    containers: dict[int, list[int]] = {}
    for o in config.ovals:
        containing = [p.id for p in config.ovals if p.id != o.id and contains(p, o)]
        containers[o.id] = containing
        nodes[o.id] = ForestNode(oval_id=o.id, depth=1 + len(containing))
    for o in config.ovals:
        cands = containers[o.id]
        if cands:
            parent = max(cands, key=lambda pid: nodes[pid].depth)
            nodes[o.id].parent = parent
            nodes[parent].children.append(o.id)
    return NestingForest(config=config, nodes=nodes)


def build_domains(forest: NestingForest) -> list[Domain]:
    """One domain per oval: that oval outside, its direct children as holes.

    The returned list length always equals the oval count; this identity is
    what makes the minimal-area quantity well defined for any nesting.
    """
    domains = []
    for o in forest.config.ovals:
        node = forest.nodes[o.id]
        holes = tuple(forest.config.oval_by_id(c) for c in node.children)
        dom = Domain(outer=o, holes=holes)
        domain_area(dom)  # raises NonPositiveArea on degenerate input
        domains.append(dom)
    return domains


def domain_area(d: Domain) -> float:
    """Shoelace area of the outer oval minus the areas of its holes."""
    area = shoelace_area(d.outer.vertices) - sum(shoelace_area(h.vertices) for h in d.holes)
    if area <= 0:
        raise NonPositiveArea(d.outer.id, area)
    return area


def mu(domains) -> float:
    """Minimal domain area of the decomposition."""
    domains = list(domains)
    if not domains:
        raise EmptyConfiguration()
    return min(domain_area(d) for d in domains)


def domain_contains_point(d: Domain, point) -> bool:
    """Strictly inside the outer oval and outside every hole."""
    if not point_in_polygon(d.outer.vertices, point):
        return False
    return not any(point_in_polygon(h.vertices, point) for h in d.holes)


def sample_boundary(oval: Oval, count: int) -> np.ndarray:
    """``count`` points equally spaced by arc length along the boundary."""
    if count < 1:
        raise ValidationError(f"boundary sample count must be >= 1, got {count}")
    v = oval.vertices
    p0, p1 = _edges(v)
    seg = np.hypot(*(p1 - p0).T)
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    total = cum[-1]
    targets = np.arange(count) * total / count
    idx = np.clip(np.searchsorted(cum, targets, side="right") - 1, 0, len(seg) - 1)
    frac = (targets - cum[idx]) / seg[idx]
    return p0[idx] + frac[:, None] * (p1[idx] - p0[idx])


def regular_polygon(center, radius: float, k: int, oval_id: int = 0) -> Oval:
    """Regular k-gon approximating the circle of the given center and radius."""
    theta = 2.0 * np.pi * np.arange(k) / k
    cx, cy = center
    verts = np.column_stack([cx + radius * np.cos(theta), cy + radius * np.sin(theta)])
    return Oval(id=oval_id, vertices=verts)


def config_from_json_dict(data: dict, enforce_ball: bool = True) -> OvalConfiguration:
    """Parse {"ovals": [{"id": ..., "vertices": [[x, y], ...]}]} and validate."""
    try:
        raw = data["ovals"]
    except (KeyError, TypeError):
        raise ValidationError("malformed configuration JSON: missing field 'ovals'")
    ovals = []
    for entry in raw:
        try:
            ovals.append(Oval(id=int(entry["id"]), vertices=np.asarray(entry["vertices"], dtype=float)))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed oval entry: {exc}") from exc
    return validate_configuration(ovals, enforce_ball=enforce_ball)

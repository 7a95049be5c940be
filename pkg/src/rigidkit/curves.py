"""Polynomial test curves: interpolation, composition probes, crossing counts.

A test curve is a low-degree polynomial parametric curve omega(t), t in
[-1, 1], threaded through prescribed points of a zero set. Composing a
function with the curve transfers one-dimensional derivative information to
dimension n: the sum of the derivative norms of f of orders
ceil((d+1)/s) .. d+1 along the curve dominates a constant multiple of
|g^(d+1)| for g = f(omega). The constant is not known in closed form here;
``composition_report`` records the empirical ratio instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, ImageLeavesBall, TooManyPoints, ValidationError
from .geometry import OvalConfiguration, _edges
from .poly import MultiPoly, compose, derivatives_of_order, eval_poly, partial_derivative

__all__ = [
    "ParamCurve",
    "CompositionReport",
    "fit_curve",
    "composition_report",
    "crossing_count",
]

_IMAGE_GRID = 1000
_RHS_FLOOR = 1e-12


@dataclass(frozen=True)
class ParamCurve:
    """Degree-s polynomial curve with one univariate polynomial per coordinate.

    The nominal domain is t in [-1, 1]. ``fit_curve`` guarantees the image
    stays inside the unit ball; directly constructed curves may leave it,
    which downstream composition probes tolerate (the inequality hypotheses
    then do not apply).
    """

    components: tuple[MultiPoly, ...]
    s: int

    def __post_init__(self):
        if self.s < 1:
            raise ValidationError(f"curve degree must be >= 1, got {self.s}")
        for c in self.components:
            if c.nvars != 1:
                raise DimensionMismatch(1, c.nvars)
            if c.degree > self.s:
                raise ValidationError(f"component degree {c.degree} exceeds s = {self.s}")

    @property
    def dim(self) -> int:
        return len(self.components)

    def eval(self, t):
        """Curve point(s) at parameter t; vectorizes over numpy arrays."""
        coords = [eval_poly(c, [t]) for c in self.components]
        if isinstance(t, np.ndarray):
            return np.stack(coords, axis=-1)
        return np.array(coords, dtype=float)

    def max_image_norm(self, grid: int = _IMAGE_GRID) -> float:
        taus = np.linspace(-1.0, 1.0, grid)
        pts = self.eval(taus)
        return float(np.max(np.sqrt(np.sum(pts**2, axis=-1))))


def fit_curve(points, s: int) -> ParamCurve:
    """Interpolating curve of degree <= s through k <= s+1 points.

    Parameters are assigned at the Chebyshev nodes cos((2j+1)pi/(2k)) in the
    given point order; this standard choice tames interpolation blow-up so
    the fitted curve has small high-order derivatives. The fitted image must
    stay inside the unit ball.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    k = len(pts)
    if k == 0:
        raise ValidationError("need at least one point")
    if k > s + 1:
        raise TooManyPoints(k, s)
    tj = np.cos((2 * np.arange(k) + 1) * np.pi / (2 * k))
    vand = np.vander(tj, k, increasing=True)
    coeff = np.linalg.solve(vand, pts)  # (k, n): per-coordinate coefficients
    components = tuple(
        MultiPoly(1, {(i,): float(coeff[i, axis]) for i in range(k)})
        for axis in range(pts.shape[1])
    )
    curve = ParamCurve(components=components, s=s)
    max_norm = curve.max_image_norm()
    if max_norm > 1.0 + 1e-9:
        raise ImageLeavesBall(max_norm)
    return curve


@dataclass
class CompositionReport:
    """Pointwise composition-inequality data on a parameter grid.

    ``c_hat`` is an empirical lower estimate of the unknown positive constant
    relating the two sides; it is None when the right side degenerates
    identically (which happens whenever deg(f) * s <= d by degree count).
    """

    degree: int
    s: int
    k_lo: int
    k_hi: int
    taus: np.ndarray
    lhs: np.ndarray
    rhs: np.ndarray
    c_hat: float | None
    all_degenerate: bool
    diagnostics: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "degree": self.degree,
            "s": self.s,
            "order_range": [self.k_lo, self.k_hi],
            "c_hat": self.c_hat,
            "all_degenerate": self.all_degenerate,
            "pointwise": [
                {"t": float(t), "lhs": float(a), "rhs": float(b)}
                for t, a, b in zip(self.taus, self.lhs, self.rhs)
            ],
            "diagnostics": self.diagnostics,
        }


def composition_report(f: MultiPoly, omega: ParamCurve, d: int, tgrid: int) -> CompositionReport:
    """Probe the composition inequality for f along the curve.

    LHS(t) sums the pointwise derivative norms of f of orders
    ceil((d+1)/s) .. d+1 at omega(t); RHS(t) = |g^(d+1)(t)| for the exact
    symbolic composition g = f(omega). The reported c_hat is the minimal
    LHS/RHS over grid points where RHS exceeds the degeneracy floor 1e-12.

    The lower order bound is the minimal number of chain-rule blocks of size
    at most s partitioning d+1, i.e. ceil((d+1)/s); for a straight line
    (s = 1) the sum collapses to the single order d+1.
    """
    if f.nvars != omega.dim:
        raise DimensionMismatch(omega.dim, f.nvars)
    if tgrid < 2:
        raise ValidationError(f"tgrid must be >= 2, got {tgrid}")
    s = omega.s
    k_lo = max(1, math.ceil((d + 1) / s))
    k_hi = d + 1

    g = compose(f, list(omega.components))
    g_deriv = g
    for _ in range(d + 1):
        g_deriv = partial_derivative(g_deriv, 0)

    taus = np.linspace(-1.0, 1.0, tgrid)
    coords = [eval_poly(c, [taus]) for c in omega.components]
    lhs = np.zeros(tgrid)
    for k in range(k_lo, k_hi + 1):
        for _, q in derivatives_of_order(f, k):
            lhs += np.abs(eval_poly(q, coords))
    rhs = np.abs(eval_poly(g_deriv, [taus]))
    if g_deriv.is_zero():
        rhs = np.zeros(tgrid)

    live = rhs > _RHS_FLOOR
    all_degenerate = not bool(np.any(live))
    c_hat = None if all_degenerate else float(np.min(lhs[live] / rhs[live]))
    return CompositionReport(
        degree=d,
        s=s,
        k_lo=k_lo,
        k_hi=k_hi,
        taus=taus,
        lhs=lhs,
        rhs=rhs,
        c_hat=c_hat,
        all_degenerate=all_degenerate,
        diagnostics={"g_degree": g.degree, "live_points": int(np.sum(live))},
    )


def crossing_count(
    omega: ParamCurve,
    config: OvalConfiguration,
    tol: float,
    subdivisions: int = 4096,
) -> int:
    """Number of tol-isolated parameter values where the curve meets Z.

    The curve is subdivided into chords; each chord is intersected with
    every oval edge (touching counts, crossing parameters interpolated
    linearly along the chord), and crossing parameters closer than tol merge
    into one incidence.
    """
    if omega.dim != 2:
        raise DimensionMismatch(2, omega.dim)
    taus = np.linspace(-1.0, 1.0, subdivisions + 1)
    pts = omega.eval(taus)
    p0, p1 = pts[:-1], pts[1:]
    d1 = p1 - p0
    hit_params: list[float] = []
    for oval in config.ovals:
        q0, q1 = _edges(oval.vertices)
        d2 = q1 - q0
        # chord x edge intersection parameters, broadcast (chords, edges)
        denom = d1[:, None, 0] * d2[None, :, 1] - d1[:, None, 1] * d2[None, :, 0]
        diff = q0[None, :, :] - p0[:, None, :]
        with np.errstate(divide="ignore", invalid="ignore"):
            t = (diff[..., 0] * d2[None, :, 1] - diff[..., 1] * d2[None, :, 0]) / denom
            u = (diff[..., 0] * d1[:, None, 1] - diff[..., 1] * d1[:, None, 0]) / denom
        valid = (denom != 0) & (t >= 0.0) & (t <= 1.0) & (u >= 0.0) & (u <= 1.0)
        chord_idx, _ = np.nonzero(valid)
        tvals = t[valid]
        for ci, tv in zip(chord_idx, tvals):
            hit_params.append(float(taus[ci] + tv * (taus[ci + 1] - taus[ci])))
    if not hit_params:
        return 0
    hit_params.sort()
    count = 1
    last = hit_params[0]
    for h in hit_params[1:]:
        if h - last > tol:
            count += 1
        last = h
    return count

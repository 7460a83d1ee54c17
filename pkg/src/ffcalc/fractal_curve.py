"""Refinable polyline curves, order-alpha mass sums and the staircase coordinate.

A curve is a polyline sampling of a parametrization w(t) on [a0, b0].
Self-similar curves carry a refinement rule producing the next, finer
polyline. Mass sums, dimension estimates and the staircase table are all
computed from the vertex subdivision at the working refinement level; the
staircase value J(u) is the cumulative order-alpha mass from an anchor and
serves as the differentiation/integration coordinate everywhere else.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import (
    CapabilityError,
    DomainError,
    EstimationError,
    OrderError,
    ValidationError,
)

__all__ = [
    "FractalCurve",
    "Subdivision",
    "MassEstimate",
    "StaircaseTable",
    "generate_koch",
    "generate_segment",
    "generate_polyline",
    "mass_function",
    "gamma_dimension",
    "build_staircase",
    "J_at",
    "u_at",
    "euclidean_rise",
    "staircase_to_csv",
    "curve_from_json",
    "curve_to_json",
]

KOCH_MAX_LEVEL = 12

Refiner = Callable[["FractalCurve"], "FractalCurve"]


def _float_array(x, name: str, ndim: int) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.ndim != ndim:
        raise ValidationError(f"{name} must be {ndim}-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} contains non-finite values")
    return arr


@dataclass(frozen=True)
class FractalCurve:
    """Polyline approximation of a curve w(t), t in [a0, b0].

    ``params`` and ``points`` tabulate w at the current refinement level.
    ``refiner``, when present, produces the level-(k+1) polyline; it must
    add vertices and keep the endpoint images fixed.
    """

    params: np.ndarray
    points: np.ndarray
    refiner: Refiner | None = None
    level: int = 0

    def __post_init__(self):
        params = _float_array(self.params, "params", 1)
        points = np.asarray(self.points, dtype=float)
        if points.ndim == 1:
            points = points[:, None]
        if points.ndim != 2 or not np.all(np.isfinite(points)):
            raise ValidationError("points must be a finite (m, n) array")
        if params.size < 2:
            raise ValidationError("a curve needs at least 2 vertices")
        if points.shape[0] != params.size:
            raise ValidationError(
                f"params/points length mismatch: {params.size} vs {points.shape[0]}"
            )
        if np.any(np.diff(params) <= 0.0):
            raise ValidationError("params must be strictly increasing")
        if self.level < 0:
            raise ValidationError("level must be non-negative")
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "points", points)

    @property
    def a0(self) -> float:
        return float(self.params[0])

    @property
    def b0(self) -> float:
        return float(self.params[-1])

    @property
    def ndim(self) -> int:
        return self.points.shape[1]

    @property
    def n_segments(self) -> int:
        return self.params.size - 1

    def segment_lengths(self) -> np.ndarray:
        d = np.diff(self.points, axis=0)
        return np.sqrt(np.sum(d * d, axis=1))

    def point_at(self, u):
        """w(u), linearly interpolated between vertices."""
        u_arr = np.asarray(u, dtype=float)
        if np.any(u_arr < self.a0) or np.any(u_arr > self.b0):
            raise DomainError(f"parameter outside [{self.a0}, {self.b0}]")
        cols = [np.interp(u_arr, self.params, self.points[:, k]) for k in range(self.ndim)]
        out = np.stack(cols, axis=-1)
        return out

    def refine(self) -> "FractalCurve":
        """One refinement step; raises if the curve has no refinement rule."""
        if self.refiner is None:
            raise CapabilityError("curve is not refinable (no refinement rule)")
        new = self.refiner(self)
        if new.params.size <= self.params.size:
            raise ValidationError("refinement did not increase the vertex count")
        if not (
            np.allclose(new.points[0], self.points[0])
            and np.allclose(new.points[-1], self.points[-1])
        ):
            raise ValidationError("refinement moved an endpoint image")
        return new

    def refined_to(self, level: int) -> "FractalCurve":
        cur = self
        while cur.level < level:
            cur = cur.refine()
        return cur


@dataclass(frozen=True)
class Subdivision:
    """Ordered breakpoints {a = t_0 < ... < t_n = b} of a parameter interval."""

    breakpoints: np.ndarray

    def __post_init__(self):
        bp = _float_array(self.breakpoints, "breakpoints", 1)
        if bp.size < 2 or np.any(np.diff(bp) <= 0.0):
            raise ValidationError("breakpoints must be strictly increasing with >= 2 entries")
        object.__setattr__(self, "breakpoints", bp)

    @property
    def mesh(self) -> float:
        return float(np.max(np.diff(self.breakpoints)))


@dataclass(frozen=True)
class MassEstimate:
    """Order-alpha mass of a sub-curve with per-level convergence diagnostics.

    ``levels`` lists (refinement level, partial sum) pairs; ``value`` is the
    sum at the deepest level computed.
    """

    alpha: float
    value: float
    levels: list[tuple[int, float]] = field(default_factory=list)

    def __post_init__(self):
        if self.value < 0.0:
            raise ValidationError("mass must be non-negative")


@dataclass(frozen=True)
class StaircaseTable:
    """Tabulated cumulative mass J = S(u) anchored so that S(p0) = 0.

    ``us`` are the curve vertices at the working level, ``Js`` the running
    order-alpha mass; J is non-decreasing, negative below the anchor and
    non-negative above it. Between vertices both directions interpolate
    linearly.
    """

    alpha: float
    p0: float
    us: np.ndarray
    Js: np.ndarray

    def __post_init__(self):
        us = _float_array(self.us, "us", 1)
        Js = _float_array(self.Js, "Js", 1)
        if us.size != Js.size or us.size < 2:
            raise ValidationError("us and Js must have equal length >= 2")
        if np.any(np.diff(us) <= 0.0):
            raise ValidationError("us must be strictly increasing")
        if np.any(np.diff(Js) < 0.0):
            raise ValidationError("Js must be non-decreasing")
        if not (us[0] <= self.p0 <= us[-1]):
            raise ValidationError("anchor p0 outside the tabulated range")
        anchor = float(np.interp(self.p0, us, Js))
        scale = max(1.0, float(np.max(np.abs(Js))))
        if abs(anchor) > 1e-9 * scale:
            raise ValidationError("table is not anchored: S(p0) != 0")
        object.__setattr__(self, "us", us)
        object.__setattr__(self, "Js", Js)

    @property
    def domain(self) -> tuple[float, float]:
        return float(self.us[0]), float(self.us[-1])

    @property
    def J_range(self) -> tuple[float, float]:
        return float(self.Js[0]), float(self.Js[-1])


# ---------------------------------------------------------------------------
# generators


def generate_polyline(params: Sequence[float], points) -> FractalCurve:
    """Wrap explicit data as a (non-refinable) curve."""
    return FractalCurve(np.asarray(params, dtype=float), np.asarray(points, dtype=float))


def _refine_params(params: np.ndarray, splits: int) -> np.ndarray:
    offsets = np.arange(splits) / splits
    dt = np.diff(params)
    cells = params[:-1, None] + dt[:, None] * offsets[None, :]
    return np.append(cells.ravel(), params[-1])


_KOCH_ROT = np.array(
    [[0.5, -math.sqrt(3.0) / 2.0], [math.sqrt(3.0) / 2.0, 0.5]]
)  # +60 degrees


def _koch_refiner(curve: FractalCurve) -> FractalCurve:
    p = curve.points[:-1]
    q = curve.points[1:]
    d = q - p
    a = p + d / 3.0
    c = p + 2.0 * d / 3.0
    b = a + (d / 3.0) @ _KOCH_ROT.T
    m = p.shape[0]
    out = np.empty((4 * m + 1, 2))
    out[0:-1:4] = p
    out[1::4] = a
    out[2::4] = b
    out[3::4] = c
    out[-1] = curve.points[-1]
    return FractalCurve(
        _refine_params(curve.params, 4), out, refiner=_koch_refiner, level=curve.level + 1
    )


def generate_koch(level: int) -> FractalCurve:
    """Standard von Koch polyline over [0, 1] with 4**level segments."""
    if not isinstance(level, (int, np.integer)) or not (0 <= level <= KOCH_MAX_LEVEL):
        raise ValidationError(f"koch level must be an integer in [0, {KOCH_MAX_LEVEL}]")
    base = FractalCurve(
        np.array([0.0, 1.0]),
        np.array([[0.0, 0.0], [1.0, 0.0]]),
        refiner=_koch_refiner,
        level=0,
    )
    return base.refined_to(int(level))


def _midpoint_refiner(curve: FractalCurve) -> FractalCurve:
    t = curve.params
    w = curve.points
    nt = np.empty(2 * t.size - 1)
    nt[0::2] = t
    nt[1::2] = 0.5 * (t[:-1] + t[1:])
    nw = np.empty((2 * w.shape[0] - 1, w.shape[1]))
    nw[0::2] = w
    nw[1::2] = 0.5 * (w[:-1] + w[1:])
    return FractalCurve(nt, nw, refiner=_midpoint_refiner, level=curve.level + 1)


def generate_segment(start=(0.0, 0.0), end=(1.0, 0.0), level: int = 0) -> FractalCurve:
    """Straight segment over [0, 1], refinable by midpoint subdivision.

    Refinement adds vertices without changing the geometry, which makes the
    segment usable wherever a smooth refinable reference curve is needed
    (dimension estimates in particular).
    """
    base = FractalCurve(
        np.array([0.0, 1.0]),
        np.array([list(start), list(end)], dtype=float),
        refiner=_midpoint_refiner,
        level=0,
    )
    return base.refined_to(level)


# ---------------------------------------------------------------------------
# mass and dimension


def _check_order(alpha: float, ndim: int):
    if not np.isfinite(alpha) or alpha < 1.0 or alpha > ndim:
        raise OrderError(f"order alpha must lie in [1, {ndim}], got {alpha}")


def natural_subdivision(curve: FractalCurve, a: float, b: float) -> Subdivision:
    """Vertices of the working level restricted to [a, b], endpoints included."""
    t = curve.params
    i0 = int(np.searchsorted(t, a, side="right"))
    i1 = int(np.searchsorted(t, b, side="left"))
    return Subdivision(np.concatenate([[a], t[i0:i1], [b]]))


def _restricted_sum(curve: FractalCurve, alpha: float, a: float, b: float) -> float:
    knots = natural_subdivision(curve, a, b).breakpoints
    pts = curve.point_at(knots)
    d = np.diff(pts, axis=0)
    lens = np.sqrt(np.sum(d * d, axis=1))
    return float(np.sum(lens**alpha) / math.gamma(alpha + 1.0))


def mass_function(
    curve: FractalCurve,
    alpha: float,
    a: float | None = None,
    b: float | None = None,
    max_level: int | None = None,
) -> MassEstimate:
    """Order-alpha mass of the sub-curve over [a, b].

    Sums |w(t_{i+1}) - w(t_i)|**alpha / Gamma(alpha + 1) over the natural
    vertex subdivision restricted to [a, b], refining the curve up to
    ``max_level`` and recording one partial sum per level. The returned
    value is the sum at the deepest level.
    """
    _check_order(alpha, curve.ndim)
    a = curve.a0 if a is None else float(a)
    b = curve.b0 if b is None else float(b)
    if not (curve.a0 <= a < b <= curve.b0):
        raise DomainError(f"[{a}, {b}] is not a valid sub-interval of [{curve.a0}, {curve.b0}]")
    target = curve.level if max_level is None else int(max_level)
    if target < curve.level:
        raise ValidationError("max_level below the curve's current level")
    if target > curve.level and curve.refiner is None:
        raise CapabilityError("refinement requested but the curve is not refinable")

    levels: list[tuple[int, float]] = []
    cur = curve
    while True:
        levels.append((cur.level, _restricted_sum(cur, alpha, a, b)))
        if cur.level >= target:
            break
        cur = cur.refine()
    return MassEstimate(alpha=float(alpha), value=levels[-1][1], levels=levels)


def _log_sum_slope(length_arrays: list[np.ndarray], alpha: float) -> float:
    sums = [float(np.sum(lens**alpha)) for lens in length_arrays]
    if min(sums) <= 0.0:
        raise EstimationError("mass sums vanish on the requested range")
    ys = np.log(sums)
    ks = np.arange(ys.size, dtype=float)
    ks -= ks.mean()
    return float(np.sum(ks * (ys - ys.mean())) / np.sum(ks * ks))


def gamma_dimension(
    curve: FractalCurve,
    a: float | None = None,
    b: float | None = None,
    tol: float = 0.01,
    max_level: int = 10,
    fit_levels: int = 4,
) -> float:
    """Critical order at which level-wise mass sums switch from growth to decay.

    Located by bisection on alpha in [1, n]; the growth/decay sign is the
    least-squares slope of log(sum) against level over the deepest
    ``fit_levels`` refinement levels. A non-positive slope already at
    alpha = 1 means the curve is rectifiable and 1.0 is returned.
    """
    if curve.refiner is None:
        raise CapabilityError("gamma dimension needs a refinable curve")
    if tol <= 0.0:
        raise ValidationError("tol must be positive")
    if fit_levels < 2:
        raise ValidationError("fit_levels must be >= 2")
    if max_level < curve.level + fit_levels - 1:
        raise ValidationError("max_level leaves too few levels for the slope fit")
    a = curve.a0 if a is None else float(a)
    b = curve.b0 if b is None else float(b)
    if not (curve.a0 <= a < b <= curve.b0):
        raise DomainError(f"[{a}, {b}] is not a valid sub-interval of [{curve.a0}, {curve.b0}]")

    keep_from = max_level - fit_levels + 1
    length_arrays: list[np.ndarray] = []
    cur = curve
    while True:
        if cur.level >= keep_from:
            knots = natural_subdivision(cur, a, b).breakpoints
            pts = cur.point_at(knots)
            d = np.diff(pts, axis=0)
            length_arrays.append(np.sqrt(np.sum(d * d, axis=1)))
        if cur.level >= max_level:
            break
        cur = cur.refine()

    lo, hi = 1.0, float(curve.ndim)
    slope_lo = _log_sum_slope(length_arrays, lo)
    if slope_lo <= 1e-9:
        return 1.0
    if curve.ndim > 1 and _log_sum_slope(length_arrays, hi) > 0.0:
        raise EstimationError(
            "mass sums still grow at alpha = n; no growth/decay transition in [1, n]"
        )
    it = 0
    while hi - lo > tol and it < 60:
        mid = 0.5 * (lo + hi)
        if _log_sum_slope(length_arrays, mid) > 0.0:
            lo = mid
        else:
            hi = mid
        it += 1
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# staircase


def build_staircase(curve: FractalCurve, alpha: float, p0: float | None = None) -> StaircaseTable:
    """Tabulate the cumulative order-alpha mass S(u) with S(p0) = 0.

    S(u) is the mass of the sub-curve between the anchor and u, signed
    negative below the anchor. Values are exact at vertices of the working
    level; J_at/u_at interpolate linearly in between.
    """
    _check_order(alpha, curve.ndim)
    p0 = curve.a0 if p0 is None else float(p0)
    if not (curve.a0 <= p0 <= curve.b0):
        raise DomainError(f"anchor {p0} outside [{curve.a0}, {curve.b0}]")
    masses = curve.segment_lengths() ** alpha / math.gamma(alpha + 1.0)
    cum = np.concatenate([[0.0], np.cumsum(masses)])
    cum -= np.interp(p0, curve.params, cum)
    return StaircaseTable(alpha=float(alpha), p0=p0, us=curve.params.copy(), Js=cum)


def J_at(table: StaircaseTable, u):
    """Staircase value at u (piecewise-linear between tabulated vertices)."""
    u_arr = np.asarray(u, dtype=float)
    lo, hi = table.domain
    if np.any(u_arr < lo) or np.any(u_arr > hi):
        raise DomainError(f"parameter outside [{lo}, {hi}]")
    out = np.interp(u_arr, table.us, table.Js)
    return float(out) if np.isscalar(u) or u_arr.ndim == 0 else out


def u_at(table: StaircaseTable, J):
    """Leftmost parameter with staircase value J (inverse of J_at).

    On flat segments (zero-mass stretches) the preimage is an interval;
    the leftmost point is returned.
    """
    J_arr = np.asarray(J, dtype=float)
    Jlo, Jhi = table.J_range
    if np.any(J_arr < Jlo) or np.any(J_arr > Jhi):
        raise DomainError(f"staircase value outside [{Jlo}, {Jhi}]")
    scalar = np.isscalar(J) or J_arr.ndim == 0
    J_arr = np.atleast_1d(J_arr)
    idx = np.searchsorted(table.Js, J_arr, side="left")
    idx = np.clip(idx, 0, table.Js.size - 1)
    exact = table.Js[idx] == J_arr
    left = np.clip(idx - 1, 0, table.Js.size - 1)
    dJ = table.Js[idx] - table.Js[left]
    with np.errstate(divide="ignore", invalid="ignore"):
        frac = np.where(dJ > 0.0, (J_arr - table.Js[left]) / np.where(dJ > 0.0, dJ, 1.0), 0.0)
    interp = table.us[left] + frac * (table.us[idx] - table.us[left])
    out = np.where(exact, table.us[idx], interp)
    return float(out[0]) if scalar else out


def euclidean_rise(curve: FractalCurve, u) -> float:
    """Euclidean distance of the curve point w(u) from the origin."""
    pts = curve.point_at(u)
    out = np.sqrt(np.sum(np.atleast_2d(pts) ** 2, axis=1))
    return float(out[0]) if out.size == 1 else out


# ---------------------------------------------------------------------------
# i/o


def staircase_to_csv(table: StaircaseTable, target) -> None:
    """Write the table as ``u,J`` rows at full double precision.

    ``target`` is a path or a writable text buffer.
    """
    lines = ["u,J"]
    lines.extend(f"{u:.17g},{J:.17g}" for u, J in zip(table.us, table.Js))
    payload = "\n".join(lines) + "\n"
    if hasattr(target, "write"):
        target.write(payload)
    else:
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(payload)


def curve_from_json(spec) -> FractalCurve:
    """Build a curve from a JSON object or string.

    Accepted kinds: ``{"kind": "koch", "level": k}`` and
    ``{"kind": "polyline", "params": [...], "points": [[...], ...]}``.
    """
    if isinstance(spec, str):
        spec = json.loads(spec)
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ValidationError("curve spec must be an object with a 'kind' field")
    kind = spec["kind"]
    if kind == "koch":
        return generate_koch(spec.get("level", 0))
    if kind == "polyline":
        if "params" not in spec or "points" not in spec:
            raise ValidationError("polyline spec needs 'params' and 'points'")
        return generate_polyline(spec["params"], spec["points"])
    raise ValidationError(f"unknown curve kind {kind!r}")


def curve_to_json(curve: FractalCurve) -> dict:
    return {
        "kind": "polyline",
        "params": curve.params.tolist(),
        "points": curve.points.tolist(),
    }

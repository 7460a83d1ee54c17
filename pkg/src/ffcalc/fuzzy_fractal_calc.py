"""Fuzzy-valued calculus on a curve: continuity probes, Hukuhara-type
derivatives in both difference orderings, and the fuzzy Riemann integral
with staircase cell weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    CaseInapplicableError,
    DegenerateDenominatorError,
    DomainError,
    HukuharaNonexistenceError,
    IntegrityError,
    ValidationError,
)
from .fractal_calc import _cells, _default_step, as_curve_function
from .fractal_curve import FractalCurve, J_at, StaircaseTable
from .fuzzy_core import FuzzyNumber, hausdorff_distance, hukuhara_diff, make_crisp, scale

__all__ = [
    "FuzzyCurveFunction",
    "ContinuityProbe",
    "ff_continuity_probe",
    "fractal_hukuhara_derivative",
    "ff_riemann_integral",
    "crisp_embedding",
    "triangular_field",
]


@dataclass(frozen=True)
class FuzzyCurveFunction:
    """Fuzzy-number-valued function of the curve parameter u."""

    evaluator: Callable[[float], FuzzyNumber]
    domain: tuple[float, float]

    def __call__(self, u: float) -> FuzzyNumber:
        value = self.evaluator(float(u))
        if not isinstance(value, FuzzyNumber):
            raise ValidationError("evaluator must return a FuzzyNumber")
        return value


def crisp_embedding(f, domain) -> FuzzyCurveFunction:
    """Lift a real-valued function to a zero-width fuzzy function."""
    func = as_curve_function(f, domain)
    return FuzzyCurveFunction(lambda u: make_crisp(float(func(u))), func.domain)


def triangular_field(f1, f2, f3, domain) -> FuzzyCurveFunction:
    """Fuzzy function whose value at u is the triangular number (f1(u), f2(u), f3(u))."""
    from .fuzzy_core import make_triangular

    return FuzzyCurveFunction(
        lambda u: make_triangular(float(f1(u)), float(f2(u)), float(f3(u))),
        (float(domain[0]), float(domain[1])),
    )


@dataclass(frozen=True)
class ContinuityProbe:
    """Distances d_H(f(u0 +- delta), f(u0)) for a shrinking family of deltas.

    ``left``/``right`` hold NaN where the probe would leave the domain.
    Continuity at tolerance means the per-delta suprema decay monotonically
    and finish below the tolerance.
    """

    u0: float
    deltas: np.ndarray
    left: np.ndarray
    right: np.ndarray
    tol: float

    @property
    def sup(self) -> np.ndarray:
        both = np.stack([self.left, self.right])
        with np.errstate(invalid="ignore"):
            return np.nanmax(both, axis=0)

    @property
    def decaying(self) -> bool:
        s = self.sup
        return bool(np.all(np.diff(s) <= 1e-15 + 1e-12 * np.abs(s[:-1])))

    @property
    def continuous(self) -> bool:
        return self.decaying and bool(self.sup[-1] <= self.tol)


def ff_continuity_probe(f: FuzzyCurveFunction, u0: float, deltas, tol: float = 1e-6) -> ContinuityProbe:
    """Probe fuzzy continuity of f at u0 along a decreasing delta family."""
    deltas = np.asarray(deltas, dtype=float)
    if deltas.ndim != 1 or deltas.size == 0 or np.any(deltas <= 0.0):
        raise ValidationError("deltas must be a non-empty array of positive values")
    if np.any(np.diff(deltas) >= 0.0):
        raise ValidationError("deltas must be strictly decreasing")
    lo, hi = f.domain
    if not lo <= u0 <= hi:
        raise DomainError(f"u0={u0} outside the domain [{lo}, {hi}]")
    center = f(u0)
    left = np.full(deltas.shape, np.nan)
    right = np.full(deltas.shape, np.nan)
    for k, d in enumerate(deltas):
        if u0 - d >= lo:
            left[k] = hausdorff_distance(f(u0 - d), center)
        if u0 + d <= hi:
            right[k] = hausdorff_distance(f(u0 + d), center)
    return ContinuityProbe(u0=float(u0), deltas=deltas, left=left, right=right, tol=tol)


def fractal_hukuhara_derivative(
    f: FuzzyCurveFunction,
    table: StaircaseTable,
    u0: float,
    case: str,
    h: float | None = None,
) -> FuzzyNumber:
    """Forward Hukuhara difference quotient of f at u0 in the J coordinate.

    Case "I" uses f(u0 + h) - f(u0) and suits bands of non-decreasing
    width; case "II" uses f(u0) - f(u0 + h) over the reversed step and
    suits shrinking bands. Endpoint-wise, case I differentiates
    (lower, upper) in place while case II swaps them, so a case-II
    derivative of a valid shrinking band is again a valid fuzzy number.
    Inapplicability of the requested case raises
    :class:`CaseInapplicableError` naming the smallest failing level.
    """
    if case not in ("I", "II"):
        raise ValidationError(f"case must be 'I' or 'II', got {case!r}")
    lo, hi = table.domain
    if h is None:
        h = _default_step(table, u0)
    if h <= 0.0:
        raise ValidationError("step h must be positive")
    if u0 < lo or u0 + h > hi:
        raise DomainError(f"forward stencil [{u0}, {u0 + h}] leaves the domain [{lo}, {hi}]")
    dJ = J_at(table, u0 + h) - J_at(table, u0)
    if dJ == 0.0:
        raise DegenerateDenominatorError(f"staircase is flat across [{u0}, {u0 + h}]")
    f0 = f(u0)
    f1 = f(u0 + h)
    try:
        if case == "I":
            return scale(1.0 / dJ, hukuhara_diff(f1, f0))
        return scale(-1.0 / dJ, hukuhara_diff(f0, f1))
    except HukuharaNonexistenceError as exc:
        raise CaseInapplicableError(
            f"case {case} difference does not exist at u0={u0} (failing level r={exc.failing_r})",
            case=case,
            failing_r=exc.failing_r,
        ) from exc


def ff_riemann_integral(
    f: FuzzyCurveFunction,
    curve: FractalCurve,
    table: StaircaseTable,
    a: float | None = None,
    b: float | None = None,
    rule: str = "left",
) -> FuzzyNumber:
    """Fuzzy Riemann sum of dJ-weighted samples over the vertex subdivision.

    The defining sum evaluates f at the left knot of each cell; the
    ``midpoint`` rule is available for accuracy comparisons. Because every
    cell weight dJ is non-negative, the fuzzy sum equals the endpoint-wise
    crisp Riemann sums level by level, which is how it is computed.
    """
    if rule not in ("left", "midpoint"):
        raise ValidationError(f"rule must be 'left' or 'midpoint', got {rule!r}")
    lo, hi = table.domain
    a = lo if a is None else float(a)
    b = hi if b is None else float(b)
    if not (lo <= a < b <= hi) or not (curve.a0 <= a and b <= curve.b0):
        raise DomainError(f"[{a}, {b}] is not a valid sub-interval of the domain")
    knots, dJ = _cells(table, a, b)
    if np.any(dJ < 0.0):
        raise IntegrityError("negative staircase increment in the integration cells")
    nodes = knots[:-1] if rule == "left" else 0.5 * (knots[:-1] + knots[1:])

    samples = [f(u) for u in nodes]
    rs = samples[0].rs
    same_grid = all(s.rs.size == rs.size and np.array_equal(s.rs, rs) for s in samples[1:])
    if not same_grid:
        rs = rs.copy()
        for s in samples[1:]:
            rs = np.union1d(rs, s.rs)
    lows = np.empty((len(samples), rs.size))
    ups = np.empty((len(samples), rs.size))
    for i, s in enumerate(samples):
        if same_grid:
            lows[i], ups[i] = s.lowers, s.uppers
        else:
            lows[i], ups[i] = s.cuts_at(rs)
    w = dJ[:, None]
    return FuzzyNumber(rs, np.sum(w * lows, axis=0), np.sum(w * ups, axis=0))

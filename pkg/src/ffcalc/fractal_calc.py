"""Real-valued calculus on a curve through the staircase coordinate.

The derivative replaces the usual denominator by increments of the
staircase value J, and the integral weights cells by their J increment,
so both reduce to ordinary d/dJ calculus wherever J is strictly
increasing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DegenerateDenominatorError, DomainError, IntegrityError, ValidationError
from .fractal_curve import FractalCurve, J_at, StaircaseTable

__all__ = ["CurveFunction", "FIntegralResult", "f_derivative", "f_integral"]


@dataclass(frozen=True)
class CurveFunction:
    """Real-valued function of the curve parameter u.

    The evaluator must accept numpy arrays (every integrand used here is a
    numpy expression of u and J_at).
    """

    evaluator: Callable
    domain: tuple[float, float]

    def __call__(self, u):
        return self.evaluator(u)


def as_curve_function(f, domain) -> CurveFunction:
    if isinstance(f, CurveFunction):
        return f
    return CurveFunction(f, (float(domain[0]), float(domain[1])))


@dataclass(frozen=True)
class FIntegralResult:
    """Midpoint Riemann value together with a lower/upper sum bracket.

    Per-cell infima/suprema are approximated by the endpoint and midpoint
    samples (exact for cell-monotone integrands). ``converged`` flags a
    bracket narrower than the requested tolerance.
    """

    value: float
    lower_sum: float
    upper_sum: float
    n_cells: int
    converged: bool

    @property
    def bracket_width(self) -> float:
        return self.upper_sum - self.lower_sum

    def __float__(self):
        return self.value


def _default_step(table: StaircaseTable, u: float) -> float:
    idx = int(np.clip(np.searchsorted(table.us, u, side="right") - 1, 0, table.us.size - 2))
    return float(table.us[idx + 1] - table.us[idx])


def f_derivative(f, table: StaircaseTable, u: float, h: float | None = None) -> float:
    """Central difference quotient of f with denominator measured in J.

    ``h`` defaults to one vertex spacing at the working level. Requires
    the staircase to be strictly increasing across [u - h, u + h].
    """
    lo, hi = table.domain
    func = as_curve_function(f, table.domain)
    if h is None:
        h = _default_step(table, u)
    if h <= 0.0:
        raise ValidationError("step h must be positive")
    if u - h < lo or u + h > hi:
        raise DomainError(f"stencil [{u - h}, {u + h}] leaves the domain [{lo}, {hi}]")
    den = J_at(table, u + h) - J_at(table, u - h)
    if den == 0.0:
        raise DegenerateDenominatorError(f"staircase is flat across [{u - h}, {u + h}]")
    return (float(func(u + h)) - float(func(u - h))) / den


def _cells(table: StaircaseTable, a: float, b: float):
    knots = np.concatenate(
        [
            [a],
            table.us[
                int(np.searchsorted(table.us, a, side="right")) : int(
                    np.searchsorted(table.us, b, side="left")
                )
            ],
            [b],
        ]
    )
    Jk = np.interp(knots, table.us, table.Js)
    dJ = np.diff(Jk)
    if np.any(dJ < 0.0):
        raise IntegrityError("staircase increments are negative; table is corrupt")
    return knots, dJ


def f_integral(
    f,
    curve: FractalCurve,
    table: StaircaseTable,
    a: float | None = None,
    b: float | None = None,
    bracket_tol: float = 1e-6,
) -> FIntegralResult:
    """Riemann sum of f over the sub-curve [a, b] with cell weights dJ.

    The value uses midpoint samples; the attached bracket uses per-cell
    min/max over the endpoint and midpoint samples, mirroring lower and
    upper sums. Summation is numpy's pairwise reduction, so the result is
    independent of any evaluation-order choice.
    """
    lo, hi = table.domain
    a = lo if a is None else float(a)
    b = hi if b is None else float(b)
    if not (lo <= a < b <= hi) or not (curve.a0 <= a and b <= curve.b0):
        raise DomainError(f"[{a}, {b}] is not a valid sub-interval of the domain")
    func = as_curve_function(f, table.domain)
    knots, dJ = _cells(table, a, b)
    mids = 0.5 * (knots[:-1] + knots[1:])
    fm = np.asarray(func(mids), dtype=float)
    fl = np.asarray(func(knots[:-1]), dtype=float)
    fr = np.asarray(func(knots[1:]), dtype=float)
    value = float(np.sum(fm * dJ))
    lower = float(np.sum(np.minimum(np.minimum(fl, fr), fm) * dJ))
    upper = float(np.sum(np.maximum(np.maximum(fl, fr), fm) * dJ))
    width = upper - lower
    return FIntegralResult(
        value=value,
        lower_sum=lower,
        upper_sum=upper,
        n_cells=int(dJ.size),
        converged=bool(width <= bracket_tol * (1.0 + abs(value))),
    )

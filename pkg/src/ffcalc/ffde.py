"""First-order fuzzy differential equations on a curve and a second-order
boundary-value problem with fuzzy boundary values.

Everything is integrated in the staircase coordinate J, where the curve
derivative becomes an ordinary d/dJ, and mapped back to the parameter grid
afterwards. First-order problems are split into parametric endpoint systems,
one pair per membership level: case I keeps (lower, upper) aligned with the
right-hand side, case II drives each endpoint by the opposite side's
equation. The level grid is integrated directly by default; the linear
0-cut/1-cut assembly is available as a fast path and agrees whenever the
right-hand side is linear with level-linear data.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from .errors import (
    ConditioningError,
    DivergenceError,
    DomainError,
    ValidationError,
)
from .fractal_curve import J_at, StaircaseTable
from .fuzzy_core import FuzzyNumber, TriangularFuzzy

__all__ = [
    "CrispTrajectory",
    "solve_crisp_in_J",
    "ParametricRhs",
    "LinearRhs",
    "FuncRhs",
    "FirstOrderFfdeProblem",
    "FuzzySolution",
    "solve_case1",
    "solve_case2",
    "solve_first_order",
    "SecondOrderFuzzyBvp",
    "SecondOrderSolution",
    "solve_second_order_bvp",
    "ode_residual_max",
    "VerificationReport",
    "verify_against_closed_form",
    "solution_to_csv",
    "solution_from_csv",
]


# ---------------------------------------------------------------------------
# crisp integration in the J coordinate


@dataclass(frozen=True)
class CrispTrajectory:
    """RK4 trajectory on a uniform J grid with cubic Hermite dense output."""

    js: np.ndarray
    states: np.ndarray  # (n_nodes, dim)
    slopes: np.ndarray  # rhs values at the nodes

    def __post_init__(self):
        object.__setattr__(
            self, "_spline", CubicHermiteSpline(self.js, self.states, self.slopes, axis=0)
        )

    def at(self, j):
        """Dense evaluation at J values inside the integration span."""
        j_arr = np.asarray(j, dtype=float)
        if np.any(j_arr < self.js[0]) or np.any(j_arr > self.js[-1]):
            raise DomainError(f"J outside the integrated span [{self.js[0]}, {self.js[-1]}]")
        return self._spline(j_arr)

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]


def solve_crisp_in_J(rhs: Callable, x0, j_span, steps: int) -> CrispTrajectory:
    """Classical 4th-order integration of dy/dJ = rhs(J, y) on a uniform grid.

    ``rhs`` receives and returns numpy arrays; scalars are promoted to
    1-vectors. A non-finite state aborts with the last valid J attached.
    """
    j0, j1 = float(j_span[0]), float(j_span[1])
    if not (np.isfinite(j0) and np.isfinite(j1)) or j1 <= j0:
        raise ValidationError(f"integration span must be increasing, got [{j0}, {j1}]")
    steps = int(steps)
    if steps < 16:
        raise ValidationError("at least 16 steps are required")
    y = np.atleast_1d(np.asarray(x0, dtype=float)).copy()
    if y.ndim != 1:
        raise ValidationError("initial state must be a scalar or 1-d array")
    js = np.linspace(j0, j1, steps + 1)
    h = (j1 - j0) / steps
    states = np.empty((steps + 1, y.size))
    slopes = np.empty_like(states)
    states[0] = y
    with np.errstate(over="ignore", invalid="ignore"):  # divergence is detected explicitly
        for k in range(steps):
            jk = js[k]
            k1 = np.asarray(rhs(jk, y), dtype=float)
            k2 = np.asarray(rhs(jk + 0.5 * h, y + 0.5 * h * k1), dtype=float)
            k3 = np.asarray(rhs(jk + 0.5 * h, y + 0.5 * h * k2), dtype=float)
            k4 = np.asarray(rhs(jk + h, y + h * k3), dtype=float)
            slopes[k] = k1
            y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            if not np.all(np.isfinite(y)):
                raise DivergenceError(
                    f"state became non-finite between J={jk} and J={js[k + 1]}",
                    last_valid=float(jk),
                )
            states[k + 1] = y
        slopes[-1] = np.asarray(rhs(js[-1], y), dtype=float)
    return CrispTrajectory(js=js, states=states, slopes=slopes)


# ---------------------------------------------------------------------------
# first-order problems


class ParametricRhs:
    """Parametric right-hand side (f_lower, f_upper) of a first-order problem.

    Both sides receive (J, lower_band, upper_band, levels) with the band
    arrays aligned to the level grid, and return arrays of the same shape.
    Exposing both bands to both sides is what lets case II couple the
    endpoint equations.
    """

    def lower(self, J, lo, up, rs):
        raise NotImplementedError

    def upper(self, J, lo, up, rs):
        raise NotImplementedError


class LinearRhs(ParametricRhs):
    """Right-hand side a*x + c for a real coefficient and fuzzy constant c."""

    def __init__(self, a: float, c: FuzzyNumber):
        self.a = float(a)
        self.c = c
        self._cut_cache: dict[bytes, tuple[np.ndarray, np.ndarray]] = {}

    def _cuts(self, rs: np.ndarray):
        key = rs.tobytes()
        if key not in self._cut_cache:
            self._cut_cache[key] = self.c.cuts_at(rs)
        return self._cut_cache[key]

    def lower(self, J, lo, up, rs):
        clo, _ = self._cuts(rs)
        return (self.a * lo if self.a >= 0.0 else self.a * up) + clo

    def upper(self, J, lo, up, rs):
        _, chi = self._cuts(rs)
        return (self.a * up if self.a >= 0.0 else self.a * lo) + chi


class FuncRhs(ParametricRhs):
    """Right-hand side built from two explicit endpoint callables."""

    def __init__(self, lower_fn: Callable, upper_fn: Callable):
        self._lower = lower_fn
        self._upper = upper_fn

    def lower(self, J, lo, up, rs):
        return self._lower(J, lo, up, rs)

    def upper(self, J, lo, up, rs):
        return self._upper(J, lo, up, rs)


@dataclass(frozen=True)
class FirstOrderFfdeProblem:
    """First-order fuzzy initial-value problem in parametric form.

    ``span`` is the parameter interval to solve over; the staircase table
    supplies J. ``case`` selects the differentiability convention: "I"
    (bands may widen) or "II" (bands shrink, endpoint equations swapped).
    """

    table: StaircaseTable
    rhs: ParametricRhs
    x0: FuzzyNumber
    span: tuple[float, float]
    case: str
    r_points: int = 101
    j_steps: int = 256
    u_points: int | None = None

    def __post_init__(self):
        if self.case not in ("I", "II"):
            raise ValidationError(f"case must be 'I' or 'II', got {self.case!r}")
        lo, hi = self.table.domain
        u0, u1 = float(self.span[0]), float(self.span[1])
        if not (lo <= u0 < u1 <= hi):
            raise DomainError(f"span [{u0}, {u1}] outside the table domain [{lo}, {hi}]")
        if self.r_points < 2:
            raise ValidationError("r_points must be >= 2")
        if self.j_steps < 16:
            raise ValidationError("j_steps must be >= 16")
        if self.u_points is not None and self.u_points < 2:
            raise ValidationError("u_points must be >= 2")
        object.__setattr__(self, "span", (u0, u1))


@dataclass(frozen=True)
class FuzzySolution:
    """Solution band table over a parameter grid and a level grid.

    ``lower``/``upper`` have shape (len(us), len(rs)). ``validity`` marks
    the parameter rows whose level slice is a valid fuzzy number; rows past
    a case-II horizon stay in the table with validity False.
    """

    us: np.ndarray
    Js: np.ndarray
    rs: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    validity: np.ndarray
    case: str

    @property
    def validity_horizon(self) -> float:
        """Largest parameter value up to which every earlier slice is valid."""
        prefix = int(np.logical_and.accumulate(self.validity).sum())
        return float(self.us[max(prefix - 1, 0)])

    def r_slice(self, i: int) -> FuzzyNumber:
        if not self.validity[i]:
            raise ValidationError(f"slice at u={self.us[i]} is not a valid fuzzy number")
        return FuzzyNumber(self.rs, self.lower[i], self.upper[i])

    def summary(self) -> dict:
        return {
            "case": self.case,
            "u_points": int(self.us.size),
            "r_points": int(self.rs.size),
            "valid_rows": int(np.count_nonzero(self.validity)),
            "validity_horizon": self.validity_horizon,
        }


def _validity_flags(lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
    scale = max(1.0, float(np.max(np.abs(lower))), float(np.max(np.abs(upper))))
    tol = 1e-9 * scale
    ok_lo = np.all(np.diff(lower, axis=1) >= -tol, axis=1)
    ok_up = np.all(np.diff(upper, axis=1) <= tol, axis=1)
    ok_w = np.all(upper - lower >= -tol, axis=1)
    return ok_lo & ok_up & ok_w


def _integrate_bands(problem: FirstOrderFfdeProblem, rs: np.ndarray, swap: bool) -> CrispTrajectory:
    n = rs.size
    rhs = problem.rhs

    def system(J, y):
        lo, up = y[:n], y[n:]
        if swap:
            dlo = rhs.upper(J, lo, up, rs)
            dup = rhs.lower(J, lo, up, rs)
        else:
            dlo = rhs.lower(J, lo, up, rs)
            dup = rhs.upper(J, lo, up, rs)
        return np.concatenate([np.asarray(dlo, dtype=float), np.asarray(dup, dtype=float)])

    lo0, up0 = problem.x0.cuts_at(rs)
    J0 = J_at(problem.table, problem.span[0])
    J1 = J_at(problem.table, problem.span[1])
    if J1 <= J0:
        raise ValidationError("staircase does not advance over the span (flat J)")
    return solve_crisp_in_J(system, np.concatenate([lo0, up0]), (J0, J1), problem.j_steps)


def _solve_first_order(problem: FirstOrderFfdeProblem, swap: bool, method: str) -> FuzzySolution:
    if method not in ("full", "cuts"):
        raise ValidationError(f"method must be 'full' or 'cuts', got {method!r}")
    rs = np.linspace(0.0, 1.0, problem.r_points)
    u0, u1 = problem.span
    n_u = problem.u_points if problem.u_points is not None else problem.j_steps + 1
    us = np.linspace(u0, u1, n_u)
    Jus = J_at(problem.table, us)

    if method == "full":
        traj = _integrate_bands(problem, rs, swap)
        vals = traj.at(Jus)
        lower = vals[:, : rs.size].copy()
        upper = vals[:, rs.size :].copy()
    else:
        cut_rs = np.array([0.0, 1.0])
        traj = _integrate_bands(problem, cut_rs, swap)
        vals = traj.at(Jus)
        lo_c, up_c = vals[:, :2], vals[:, 2:]
        w1 = rs[None, :]
        w0 = 1.0 - w1
        lower = w0 * lo_c[:, 0:1] + w1 * lo_c[:, 1:2]
        upper = w0 * up_c[:, 0:1] + w1 * up_c[:, 1:2]

    lo0, up0 = problem.x0.cuts_at(rs)
    lower[0] = lo0  # the initial slice is copied, not integrated
    upper[0] = up0
    validity = _validity_flags(lower, upper)
    if not np.any(validity[1:]):
        warnings.warn(
            "no valid fuzzy slice beyond the initial point; the requested case does not "
            "apply on this span",
            RuntimeWarning,
            stacklevel=3,
        )
    return FuzzySolution(
        us=us,
        Js=Jus,
        rs=rs,
        lower=lower,
        upper=upper,
        validity=validity,
        case=problem.case,
    )


def solve_case1(problem: FirstOrderFfdeProblem, method: str = "full") -> FuzzySolution:
    """Solve a case-I problem: endpoint equations integrated as given."""
    if problem.case != "I":
        raise ValidationError("solve_case1 requires a problem declared with case 'I'")
    return _solve_first_order(problem, swap=False, method=method)


def solve_case2(problem: FirstOrderFfdeProblem, method: str = "full") -> FuzzySolution:
    """Solve a case-II problem: lower endpoint driven by the upper equation
    and vice versa. The returned solution carries per-row validity flags and
    a validity horizon, since case-II bands can stop being fuzzy numbers at
    finite J."""
    if problem.case != "II":
        raise ValidationError("solve_case2 requires a problem declared with case 'II'")
    return _solve_first_order(problem, swap=True, method=method)


def solve_first_order(problem: FirstOrderFfdeProblem, method: str = "full") -> FuzzySolution:
    """Dispatch to the solver matching the problem's declared case."""
    if problem.case == "I":
        return solve_case1(problem, method=method)
    return solve_case2(problem, method=method)


# ---------------------------------------------------------------------------
# verification harness


@dataclass(frozen=True)
class VerificationReport:
    max_error: float
    rms_error: float
    n_points: int
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_error <= self.tol

    def to_dict(self) -> dict:
        return {
            "max_error": self.max_error,
            "rms_error": self.rms_error,
            "n_points": self.n_points,
            "tol": self.tol,
            "passed": self.passed,
        }


def verify_against_closed_form(
    sol: FuzzySolution,
    band_fn: Callable,
    tol: float = 1e-6,
    restrict_to_valid: bool = False,
) -> VerificationReport:
    """Compare a solution's endpoint bands with a closed-form band formula.

    ``band_fn(J, r)`` must broadcast over a (len(us), 1) J column and a
    (1, len(rs)) level row and return (lower, upper). With
    ``restrict_to_valid`` only rows flagged valid enter the error.
    """
    lo_ref, up_ref = band_fn(sol.Js[:, None], sol.rs[None, :])
    err = np.maximum(np.abs(sol.lower - lo_ref), np.abs(sol.upper - up_ref))
    if restrict_to_valid:
        err = err[sol.validity]
    if err.size == 0:
        raise ValidationError("no points to verify (no valid rows)")
    return VerificationReport(
        max_error=float(np.max(err)),
        rms_error=float(np.sqrt(np.mean(err**2))),
        n_points=int(err.size),
        tol=float(tol),
    )


# ---------------------------------------------------------------------------
# csv persistence


def solution_to_csv(sol: FuzzySolution, target) -> None:
    """Write ``u,J,r,lower,upper,valid`` rows, row-major over u then r,
    at full double precision."""
    lines = ["u,J,r,lower,upper,valid"]
    for i in range(sol.us.size):
        u, J, flag = sol.us[i], sol.Js[i], int(sol.validity[i])
        lines.extend(
            f"{u:.17g},{J:.17g},{r:.17g},{lo:.17g},{up:.17g},{flag}"
            for r, lo, up in zip(sol.rs, sol.lower[i], sol.upper[i])
        )
    payload = "\n".join(lines) + "\n"
    if hasattr(target, "write"):
        target.write(payload)
    else:
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(payload)


def solution_from_csv(source, case: str = "unknown") -> FuzzySolution:
    """Reload a solution written by :func:`solution_to_csv`."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    lines = [ln for ln in text.strip().splitlines() if ln]
    if not lines or lines[0].strip() != "u,J,r,lower,upper,valid":
        raise ValidationError("not a solution CSV (bad header)")
    data = np.array([[float(x) for x in ln.split(",")] for ln in lines[1:]])
    if data.ndim != 2 or data.shape[1] != 6:
        raise ValidationError("malformed solution CSV body")
    col_r = data[:, 2]
    wraps = np.flatnonzero(np.diff(col_r) < 0)
    n_r = int(wraps[0] + 1) if wraps.size else data.shape[0]
    if data.shape[0] % n_r != 0:
        raise ValidationError("solution CSV rows do not form a full u x r grid")
    n_u = data.shape[0] // n_r
    return FuzzySolution(
        us=data[::n_r, 0].copy(),
        Js=data[::n_r, 1].copy(),
        rs=data[:n_r, 2].copy(),
        lower=data[:, 3].reshape(n_u, n_r),
        upper=data[:, 4].reshape(n_u, n_r),
        validity=data[::n_r, 5] != 0.0,
        case=case,
    )


# ---------------------------------------------------------------------------
# second-order boundary-value problem


@dataclass(frozen=True)
class SecondOrderFuzzyBvp:
    """x'' + p x' + q x = g(J) in the J coordinate with triangular fuzzy
    boundary values at the ends of ``j_span``. Only the boundary data is
    fuzzy; the operator coefficients are crisp constants."""

    p: float
    q: float
    forcing: Callable
    boundary_start: TriangularFuzzy
    boundary_end: TriangularFuzzy
    j_span: tuple[float, float] = (0.0, 1.0)
    steps: int = 512

    def __post_init__(self):
        j0, j1 = float(self.j_span[0]), float(self.j_span[1])
        if not (np.isfinite(j0) and np.isfinite(j1)) or j1 <= j0:
            raise ValidationError(f"j_span must be increasing, got [{j0}, {j1}]")
        if self.steps < 16:
            raise ValidationError("steps must be >= 16")
        object.__setattr__(self, "j_span", (j0, j1))


def _fundamental_pair(p: float, q: float):
    """Two independent solutions of x'' + p x' + q x = 0."""
    disc = p * p - 4.0 * q
    m = -0.5 * p
    eps = 1e-12 * max(1.0, p * p, abs(4.0 * q))
    if disc > eps:
        s = 0.5 * np.sqrt(disc)
        return (lambda J: np.exp((m + s) * J)), (lambda J: np.exp((m - s) * J))
    if disc < -eps:
        w = 0.5 * np.sqrt(-disc)
        return (
            lambda J: np.exp(m * J) * np.cos(w * J),
            lambda J: np.exp(m * J) * np.sin(w * J),
        )
    return (lambda J: np.exp(m * J)), (lambda J: J * np.exp(m * J))


@dataclass(frozen=True)
class SecondOrderSolution:
    """Crisp solution plus uncertainty envelope of a fuzzy-boundary BVP.

    ``crisp`` solves the problem with the boundary peaks; ``un_lower`` /
    ``un_upper`` are the support band of the homogeneous uncertainty part.
    The band at membership level kappa is crisp + (1 - kappa) * envelope,
    so kappa = 1 collapses to the crisp solution exactly.
    """

    js: np.ndarray
    crisp: np.ndarray
    crisp_slope: np.ndarray
    q1: np.ndarray
    q2: np.ndarray
    un_lower: np.ndarray
    un_upper: np.ndarray
    boundary_matrix: np.ndarray
    problem: SecondOrderFuzzyBvp

    def __post_init__(self):
        object.__setattr__(
            self, "_spline", CubicHermiteSpline(self.js, self.crisp, self.crisp_slope)
        )
        x1, x2 = _fundamental_pair(self.problem.p, self.problem.q)
        object.__setattr__(self, "_x1", x1)
        object.__setattr__(self, "_x2", x2)

    def crisp_at(self, j):
        j_arr = np.asarray(j, dtype=float)
        if np.any(j_arr < self.js[0]) or np.any(j_arr > self.js[-1]):
            raise DomainError(f"J outside [{self.js[0]}, {self.js[-1]}]")
        return self._spline(j_arr)

    def q_at(self, j):
        """Interpolation weights (q1, q2) of the boundary uncertainty at J."""
        p_row = np.array([self._x1(j), self._x2(j)], dtype=float)
        return np.linalg.solve(self.boundary_matrix.T, p_row)

    def kappa_band(self, kappa: float) -> tuple[np.ndarray, np.ndarray]:
        if not 0.0 <= kappa <= 1.0:
            raise DomainError(f"kappa={kappa} outside [0, 1]")
        w = 1.0 - kappa
        return self.crisp + w * self.un_lower, self.crisp + w * self.un_upper

    def to_solution(self, kappas=None) -> FuzzySolution:
        """Band table over the kappa grid, in the FuzzySolution layout."""
        kappas = np.linspace(0.0, 1.0, 101) if kappas is None else np.asarray(kappas, float)
        if kappas.ndim != 1 or np.any(np.diff(kappas) <= 0.0):
            raise ValidationError("kappas must be strictly increasing")
        if np.any(kappas < 0.0) or np.any(kappas > 1.0):
            raise DomainError("kappas outside [0, 1]")
        w = (1.0 - kappas)[None, :]
        lower = self.crisp[:, None] + w * self.un_lower[:, None]
        upper = self.crisp[:, None] + w * self.un_upper[:, None]
        return FuzzySolution(
            us=self.js.copy(),
            Js=self.js.copy(),
            rs=kappas,
            lower=lower,
            upper=upper,
            validity=np.ones(self.js.size, dtype=bool),
            case="kappa",
        )


def solve_second_order_bvp(problem: SecondOrderFuzzyBvp) -> SecondOrderSolution:
    """Linear shooting for the crisp part, fundamental-pair interpolation
    weights for the uncertainty part.

    The crisp problem uses the boundary peaks. The uncertainty envelope is
    q1(J) * (start band) + q2(J) * (end band) where the weights are the
    fundamental row times the inverse boundary matrix, computed by solving
    the 2x2 systems rather than inverting.
    """
    p, q, g = problem.p, problem.q, problem.forcing
    j0, j1 = problem.j_span
    peak0 = problem.boundary_start.b
    peak1 = problem.boundary_end.b

    def forced(J, y):
        return np.array([y[1], float(g(J)) - p * y[1] - q * y[0]])

    def homogeneous(J, y):
        return np.array([y[1], -p * y[1] - q * y[0]])

    base = solve_crisp_in_J(forced, [peak0, 0.0], (j0, j1), problem.steps)
    hom = solve_crisp_in_J(homogeneous, [0.0, 1.0], (j0, j1), problem.steps)
    den = float(hom.final[0])
    if abs(den) <= 1e-12 * max(1.0, abs(peak1), abs(float(base.final[0]))):
        raise DivergenceError("shooting failed: homogeneous solution vanishes at the far end")
    c = (peak1 - float(base.final[0])) / den
    states = base.states + c * hom.states
    slopes = base.slopes + c * hom.slopes

    x1, x2 = _fundamental_pair(p, q)
    M = np.array([[float(x1(j0)), float(x2(j0))], [float(x1(j1)), float(x2(j1))]])
    scale = max(1.0, float(np.max(np.abs(M))))
    if abs(float(np.linalg.det(M))) <= 1e-12 * scale * scale:
        raise ConditioningError("boundary matrix of the fundamental pair is singular")

    js = base.js
    P = np.stack([np.asarray(x1(js), dtype=float), np.asarray(x2(js), dtype=float)], axis=1)
    W = np.linalg.solve(M.T, P.T).T
    q1, q2 = W[:, 0], W[:, 1]

    b0 = problem.boundary_start
    b1 = problem.boundary_end
    lo0, hi0 = b0.a - b0.b, b0.c - b0.b  # boundary bands centered on their peaks
    lo1, hi1 = b1.a - b1.b, b1.c - b1.b
    un_lower = np.minimum(q1 * lo0, q1 * hi0) + np.minimum(q2 * lo1, q2 * hi1)
    un_upper = np.maximum(q1 * lo0, q1 * hi0) + np.maximum(q2 * lo1, q2 * hi1)

    return SecondOrderSolution(
        js=js,
        crisp=states[:, 0],
        crisp_slope=states[:, 1],
        q1=q1,
        q2=q2,
        un_lower=un_lower,
        un_upper=un_upper,
        boundary_matrix=M,
        problem=problem,
    )


def ode_residual_max(js: np.ndarray, xs: np.ndarray, p: float, q: float, forcing: Callable) -> float:
    """Finite-difference residual of x'' + p x' + q x - g on a uniform grid.

    Fourth-order central stencils on interior nodes; needs >= 5 nodes.
    """
    js = np.asarray(js, dtype=float)
    xs = np.asarray(xs, dtype=float)
    if js.size != xs.size or js.size < 5:
        raise ValidationError("need matching grids with at least 5 nodes")
    hs = np.diff(js)
    h = hs[0]
    if not np.allclose(hs, h, rtol=1e-12, atol=0.0):
        raise ValidationError("residual stencils require a uniform grid")
    d1 = (-xs[4:] + 8.0 * xs[3:-1] - 8.0 * xs[1:-3] + xs[:-4]) / (12.0 * h)
    d2 = (-xs[4:] + 16.0 * xs[3:-1] - 30.0 * xs[2:-2] + 16.0 * xs[1:-3] - xs[:-4]) / (
        12.0 * h * h
    )
    res = d2 + p * d1 + q * xs[2:-2] - np.asarray(forcing(js[2:-2]), dtype=float)
    return float(np.max(np.abs(res)))

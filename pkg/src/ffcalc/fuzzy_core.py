"""Fuzzy numbers in parametric level-cut form.

A fuzzy number is stored as nested intervals [lower(r), upper(r)] on an
ordered grid of membership levels r in [0, 1]. Lower endpoints are
non-decreasing in r, upper endpoints non-increasing, and lower <= upper;
the r = 1 cut is the (nonempty) core. All arithmetic acts endpoint-wise
on the cuts, with operands on different grids resampled onto the union
grid first.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, HukuharaNonexistenceError, ValidationError

__all__ = [
    "DEFAULT_R_LEVELS",
    "default_r_grid",
    "Interval",
    "TriangularFuzzy",
    "FuzzyNumber",
    "make_triangular",
    "make_crisp",
    "r_cut",
    "add",
    "scale",
    "hausdorff_distance",
    "hukuhara_diff",
    "validate",
    "ValidationReport",
    "Violation",
    "fuzzy_from_json",
    "fuzzy_to_json",
]

DEFAULT_R_LEVELS = 101

# Constructors accept endpoint tables whose defects are at rounding scale;
# anything larger is a genuine shape violation and is rejected.
_SHAPE_TOL = 1e-9


def default_r_grid(n_levels: int = DEFAULT_R_LEVELS) -> np.ndarray:
    if n_levels < 2:
        raise ValidationError("an r-grid needs at least the levels 0 and 1")
    return np.linspace(0.0, 1.0, n_levels)


@dataclass(frozen=True)
class Interval:
    """Closed real interval [lo, hi]."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (np.isfinite(self.lo) and np.isfinite(self.hi)):
            raise ValidationError("interval endpoints must be finite")
        if self.lo > self.hi:
            raise ValidationError(f"interval endpoints out of order: [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class TriangularFuzzy:
    """Triangular fuzzy number (left foot, peak, right foot) with exact cuts."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        if not (self.a <= self.b <= self.c):
            raise ValidationError(f"triangular feet/peak out of order: ({self.a}, {self.b}, {self.c})")

    def r_cut(self, r: float) -> Interval:
        if not 0.0 <= r <= 1.0:
            raise DomainError(f"membership level {r} outside [0, 1]")
        return Interval(self.a + (self.b - self.a) * r, self.c - (self.c - self.b) * r)

    def to_fuzzy(self, rs: np.ndarray | None = None) -> "FuzzyNumber":
        return make_triangular(self.a, self.b, self.c, rs=rs)


def _endpoint_table(rs, lowers, uppers):
    rs = np.asarray(rs, dtype=float)
    lowers = np.asarray(lowers, dtype=float)
    uppers = np.asarray(uppers, dtype=float)
    for name, arr in (("rs", rs), ("lowers", lowers), ("uppers", uppers)):
        if arr.ndim != 1 or not np.all(np.isfinite(arr)):
            raise ValidationError(f"{name} must be a finite 1-d array")
    if not (rs.size == lowers.size == uppers.size):
        raise ValidationError("rs, lowers and uppers must have equal length")
    if rs.size < 2 or np.any(np.diff(rs) <= 0.0):
        raise ValidationError("rs must be strictly increasing with >= 2 levels")
    if rs[0] != 0.0 or rs[-1] != 1.0:
        raise ValidationError("the r-grid must include the levels 0 and 1")
    return rs, lowers, uppers


@dataclass(frozen=True, eq=False)
class FuzzyNumber:
    """Fuzzy number tabulated as nested level cuts [lowers[k], uppers[k]] at rs[k]."""

    rs: np.ndarray
    lowers: np.ndarray
    uppers: np.ndarray

    def __post_init__(self):
        rs, lowers, uppers = _endpoint_table(self.rs, self.lowers, self.uppers)
        report = validate(rs, lowers, uppers, tol=_SHAPE_TOL * _scale_of(lowers, uppers))
        if not report.ok:
            v = report.violations[0]
            raise ValidationError(
                f"not a valid fuzzy number: {v.condition} violated at r={v.r} by {v.magnitude:g}"
            )
        object.__setattr__(self, "rs", rs)
        object.__setattr__(self, "lowers", lowers)
        object.__setattr__(self, "uppers", uppers)

    @property
    def support(self) -> Interval:
        return self.r_cut(0.0)

    @property
    def core(self) -> Interval:
        return self.r_cut(1.0)

    @property
    def is_crisp(self) -> bool:
        return bool(np.all(self.lowers == self.uppers))

    def r_cut(self, r: float) -> Interval:
        if not np.isscalar(r) or not 0.0 <= r <= 1.0:
            raise DomainError(f"membership level {r} outside [0, 1]")
        lo = float(np.interp(r, self.rs, self.lowers))
        hi = float(np.interp(r, self.rs, self.uppers))
        if hi < lo:
            # sub-tolerance rounding inversion collapses to a point
            lo = hi = 0.5 * (lo + hi)
        return Interval(lo, hi)

    def cuts_at(self, rs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Lower/upper endpoints interpolated at the given levels."""
        rs = np.asarray(rs, dtype=float)
        if np.any(rs < 0.0) or np.any(rs > 1.0):
            raise DomainError("membership levels outside [0, 1]")
        return np.interp(rs, self.rs, self.lowers), np.interp(rs, self.rs, self.uppers)

    def resample(self, rs: np.ndarray) -> "FuzzyNumber":
        rs = np.asarray(rs, dtype=float)
        if rs.size == self.rs.size and np.array_equal(rs, self.rs):
            return self
        lo, hi = self.cuts_at(rs)
        return FuzzyNumber(rs, lo, hi)

    def data_equal(self, other: "FuzzyNumber") -> bool:
        return (
            np.array_equal(self.rs, other.rs)
            and np.array_equal(self.lowers, other.lowers)
            and np.array_equal(self.uppers, other.uppers)
        )

    def __add__(self, other):
        if isinstance(other, FuzzyNumber):
            return add(self, other)
        return NotImplemented

    def __rmul__(self, lam):
        if np.isscalar(lam):
            return scale(float(lam), self)
        return NotImplemented

    def __repr__(self):
        s, c = self.support, self.core
        return (
            f"FuzzyNumber(levels={self.rs.size}, support=[{s.lo:g}, {s.hi:g}], "
            f"core=[{c.lo:g}, {c.hi:g}])"
        )


def _scale_of(*arrays) -> float:
    return max(1.0, *(float(np.max(np.abs(a))) if a.size else 0.0 for a in arrays))


# ---------------------------------------------------------------------------
# constructors


def make_triangular(a: float, b: float, c: float, rs: np.ndarray | None = None) -> FuzzyNumber:
    """Fuzzy number with cuts [a + (b-a) r, c - (c-b) r].

    Uses the convex-combination form so the r = 1 cut is exactly [b, b].
    """
    if not (a <= b <= c):
        raise ValidationError(f"triangular feet/peak out of order: ({a}, {b}, {c})")
    rs = default_r_grid() if rs is None else np.asarray(rs, dtype=float)
    lowers = a * (1.0 - rs) + b * rs
    uppers = c * (1.0 - rs) + b * rs
    return FuzzyNumber(rs, lowers, uppers)


def make_crisp(x: float, rs: np.ndarray | None = None) -> FuzzyNumber:
    """Real number embedded as a zero-width fuzzy number."""
    rs = default_r_grid() if rs is None else np.asarray(rs, dtype=float)
    vals = np.full(rs.shape, float(x))
    return FuzzyNumber(rs, vals, vals.copy())


# ---------------------------------------------------------------------------
# operations


def r_cut(A: FuzzyNumber, r: float) -> Interval:
    """Level cut of A at membership level r."""
    return A.r_cut(r)


def _common_grid(A: FuzzyNumber, B: FuzzyNumber):
    if A.rs.size == B.rs.size and np.array_equal(A.rs, B.rs):
        return A.rs, (A.lowers, A.uppers), (B.lowers, B.uppers)
    rs = np.union1d(A.rs, B.rs)
    return rs, A.cuts_at(rs), B.cuts_at(rs)


def add(A: FuzzyNumber, B: FuzzyNumber) -> FuzzyNumber:
    """Endpoint-wise sum of level cuts."""
    rs, (alo, ahi), (blo, bhi) = _common_grid(A, B)
    return FuzzyNumber(rs, alo + blo, ahi + bhi)


def scale(lam: float, A: FuzzyNumber) -> FuzzyNumber:
    """Scalar multiple of A; endpoints swap when the scalar is negative."""
    lam = float(lam)
    if lam >= 0.0:
        return FuzzyNumber(A.rs, lam * A.lowers, lam * A.uppers)
    return FuzzyNumber(A.rs, lam * A.uppers, lam * A.lowers)


def hausdorff_distance(A: FuzzyNumber, B: FuzzyNumber) -> float:
    """sup over the level grid of the larger endpoint deviation."""
    _, (alo, ahi), (blo, bhi) = _common_grid(A, B)
    return float(np.max(np.maximum(np.abs(alo - blo), np.abs(ahi - bhi))))


def hukuhara_diff(A: FuzzyNumber, B: FuzzyNumber) -> FuzzyNumber:
    """The C with B + C = A, when it exists.

    C has cuts [A_lo - B_lo, A_hi - B_hi]. Existence requires the cut of A
    to be at least as wide as the cut of B at every level (else lower would
    exceed upper) and the resulting endpoints to stay monotone in r. A
    violation beyond rounding scale raises
    :class:`HukuharaNonexistenceError` carrying the smallest failing level.
    """
    rs, (alo, ahi), (blo, bhi) = _common_grid(A, B)
    clo = alo - blo
    chi = ahi - bhi
    # ties (equal widths, crisp stretches) wobble by an ulp under subtraction
    tol = 1e-12 * _scale_of(alo, ahi, blo, bhi)
    bad = clo - chi > tol
    if np.any(bad):
        r = float(rs[np.argmax(bad)])
        raise HukuharaNonexistenceError(
            f"difference not a fuzzy number: cut of the subtrahend wider at r={r}", failing_r=r
        )
    bad_lo = np.diff(clo) < -tol
    bad_hi = np.diff(chi) > tol
    if np.any(bad_lo) or np.any(bad_hi):
        i_lo = int(np.argmax(bad_lo)) + 1 if np.any(bad_lo) else rs.size
        i_hi = int(np.argmax(bad_hi)) + 1 if np.any(bad_hi) else rs.size
        r = float(rs[min(i_lo, i_hi)])
        raise HukuharaNonexistenceError(
            f"difference endpoints lose monotonicity at r={r}", failing_r=r
        )
    return FuzzyNumber(rs, clo, chi)


# ---------------------------------------------------------------------------
# diagnostics


@dataclass(frozen=True)
class Violation:
    condition: str
    index: int
    r: float
    magnitude: float


@dataclass(frozen=True)
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def conditions(self) -> set[str]:
        return {v.condition for v in self.violations}


def validate(number_or_rs, lowers=None, uppers=None, tol: float = 0.0) -> ValidationReport:
    """Check the parametric-form conditions of an endpoint table.

    Accepts either a :class:`FuzzyNumber` or raw ``(rs, lowers, uppers)``
    arrays (the raw form is what lets invalid hand-built tables and solver
    output be diagnosed without constructing a number). Reported
    conditions: ``lower_monotone``, ``upper_monotone``, ``lower_le_upper``
    and ``nested``; defects up to ``tol`` are ignored.
    """
    if isinstance(number_or_rs, FuzzyNumber):
        rs, lo, hi = number_or_rs.rs, number_or_rs.lowers, number_or_rs.uppers
    else:
        rs, lo, hi = _endpoint_table(number_or_rs, lowers, uppers)

    violations: list[Violation] = []

    dlo = np.diff(lo)
    for i in np.flatnonzero(dlo < -tol):
        violations.append(Violation("lower_monotone", int(i + 1), float(rs[i + 1]), float(-dlo[i])))
    dhi = np.diff(hi)
    for i in np.flatnonzero(dhi > tol):
        violations.append(Violation("upper_monotone", int(i + 1), float(rs[i + 1]), float(dhi[i])))
    gap = lo - hi
    for i in np.flatnonzero(gap > tol):
        violations.append(Violation("lower_le_upper", int(i), float(rs[i]), float(gap[i])))
    # nestedness of consecutive cuts (implied by the monotone conditions,
    # reported separately to localize the defect)
    out_lo = lo[:-1] - lo[1:]
    out_hi = hi[1:] - hi[:-1]
    for i in np.flatnonzero(np.maximum(out_lo, out_hi) > tol):
        violations.append(
            Violation("nested", int(i + 1), float(rs[i + 1]), float(max(out_lo[i], out_hi[i])))
        )
    violations.sort(key=lambda v: (v.index, v.condition))
    return ValidationReport(violations)


# ---------------------------------------------------------------------------
# i/o


def fuzzy_from_json(spec) -> FuzzyNumber:
    """Build a fuzzy number from a JSON object or string.

    Accepted kinds: ``{"kind": "triangular", "a":, "b":, "c":}`` and
    ``{"kind": "table", "rs": [...], "lowers": [...], "uppers": [...]}``.
    """
    if isinstance(spec, str):
        spec = json.loads(spec)
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ValidationError("fuzzy spec must be an object with a 'kind' field")
    kind = spec["kind"]
    if kind == "triangular":
        try:
            return make_triangular(float(spec["a"]), float(spec["b"]), float(spec["c"]))
        except KeyError as exc:
            raise ValidationError(f"triangular spec missing field {exc}") from exc
    if kind == "table":
        try:
            return FuzzyNumber(
                np.asarray(spec["rs"], dtype=float),
                np.asarray(spec["lowers"], dtype=float),
                np.asarray(spec["uppers"], dtype=float),
            )
        except KeyError as exc:
            raise ValidationError(f"table spec missing field {exc}") from exc
    raise ValidationError(f"unknown fuzzy kind {kind!r}")


def fuzzy_to_json(A: FuzzyNumber) -> dict:
    return {
        "kind": "table",
        "rs": A.rs.tolist(),
        "lowers": A.lowers.tolist(),
        "uppers": A.uppers.tolist(),
    }

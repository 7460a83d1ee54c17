"""Command-line surface: curve/staircase export, dimension estimates,
calculus on a curve, solving and verifying the built-in problems.

Exit status: 0 success, 1 validation error, 2 numeric failure,
3 verification-tolerance failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .errors import FFCalcError, NumericError, ValidationError
from .fractal_calc import f_derivative, f_integral
from .fractal_curve import (
    J_at,
    build_staircase,
    gamma_dimension,
    generate_koch,
    generate_segment,
    staircase_to_csv,
)
from .ffde import (
    ode_residual_max,
    solution_to_csv,
    solve_first_order,
    solve_second_order_bvp,
    verify_against_closed_form,
)
from .problems import (
    example1_case1_band,
    example1_case2_band,
    example2_crisp_closed_form,
    problem_from_json,
    example1_problem,
    example2_bvp,
)


class _UsageError(ValidationError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; remap onto the
    # validation-error status by raising instead
    def error(self, message):
        raise _UsageError(message)


def _apply_thread_cap():
    """Honor FFC_THREADS as an upper bound on internal parallelism.

    All computations are deterministic regardless of the cap; the variable
    is validated and forwarded to the usual threadpool knobs.
    """
    raw = os.environ.get("FFC_THREADS")
    if raw is None:
        return
    try:
        cap = int(raw)
    except ValueError:
        raise ValidationError(f"FFC_THREADS must be a positive integer, got {raw!r}") from None
    if cap < 1:
        raise ValidationError(f"FFC_THREADS must be a positive integer, got {raw!r}")
    for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ.setdefault(var, str(cap))


def _base_curve(name: str, level: int):
    if name == "koch":
        return generate_koch(level)
    if name == "segment":
        return generate_segment(level=level)
    raise ValidationError(f"unknown curve {name!r}")


_FUNCTIONS = {
    "one": lambda table: (lambda u: np.ones_like(np.asarray(u, dtype=float))),
    "J": lambda table: (lambda u: J_at(table, u)),
    "J2": lambda table: (lambda u: J_at(table, u) ** 2),
    "expJ": lambda table: (lambda u: np.exp(J_at(table, u))),
}


def _load_spec(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _problem_from_args(args):
    if args.spec:
        spec = _load_spec(args.spec)
        if args.case and isinstance(spec, dict):
            spec.setdefault("case", args.case)
        return problem_from_json(spec)
    if args.builtin == "example1":
        return example1_problem(
            case=args.case or "I", r_points=args.r_points, j_steps=args.j_steps
        )
    if args.builtin == "example2":
        return example2_bvp(steps=args.j_steps)
    raise ValidationError("provide either --builtin or --spec")


def _cmd_curve(args) -> int:
    curve = _base_curve(args.curve, args.level)
    if curve.ndim <= 3:
        names = ["x", "y", "z"][: curve.ndim]
    else:
        names = [f"x{k}" for k in range(curve.ndim)]
    lines = ["u," + ",".join(names)]
    for u, pt in zip(curve.params, curve.points):
        lines.append(",".join(f"{v:.17g}" for v in (u, *pt)))
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"{args.curve} level {curve.level}: {curve.params.size} vertices -> {args.out}")
    return 0


def _cmd_dim(args) -> int:
    base = _base_curve(args.curve, 0)
    est = gamma_dimension(base, tol=args.tol, max_level=args.level)
    print(f"gamma-dimension estimate: {est:.6g} (curve={args.curve}, levels<={args.level})")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump({"curve": args.curve, "max_level": args.level, "estimate": est}, fh)
            fh.write("\n")
    return 0


def _cmd_staircase(args) -> int:
    curve = _base_curve(args.curve, args.level)
    table = build_staircase(curve, alpha=args.alpha, p0=curve.a0)
    staircase_to_csv(table, args.out)
    print(f"staircase: {table.us.size} rows, J range [{table.Js[0]:.12g}, {table.Js[-1]:.12g}] -> {args.out}")
    return 0


def _cmd_integrate(args) -> int:
    curve = _base_curve(args.curve, args.level)
    table = build_staircase(curve, alpha=args.alpha, p0=curve.a0)
    f = _FUNCTIONS[args.fn](table)
    result = f_integral(f, curve, table)
    print(
        f"integral of {args.fn} over the whole curve: {result.value:.12g} "
        f"(bracket [{result.lower_sum:.12g}, {result.upper_sum:.12g}], "
        f"converged={result.converged})"
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(
                {
                    "fn": args.fn,
                    "value": result.value,
                    "lower_sum": result.lower_sum,
                    "upper_sum": result.upper_sum,
                    "converged": result.converged,
                },
                fh,
            )
            fh.write("\n")
    return 0


def _cmd_differentiate(args) -> int:
    curve = _base_curve(args.curve, args.level)
    table = build_staircase(curve, alpha=args.alpha, p0=curve.a0)
    f = _FUNCTIONS[args.fn](table)
    value = f_derivative(f, table, args.at)
    print(f"derivative of {args.fn} at u={args.at:.12g}: {value:.12g}")
    return 0


def _cmd_solve(args) -> int:
    problem = _problem_from_args(args)
    if hasattr(problem, "boundary_start"):  # second-order problem
        sol2 = solve_second_order_bvp(problem)
        sol = sol2.to_solution(np.linspace(0.0, 1.0, args.r_points))
        solution_to_csv(sol, args.out)
        print(
            f"second-order BVP: crisp boundaries ({sol2.crisp[0]:.12g}, {sol2.crisp[-1]:.12g}), "
            f"{sol.us.size} J-points x {sol.rs.size} kappa-levels -> {args.out}"
        )
        return 0
    sol = solve_first_order(problem)
    solution_to_csv(sol, args.out)
    info = sol.summary()
    print(
        f"case {info['case']}: {info['u_points']} u-points x {info['r_points']} r-levels, "
        f"valid rows {info['valid_rows']}, validity horizon u={info['validity_horizon']:.12g} "
        f"-> {args.out}"
    )
    return 0


def _verify_example1(args) -> tuple[bool, dict]:
    case = args.case or "I"
    problem = example1_problem(case=case, r_points=args.r_points, j_steps=args.j_steps)
    sol = solve_first_order(problem)
    band = example1_case1_band if case == "I" else example1_case2_band
    report = verify_against_closed_form(
        sol, band, tol=args.tol, restrict_to_valid=(case == "II")
    )
    out = report.to_dict()
    out["builtin"] = "example1"
    out["case"] = case
    if case == "II":
        out["validity_horizon"] = sol.validity_horizon
    return report.passed, out


def _verify_example2(args) -> tuple[bool, dict]:
    sol2 = solve_second_order_bvp(example2_bvp(steps=args.j_steps))
    crisp_err = float(np.max(np.abs(sol2.crisp - example2_crisp_closed_form(sol2.js))))
    boundary_err = max(abs(sol2.crisp[0] - 3.0), abs(sol2.crisp[-1] - 2.0))
    residual = ode_residual_max(sol2.js, sol2.crisp, -4.0, 4.0, sol2.problem.forcing)
    q_err = max(
        float(np.max(np.abs(sol2.q_at(0.0) - [1.0, 0.0]))),
        float(np.max(np.abs(sol2.q_at(1.0) - [0.0, 1.0]))),
    )
    lo1, up1 = sol2.kappa_band(1.0)
    collapse_exact = bool(np.all(lo1 == sol2.crisp) and np.all(up1 == sol2.crisp))
    nested = True
    prev = sol2.kappa_band(0.0)
    for kappa in (0.25, 0.5, 0.75, 1.0):
        cur = sol2.kappa_band(kappa)
        nested &= bool(np.all(cur[0] >= prev[0]) and np.all(cur[1] <= prev[1]))
        prev = cur
    ok = (
        crisp_err <= args.tol
        and boundary_err <= 1e-9
        and residual <= 10.0 * args.tol
        and q_err <= 1e-10
        and collapse_exact
        and nested
    )
    return ok, {
        "builtin": "example2",
        "crisp_max_error": crisp_err,
        "boundary_error": boundary_err,
        "ode_residual": residual,
        "q_identity_error": q_err,
        "kappa1_collapses": collapse_exact,
        "kappa_bands_nested": nested,
        "tol": args.tol,
        "passed": ok,
    }


def _cmd_verify(args) -> int:
    if args.spec:
        raise ValidationError("verify needs a builtin with a known closed form (--builtin)")
    if args.builtin == "example1":
        ok, report = _verify_example1(args)
    elif args.builtin == "example2":
        ok, report = _verify_example2(args)
    else:
        raise ValidationError("provide --builtin example1 or --builtin example2")
    for key, val in report.items():
        print(f"{key}: {val}")
    print("VERIFY PASS" if ok else "VERIFY FAIL")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(report, fh)
            fh.write("\n")
    return 0 if ok else 3


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ffcalc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_curve_flags(p, default_level):
        p.add_argument("--curve", choices=("koch", "segment"), default="koch")
        p.add_argument("--level", type=int, default=default_level)
        p.add_argument("--alpha", type=float, default=1.0)

    p = sub.add_parser("curve", help="generate a curve and export its vertices")
    add_curve_flags(p, 4)
    p.add_argument("--out", default="curve.csv")

    p = sub.add_parser("dim", help="estimate the gamma-dimension")
    add_curve_flags(p, 10)
    p.add_argument("--tol", type=float, default=0.01)
    p.add_argument("--out", default=None)

    p = sub.add_parser("staircase", help="tabulate the staircase function as CSV")
    add_curve_flags(p, 6)
    p.add_argument("--out", default="staircase.csv")

    p = sub.add_parser("integrate", help="integrate a named function of J over the curve")
    add_curve_flags(p, 8)
    p.add_argument("--fn", choices=sorted(_FUNCTIONS), default="J")
    p.add_argument("--out", default=None)

    p = sub.add_parser("differentiate", help="differentiate a named function of J")
    add_curve_flags(p, 8)
    p.add_argument("--fn", choices=sorted(_FUNCTIONS), default="J")
    p.add_argument("--at", type=float, default=0.5)

    for name in ("solve", "verify"):
        p = sub.add_parser(name, help=f"{name} a built-in or JSON-spec problem")
        p.add_argument("--builtin", choices=("example1", "example2"), default=None)
        p.add_argument("--spec", default=None)
        p.add_argument("--case", choices=("I", "II"), default=None)
        p.add_argument("--r-points", type=int, default=101)
        p.add_argument("--j-steps", type=int, default=256)
        p.add_argument("--tol", type=float, default=1e-6)
        if name == "solve":
            p.add_argument("--out", default="solution.csv")
        else:
            p.add_argument("--out", default=None)

    return parser


_COMMANDS = {
    "curve": _cmd_curve,
    "dim": _cmd_dim,
    "staircase": _cmd_staircase,
    "integrate": _cmd_integrate,
    "differentiate": _cmd_differentiate,
    "solve": _cmd_solve,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _apply_thread_cap()
        return _COMMANDS[args.command](args)
    except json.JSONDecodeError as exc:
        print(
            f"error: malformed JSON spec at line {exc.lineno} column {exc.colno}: {exc.msg}",
            file=sys.stderr,
        )
        return 1
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 2
    except FFCalcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())

"""Command line front end.

Five subcommands: aggregate (show the single-row surrogate), solve (run the
exact table and certify), verify (run the guarantee checks and compare the
solver against brute force), bound (certify a vertex and its product bound),
oracle (dump feasible sets, vertices, witnesses).  Every run writes one JSON
report to stdout with stable key order and every number as a decimal string,
so identical inputs give byte-identical reports; timing and a one-line
summary go to stderr.

Exit codes: 0 success, 1 infeasible, 2 unbounded, 3 budget or cap exceeded,
4 input error, 5 a guarantee check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Any, Sequence

from .aggregation import aggregate, aggregation_vector, vertex_lower_bound
from .errors import (
    CapExceeded,
    IterationLimit,
    KnapaggError,
    ParseError,
    UnboundedProblem,
    ValidationError,
)
from .instance import (
    IPInstance,
    canonicalize_minimize,
    evaluate,
    instance_digest,
    parse_instance,
    preprocess_zero_columns,
)
from .knapsack import (
    BUDGET_EXCEEDED,
    INFEASIBLE,
    OPTIMAL,
    SolverBudget,
    solve_original,
)
from .oracle import (
    DEFAULT_POINT_CAP,
    PointSet,
    brute_force_optimum,
    check_convex_combination,
    check_rhs_lower_bound,
    check_rhs_vertex,
    check_vertex_preservation,
    enumerate_feasible,
    vertex_set,
)

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_UNBOUNDED = 2
EXIT_BUDGET = 3
EXIT_INPUT = 4
EXIT_FALSIFIED = 5

_STATUS_EXIT = {
    "ok": EXIT_OK,
    "optimal": EXIT_OK,
    "infeasible": EXIT_INFEASIBLE,
    "unbounded": EXIT_UNBOUNDED,
    "budget_exceeded": EXIT_BUDGET,
    "cap_exceeded": EXIT_BUDGET,
    "input_error": EXIT_INPUT,
    "falsified": EXIT_FALSIFIED,
}


class UsageError(KnapaggError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _jsonable(value: Any) -> Any:
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _point_key(p: Sequence[int]) -> str:
    return ",".join(str(v) for v in p)


def _set_block(pts: PointSet, pivot_cap: int) -> dict:
    report = vertex_set(pts, pivot_cap)
    witnesses = {
        _point_key(p): [
            {"point_index": idx, "weight": w} for idx, w in wit
        ]
        for p, wit in sorted(report.witnesses.items())
    }
    return {
        "points": list(report.points.points),
        "vertices": list(report.vertices),
        "witnesses": witnesses,
    }


def _split_columns(inst: IPInstance) -> tuple[list[int], list[int]]:
    kept = [j for j in range(inst.n) if any(row[j] > 0 for row in inst.A)]
    dropped = [j for j in range(inst.n) if j not in kept]
    return kept, dropped


def _cmd_aggregate(inst: IPInstance, args: argparse.Namespace) -> tuple[dict, str]:
    red = preprocess_zero_columns(canonicalize_minimize(inst))
    f = aggregation_vector(inst.b)
    row, rhs = aggregate(red)
    product = 1
    for bi in inst.b:
        product *= bi + 1
    result = {
        "aggregating_vector": list(f),
        "aggregated_row": list(row),
        "aggregated_rhs": rhs,
        "rhs_plus_one_product": product,
        "rhs_bit_length": rhs.bit_length(),
        "columns_kept": list(red.column_map),
        "columns_dropped": [
            {"index": j, "reason": why} for j, why in red.dropped
        ],
    }
    return result, "ok"


def _cmd_solve(inst: IPInstance, args: argparse.Namespace) -> tuple[dict, str]:
    budget = SolverBudget(max_rhs=args.budget_rhs, max_cells=args.budget_cells)
    sol = solve_original(inst, budget)
    kp = sol.knapsack
    assert kp is not None
    result = {
        "status": sol.status,
        "x": list(sol.x) if sol.x is not None else None,
        "objective": sol.objective,
        "residual": list(sol.residual) if sol.residual is not None else None,
        "detail": sol.detail,
        "surrogate": {
            "weights": list(kp.weights),
            "rhs": kp.rhs,
            "costs": list(kp.costs),
            "objective_upper_bound": kp.upper_bound,
            "cost_shift": kp.shift,
            "penalty": kp.penalty,
            "columns_kept": list(sol.columns) if sol.columns is not None else None,
        },
    }
    status = {OPTIMAL: "ok", INFEASIBLE: "infeasible", BUDGET_EXCEEDED: "budget_exceeded"}[
        sol.status
    ]
    return result, status


def _cmd_verify(inst: IPInstance, args: argparse.Namespace) -> tuple[dict, str]:
    cap = args.cap
    core = canonicalize_minimize(inst)
    red = preprocess_zero_columns(core)
    checks: dict[str, Any] = {}
    falsifications: list[dict] = []

    checks["rhs_vertex"] = check_rhs_vertex(inst.b, cap)
    if not checks["rhs_vertex"]:
        falsifications.append({"check": "rhs_vertex", "rhs": list(inst.b)})

    preserved = check_vertex_preservation(red.inner, cap)
    checks["vertex_preservation"] = {
        "holds": preserved.holds,
        "vacuous": preserved.vacuous,
    }
    if not preserved.holds:
        falsifications.append(
            {"check": "vertex_preservation", "data": preserved.counterexample}
        )

    lower = check_rhs_lower_bound(red.inner, cap)
    checks["rhs_lower_bound"] = {"holds": lower.holds, "vacuous": lower.vacuous}
    if not lower.holds:
        falsifications.append(
            {"check": "rhs_lower_bound", "data": lower.counterexample}
        )

    sol = solve_original(core)
    oracle = brute_force_optimum(red.inner, cap)
    agree = (
        sol.status == oracle.status == "optimal" and sol.objective == oracle.value
    ) or (sol.status == oracle.status == "infeasible")
    checks["solver_matches_oracle"] = {
        "holds": agree,
        "solver_status": sol.status,
        "solver_objective": sol.objective,
        "oracle_status": oracle.status,
        "oracle_objective": oracle.value,
    }
    if not agree:
        falsifications.append(
            {
                "check": "solver_matches_oracle",
                "data": checks["solver_matches_oracle"],
            }
        )

    result = {"checks": checks, "falsifications": falsifications}
    return result, ("falsified" if falsifications else "ok")


def _cmd_bound(inst: IPInstance, args: argparse.Namespace) -> tuple[dict, str]:
    try:
        point = tuple(int(v) for v in args.vertex.split(","))
    except ValueError as exc:
        raise UsageError(f"--vertex must be a comma-separated integer list: {exc}")
    ev = evaluate(inst, point)  # raises on bad dimension or negative entries
    f = aggregation_vector(inst.b)
    a0 = sum(fi * bi for fi, bi in zip(f, inst.b))
    base = {
        "point": list(point),
        "aggregated_rhs": a0,
    }
    if not ev.feasible:
        base["residual"] = list(ev.residual)
        base["is_vertex"] = False
        base["detail"] = "point does not satisfy Ax = b"
        return base, "input_error"
    kept, dropped = _split_columns(inst)
    for j in dropped:
        if point[j] > 0:
            up = list(point)
            down = list(point)
            up[j] += 1
            down[j] -= 1
            base["is_vertex"] = False
            base["witness"] = {
                "combination": [
                    {"point": up, "weight": Fraction(1, 2)},
                    {"point": down, "weight": Fraction(1, 2)},
                ]
            }
            base["detail"] = f"free column {j} is positive; the point is a midpoint"
            return base, "input_error"
    sub_A = tuple(tuple(row[j] for j in kept) for row in inst.A)
    sub_point = tuple(point[j] for j in kept)
    pts = enumerate_feasible(sub_A, inst.b, args.cap)
    others = [q for q in pts.points if q != sub_point]
    lam = check_convex_combination(sub_point, others)
    if lam is not None:
        base["is_vertex"] = False
        base["witness"] = {
            "combination": [
                {"point": list(others[t]), "weight": lam[t]}
                for t in range(len(others))
                if lam[t]
            ],
            "coordinates": "kept columns only",
        }
        base["detail"] = "point is a convex combination of other feasible points"
        return base, "input_error"
    bound = vertex_lower_bound(point)
    base["is_vertex"] = True
    base["product_bound"] = bound
    base["slack"] = a0 - bound
    return base, "ok"


def _cmd_oracle(inst: IPInstance, args: argparse.Namespace) -> tuple[dict, str]:
    kept, _ = _split_columns(inst)
    sub_A = tuple(tuple(row[j] for j in kept) for row in inst.A)
    pts = enumerate_feasible(sub_A, inst.b, args.cap)
    f = aggregation_vector(inst.b)
    a = tuple(sum(f[i] * sub_A[i][j] for i in range(inst.m)) for j in range(len(kept)))
    a0 = sum(fi * bi for fi, bi in zip(f, inst.b))
    agg = enumerate_feasible((a,), (a0,), args.cap)
    result = {
        "coordinates": "kept columns only",
        "columns_kept": kept,
        "original": _set_block(pts, args.pivot_cap),
        "aggregated": {
            "row": list(a),
            "rhs": a0,
            **_set_block(agg, args.pivot_cap),
        },
    }
    return result, "ok"


_HANDLERS = {
    "aggregate": _cmd_aggregate,
    "solve": _cmd_solve,
    "verify": _cmd_verify,
    "bound": _cmd_bound,
    "oracle": _cmd_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="knapagg", description=__doc__)
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("aggregate", help="show the single-row surrogate")
    p.add_argument("instance", help="instance JSON file")

    p = sub.add_parser("solve", help="solve exactly through the surrogate")
    p.add_argument("instance")
    p.add_argument("--budget-rhs", type=int, default=SolverBudget().max_rhs)
    p.add_argument("--budget-cells", type=int, default=SolverBudget().max_cells)

    p = sub.add_parser("verify", help="run the guarantee checks")
    p.add_argument("instance")
    p.add_argument("--cap", type=int, default=DEFAULT_POINT_CAP)

    p = sub.add_parser("bound", help="certify a vertex and its product bound")
    p.add_argument("instance")
    p.add_argument("--vertex", required=True, help="comma-separated coordinates")
    p.add_argument("--cap", type=int, default=DEFAULT_POINT_CAP)

    p = sub.add_parser("oracle", help="dump feasible sets, vertices, witnesses")
    p.add_argument("instance")
    p.add_argument("--cap", type=int, default=DEFAULT_POINT_CAP)
    p.add_argument("--pivot-cap", type=int, default=100_000)

    return parser


def _emit(report: dict, status: str, started: float) -> int:
    report["status"] = status
    print(json.dumps(_jsonable(report), indent=2, sort_keys=True))
    elapsed = time.monotonic() - started
    print(
        f"{report.get('command', '?')}: {status} ({elapsed:.3f}s)",
        file=sys.stderr,
    )
    return _STATUS_EXIT[status]


def main(argv: Sequence[str] | None = None) -> int:
    started = time.monotonic()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report: dict[str, Any] = {"command": args.cmd}
    report["settings"] = {
        k: v for k, v in sorted(vars(args).items()) if k not in ("cmd", "instance")
    }
    try:
        with open(args.instance, "rb") as fh:
            text = fh.read()
    except OSError as exc:
        report["error"] = {"type": "io", "message": str(exc)}
        return _emit(report, "input_error", started)
    try:
        inst = parse_instance(text)
    except (ParseError, ValidationError) as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        return _emit(report, "input_error", started)
    report["instance"] = {
        "digest": instance_digest(inst),
        "rows": inst.m,
        "cols": inst.n,
        "sense": inst.sense,
    }
    try:
        result, status = _HANDLERS[args.cmd](inst, args)
    except UnboundedProblem as exc:
        report["error"] = {"type": "UnboundedProblem", "message": str(exc)}
        return _emit(report, "unbounded", started)
    except (CapExceeded, IterationLimit) as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        return _emit(report, "cap_exceeded", started)
    except (ValidationError, UsageError) as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        return _emit(report, "input_error", started)
    report["result"] = result
    return _emit(report, status, started)


def console() -> None:
    sys.exit(main())

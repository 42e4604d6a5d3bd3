"""Exact dynamic program for the aggregated equality knapsack.

Minimizes a nonnegative cost over {x >= 0 integer : weights . x = rhs} by
a value-indexed table: cell v holds the cheapest cost of hitting value v
exactly, or None when v is unreachable.  Unbounded variables are fine
because weights are strictly positive, so the table is finite.  Budget caps
refuse tables that would not fit before allocating anything.
"""

from __future__ import annotations

from dataclasses import dataclass

from .aggregation import KnapsackInstance, build_knapsack
from .errors import ValidationError
from .instance import IPInstance, canonicalize_minimize, evaluate, restrict_zero_rows

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
BUDGET_EXCEEDED = "budget_exceeded"


@dataclass(frozen=True)
class SolverBudget:
    """Caps on table size: rhs itself and rows-times-rhs cell count."""

    max_rhs: int = 10_000_000
    max_cells: int = 1_000_000_000

    def __post_init__(self) -> None:
        if self.max_rhs <= 0 or self.max_cells <= 0:
            raise ValidationError("budget caps must be positive")


@dataclass(frozen=True)
class KnapsackSolution:
    x: tuple[int, ...] | None
    value: int | None
    status: str
    detail: str | None = None


@dataclass(frozen=True)
class Solution:
    """Outcome of the full reduce-and-solve pipeline, in original coordinates.

    columns lists, in original indices, the variables that reached the
    surrogate after preprocessing; everything dropped on the way is pinned
    to zero in x.
    """

    x: tuple[int, ...] | None
    objective: int | None
    status: str
    residual: tuple[int, ...] | None = None
    detail: str | None = None
    knapsack: KnapsackInstance | None = None
    columns: tuple[int, ...] | None = None


def solve_knapsack(
    kp: KnapsackInstance, budget: SolverBudget | None = None
) -> KnapsackSolution:
    """Exact minimum over the aggregated equality, or infeasible/over-budget.

    Ties between columns are broken toward the smallest index at every value,
    and reconstruction follows those recorded choices, so identical inputs
    always return the identical point.
    """
    if budget is None:
        budget = SolverBudget()
    n = len(kp.weights)
    if kp.rhs > budget.max_rhs:
        return KnapsackSolution(
            None,
            None,
            BUDGET_EXCEEDED,
            detail=(
                f"aggregated rhs {kp.rhs} = prod(b_i + 1) - 1 exceeds "
                f"max_rhs {budget.max_rhs}"
            ),
        )
    if n * kp.rhs > budget.max_cells:
        return KnapsackSolution(
            None,
            None,
            BUDGET_EXCEEDED,
            detail=(
                f"table of {n} x {kp.rhs} cells exceeds max_cells "
                f"{budget.max_cells} (aggregated rhs is prod(b_i + 1) - 1)"
            ),
        )
    best: list[int | None] = [None] * (kp.rhs + 1)
    choice: list[int] = [-1] * (kp.rhs + 1)
    best[0] = 0
    for v in range(1, kp.rhs + 1):
        cur: int | None = None
        pick = -1
        for j in range(n):
            w = kp.weights[j]
            if w > v:
                continue
            prev = best[v - w]
            if prev is None:
                continue
            cand = prev + kp.costs[j]
            if cur is None or cand < cur:
                cur = cand
                pick = j
        best[v] = cur
        choice[v] = pick
    if best[kp.rhs] is None:
        return KnapsackSolution(
            None, None, INFEASIBLE, detail="no nonnegative integer combination hits rhs"
        )
    x = [0] * n
    v = kp.rhs
    while v > 0:
        j = choice[v]
        x[j] += 1
        v -= kp.weights[j]
    return KnapsackSolution(tuple(x), best[kp.rhs], OPTIMAL)


def solve_original(
    inst: IPInstance, budget: SolverBudget | None = None
) -> Solution:
    """Reduce, solve the surrogate, and certify the answer on the original.

    Pipeline: canonicalize sense, drop zero right-hand-side rows together
    with the variables they pin (a zero entry would make two aggregating
    weights coincide, letting the surrogate shuffle mass between rows
    undetected), drop zero columns (UnboundedProblem surfaces here),
    aggregate and penalize, run the exact table, lift the minimizer back,
    and accept it only if it satisfies Ax = b.  With those reductions in
    place the penalty margin guarantees the surrogate minimizer lands on a
    feasible point whenever one exists, so a minimizer that misses b
    certifies the original program infeasible; its residual is reported
    for diagnosis.
    """
    core = canonicalize_minimize(inst)
    rows = restrict_zero_rows(core)
    kp = build_knapsack(rows.inner)
    columns = tuple(rows.column_map[j] for j in kp.column_map)
    sol = solve_knapsack(kp, budget)
    if sol.status == BUDGET_EXCEEDED:
        return Solution(
            None, None, BUDGET_EXCEEDED, detail=sol.detail, knapsack=kp, columns=columns
        )
    if sol.status == INFEASIBLE:
        return Solution(
            None,
            None,
            INFEASIBLE,
            detail="aggregated knapsack has no solution",
            knapsack=kp,
            columns=columns,
        )
    assert sol.x is not None
    lifted = rows.lift(kp.reduced.lift(sol.x))
    ev = evaluate(core, lifted)
    if not ev.feasible:
        return Solution(
            None,
            None,
            INFEASIBLE,
            residual=ev.residual,
            detail=(
                "surrogate minimizer violates the original constraints, "
                "so the original program has no feasible point"
            ),
            knapsack=kp,
            columns=columns,
        )
    objective = sum(inst.c[j] * lifted[j] for j in range(inst.n))
    return Solution(lifted, objective, OPTIMAL, knapsack=kp, columns=columns)

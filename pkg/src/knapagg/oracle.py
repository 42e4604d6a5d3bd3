"""Ground-truth machinery, exact end to end.

Everything here works over Python ints and fractions.Fraction: feasible-set
enumeration with a hard point cap, convex-hull membership by a phase-1
simplex with Bland's rule, vertex extraction with rational witnesses, brute
force optima, and executable forms of the guarantees the aggregation is
supposed to deliver.  These routines are deliberately independent of the
dynamic-programming solver so the two can check each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .aggregation import aggregation_vector, vertex_lower_bound
from .errors import CapExceeded, DimensionMismatch, IterationLimit, ValidationError
from .instance import IPInstance

Point = tuple[int, ...]

DEFAULT_POINT_CAP = 1_000_000
DEFAULT_PIVOT_CAP = 100_000

Witness = tuple[tuple[int, Fraction], ...]


@dataclass(frozen=True)
class PointSet:
    """Distinct integer points of one dimension, in a fixed order."""

    dim: int
    points: tuple[Point, ...]

    def __post_init__(self) -> None:
        seen = set()
        for p in self.points:
            if len(p) != self.dim:
                raise DimensionMismatch("point dimension does not match the set")
            if p in seen:
                raise ValidationError("points must be distinct")
            seen.add(p)

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class VertexReport:
    """Vertices of conv(points) plus a rational certificate per non-vertex.

    witnesses[p] lists (index into points, weight) pairs with positive
    weights summing to one whose combination equals p; every cited index
    refers to a point different from p.
    """

    points: PointSet
    vertices: tuple[Point, ...]
    witnesses: dict[Point, Witness] = field(default_factory=dict)


@dataclass(frozen=True)
class BruteForceResult:
    status: str
    value: int | None
    argmin: tuple[Point, ...]


@dataclass(frozen=True)
class CheckOutcome:
    """Result of one guarantee check.

    vacuous marks the case where the feasible set is empty and the claim
    holds with nothing to test; counterexample carries the offending data
    when holds is False.
    """

    holds: bool
    vacuous: bool = False
    counterexample: dict | None = None


def enumerate_feasible(
    A: Sequence[Sequence[int]],
    b: Sequence[int],
    cap: int = DEFAULT_POINT_CAP,
    var_bound: int | None = None,
) -> PointSet:
    """All nonnegative integer solutions of Ax = b, lexicographically sorted.

    Columns with a positive entry get the natural bound min(b_i // A_ij);
    all-zero columns have no natural bound and need var_bound, which caps
    only those variables (the enumeration is then truncated to that box).
    Raises CapExceeded as soon as more than cap points have been found;
    nothing partial is returned.

    The search assigns variables in ascending order of their bound, so the
    widest-ranging variable comes last where a divisibility check replaces
    the scan, and prunes any branch whose remaining columns cannot touch a
    row with residual left.
    """
    m = len(A)
    if m == 0:
        raise ValidationError("at least one constraint row is required")
    n = len(A[0])
    for row in A:
        if len(row) != n:
            raise ValidationError("rows must all have the same length")
        if any(v < 0 for v in row):
            raise ValidationError("matrix entries must be nonnegative")
    if any(v < 0 for v in b):
        raise ValidationError("right-hand side entries must be nonnegative")
    if len(b) != m:
        raise DimensionMismatch("right-hand side length does not match the rows")
    if cap <= 0:
        raise ValidationError("cap must be positive")

    if n == 0:
        pts = ((),) if all(v == 0 for v in b) else ()
        return PointSet(0, pts)

    cols = [tuple(A[i][j] for i in range(m)) for j in range(n)]
    bounds: list[int] = []
    for j, col in enumerate(cols):
        if any(v > 0 for v in col):
            bounds.append(min(b[i] // col[i] for i in range(m) if col[i] > 0))
        elif var_bound is not None:
            bounds.append(var_bound)
        else:
            raise ValidationError(
                f"column {j} is identically zero; pass var_bound to enumerate"
            )
    order = sorted(range(n), key=lambda j: (bounds[j], j))

    # live[d][i]: some column at depth >= d touches row i
    live = [[False] * m for _ in range(n + 1)]
    for d in range(n - 1, -1, -1):
        col = cols[order[d]]
        for i in range(m):
            live[d][i] = live[d + 1][i] or col[i] > 0

    found: list[Point] = []
    x = [0] * n
    resid = list(b)

    def emit() -> None:
        if len(found) >= cap:
            raise CapExceeded(f"more than {cap} feasible points")
        found.append(tuple(x))

    def walk(d: int) -> None:
        alive = live[d]
        for i in range(m):
            if resid[i] and not alive[i]:
                return
        if d == n:
            emit()
            return
        j = order[d]
        col = cols[j]
        if d == n - 1:
            pivot = next((i for i in range(m) if col[i] > 0), None)
            if pivot is None:
                # all-zero last column; residuals are zero by the guard above
                for v in range(bounds[j] + 1):
                    x[j] = v
                    emit()
                x[j] = 0
                return
            q, r = divmod(resid[pivot], col[pivot])
            if r == 0 and all(col[i] * q == resid[i] for i in range(m)):
                x[j] = q
                emit()
                x[j] = 0
            return
        hi = bounds[j]
        for i in range(m):
            if col[i] > 0:
                hi = min(hi, resid[i] // col[i])
        for v in range(hi + 1):
            x[j] = v
            walk(d + 1)
            for i in range(m):
                resid[i] -= col[i]
        for i in range(m):
            resid[i] += col[i] * (hi + 1)
        x[j] = 0

    walk(0)
    found.sort()
    return PointSet(n, tuple(found))


def check_convex_combination(
    x0: Sequence[int],
    others: Sequence[Point],
    pivot_cap: int = DEFAULT_PIVOT_CAP,
) -> tuple[Fraction, ...] | None:
    """Exact convex weights expressing x0 over others, or None if impossible.

    Solves the phase-1 linear program for sum(lam_i * p_i) = x0,
    sum(lam_i) = 1, lam >= 0 with a revised simplex over Fraction.  Bland's
    smallest-index rule everywhere, so no cycling; artificial columns never
    re-enter, which cannot change feasibility of the phase-1 optimum.  The
    pricing pass clears denominators once per iteration and scans columns
    with pure integer dot products.  Raises IterationLimit past pivot_cap.
    """
    pts = [tuple(p) for p in others]
    r = len(pts)
    dim = len(x0)
    for p in pts:
        if len(p) != dim:
            raise DimensionMismatch("all points must share the dimension of x0")
    if r == 0:
        return None
    rows = dim + 1
    rhs = [int(v) for v in x0] + [1]
    cols = [list(p) + [1] for p in pts]
    for i in range(rows):
        if rhs[i] < 0:
            rhs[i] = -rhs[i]
            for col in cols:
                col[i] = -col[i]
    col_tuples = [tuple(col) for col in cols]

    basis = [r + i for i in range(rows)]  # artificials
    binv = [[Fraction(int(i == jj)) for jj in range(rows)] for i in range(rows)]
    xb = [Fraction(v) for v in rhs]

    for _ in range(pivot_cap):
        infeas = Fraction(0)
        for i in range(rows):
            if basis[i] >= r:
                infeas += xb[i]
        if infeas == 0:
            lam = [Fraction(0)] * r
            for i in range(rows):
                if basis[i] < r:
                    lam[basis[i]] = xb[i]
            return tuple(lam)
        # y = (phase-1 costs of basis) . B^{-1}; artificials cost 1, others 0
        y = [Fraction(0)] * rows
        for i in range(rows):
            if basis[i] >= r:
                row = binv[i]
                for t in range(rows):
                    y[t] += row[t]
        den = math.lcm(*(v.denominator for v in y))
        yn = [int(v * den) for v in y]
        enter = -1
        for j in range(r):
            col = col_tuples[j]
            s = 0
            for t in range(rows):
                s += yn[t] * col[t]
            if s > 0:
                enter = j
                break
        if enter < 0:
            return None
        col = col_tuples[enter]
        direction = [
            sum(binv[i][t] * col[t] for t in range(rows)) for i in range(rows)
        ]
        leave = -1
        best: Fraction | None = None
        for i in range(rows):
            if direction[i] > 0:
                ratio = xb[i] / direction[i]
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leave]
                ):
                    best = ratio
                    leave = i
        if leave < 0:
            raise AssertionError("phase-1 objective is bounded; no blocking row found")
        piv = direction[leave]
        binv[leave] = [v / piv for v in binv[leave]]
        xb[leave] /= piv
        lead = binv[leave]
        for i in range(rows):
            if i != leave and direction[i] != 0:
                fac = direction[i]
                row = binv[i]
                for t in range(rows):
                    row[t] -= fac * lead[t]
                xb[i] -= fac * xb[leave]
        basis[leave] = enter
    raise IterationLimit(f"no decision after {pivot_cap} pivots")


def vertex_set(
    points: PointSet, pivot_cap: int = DEFAULT_PIVOT_CAP
) -> VertexReport:
    """Vertices of the convex hull of a finite point set, with certificates.

    Two passes.  First, any point that is the exact midpoint of two others
    in the set is discarded with the obvious half-half witness; a true
    vertex can never be such a midpoint.  Second, each survivor is tested
    against the current candidate pool with the exact LP.  Dropping proven
    non-vertices from the pool is safe because the pool always contains
    every vertex, and membership in the hull of the full set equals
    membership in the hull of its vertices.
    """
    pts = points.points
    index = {p: i for i, p in enumerate(pts)}
    half = Fraction(1, 2)
    witnesses: dict[Point, Witness] = {}
    survivors: list[Point] = []
    for p in pts:
        dbl = tuple(2 * v for v in p)
        wit: Witness | None = None
        for q in pts:
            if q == p:
                continue
            other = tuple(dv - qv for dv, qv in zip(dbl, q))
            t = index.get(other)
            if t is not None:
                i, j = sorted((index[q], t))
                wit = ((i, half), (j, half))
                break
        if wit is None:
            survivors.append(p)
        else:
            witnesses[p] = wit
    pool = list(survivors)
    vertices: list[Point] = []
    for p in survivors:
        others = [q for q in pool if q != p]
        lam = check_convex_combination(p, others, pivot_cap)
        if lam is None:
            vertices.append(p)
        else:
            witnesses[p] = tuple(
                (index[others[t]], lam[t]) for t in range(len(others)) if lam[t]
            )
            pool.remove(p)
    return VertexReport(points, tuple(vertices), witnesses)


def brute_force_optimum(
    inst: IPInstance, cap: int = DEFAULT_POINT_CAP
) -> BruteForceResult:
    """Minimum of c^T x over the enumerated feasible set, with all argmins.

    The instance must have a finite box (no zero columns), and its sense is
    taken as minimize; canonicalize first for maximize programs.
    """
    pts = enumerate_feasible(inst.A, inst.b, cap)
    if not pts.points:
        return BruteForceResult("infeasible", None, ())
    values = [
        sum(cj * xj for cj, xj in zip(inst.c, p)) for p in pts.points
    ]
    best = min(values)
    argmin = tuple(p for p, v in zip(pts.points, values) if v == best)
    return BruteForceResult("optimal", best, argmin)


def check_rhs_vertex(
    b: Sequence[int],
    cap: int = DEFAULT_POINT_CAP,
    pivot_cap: int = DEFAULT_PIVOT_CAP,
) -> bool:
    """The right-hand side minimizes the coordinate sum and is a hull vertex.

    Builds the aggregating vector f for b, enumerates every nonnegative
    integer t with f . t = f . b, and confirms three things: the coordinate
    sum e . t attains its minimum at t = b; when every entry of b is
    positive, b is the only minimizer; and b is a vertex of the convex hull
    of the enumerated set (no convex combination of the other points
    reaches it).

    Uniqueness of the minimizer cannot be demanded when b has a zero entry.
    A zero entry makes two consecutive weights of f equal, and moving a
    unit between two coordinates with equal weights changes neither f . t
    nor e . t, so distinct minimizers appear: for b = (0, 1) the weights
    are f = (1, 1) and both (0, 1) and (1, 0) have coordinate sum 1.  The
    vertex property itself survives: b is the lexicographically largest
    point of the set when coordinates are compared from the last one down,
    hence always an extreme point.
    """
    bt = tuple(int(v) for v in b)
    f = aggregation_vector(bt)
    a0 = sum(fi * bi for fi, bi in zip(f, bt))
    pts = enumerate_feasible((f,), (a0,), cap)
    target = min(sum(p) for p in pts.points)
    minimizers = [p for p in pts.points if sum(p) == target]
    if bt not in minimizers:
        return False
    if all(v > 0 for v in bt) and minimizers != [bt]:
        return False
    others = [p for p in pts.points if p != bt]
    return check_convex_combination(bt, others, pivot_cap) is None


def _aggregated_row(inst: IPInstance) -> tuple[tuple[int, ...], int]:
    f = aggregation_vector(inst.b)
    a = tuple(sum(f[i] * inst.A[i][j] for i in range(inst.m)) for j in range(inst.n))
    a0 = sum(f[i] * inst.b[i] for i in range(inst.m))
    return a, a0


def check_vertex_preservation(
    inst: IPInstance,
    cap: int = DEFAULT_POINT_CAP,
    pivot_cap: int = DEFAULT_PIVOT_CAP,
) -> CheckOutcome:
    """Every vertex of the original hull stays a vertex after aggregation.

    Enumerates both feasible sets (the instance must be free of zero
    columns), extracts the original vertices, and proves each one lies
    outside the hull of the other aggregated points.  Empty feasible set
    reports vacuous success.
    """
    pts = enumerate_feasible(inst.A, inst.b, cap)
    if not pts.points:
        return CheckOutcome(True, vacuous=True)
    report = vertex_set(pts, pivot_cap)
    a, a0 = _aggregated_row(inst)
    agg = enumerate_feasible((a,), (a0,), cap)
    for v in report.vertices:
        others = [q for q in agg.points if q != v]
        lam = check_convex_combination(v, others, pivot_cap)
        if lam is not None:
            cited = tuple(
                (others[t], lam[t]) for t in range(len(others)) if lam[t]
            )
            return CheckOutcome(
                False,
                counterexample={
                    "vertex": v,
                    "combination": cited,
                    "aggregated_row": a,
                    "aggregated_rhs": a0,
                },
            )
    return CheckOutcome(True)


def check_rhs_lower_bound(
    inst: IPInstance,
    cap: int = DEFAULT_POINT_CAP,
    pivot_cap: int = DEFAULT_PIVOT_CAP,
) -> CheckOutcome:
    """The aggregated rhs dominates prod(v_i + 1) - 1 at every original vertex."""
    pts = enumerate_feasible(inst.A, inst.b, cap)
    if not pts.points:
        return CheckOutcome(True, vacuous=True)
    report = vertex_set(pts, pivot_cap)
    _, a0 = _aggregated_row(inst)
    for v in report.vertices:
        bound = vertex_lower_bound(v)
        if a0 < bound:
            return CheckOutcome(
                False,
                counterexample={
                    "vertex": v,
                    "product_bound": bound,
                    "aggregated_rhs": a0,
                },
            )
    return CheckOutcome(True)


def check_box_injectivity(
    a: Sequence[int], x0: Sequence[int], cap: int = DEFAULT_POINT_CAP
) -> bool:
    """a . t takes distinct values on the whole box 0 <= t <= x0.

    This is the mechanism behind the rhs lower bound: an injective row on
    the box below a vertex forces at least prod(x0_i + 1) - 1 onto the
    aggregated right-hand side.  Raises CapExceeded when the box has more
    than cap points.
    """
    if len(a) != len(x0):
        raise DimensionMismatch("row and box corner must have the same length")
    size = 1
    for v in x0:
        if v < 0:
            raise ValidationError("box corner must be nonnegative")
        size *= v + 1
        if size > cap:
            raise CapExceeded(f"box has more than {cap} points")
    seen: set[int] = set()
    for t in product(*(range(v + 1) for v in x0)):
        val = sum(ai * ti for ai, ti in zip(a, t))
        if val in seen:
            return False
        seen.add(val)
    return True

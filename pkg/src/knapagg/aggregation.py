"""Collapse the constraint rows of an integer program into one knapsack row.

The aggregating vector for right-hand side b is built from running products
of (b_i + 1): its first entry is 1 and each later entry multiplies the
previous one by (b_i + 1).  Weighting the rows of A by this vector yields a
single equality a^T x = a0 whose nonnegative integer solutions contain every
solution of Ax = b, and whose hull keeps every vertex of the original hull.
The right-hand side telescopes: a0 = prod(b_i + 1) - 1.

To recover the original optimum from the single-row relaxation the objective
is shifted by a penalty that charges every unit of every variable: with L an
upper bound on the optimal value, k the smallest shift making the cost vector
nonnegative against the column sums, and H = L + k * sum(b) + 1, minimizing
(c + H * colsum)^T x over the aggregated set lands on a minimum-cost point of
the original program whenever one exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ValidationError
from .instance import (
    BoxBounds,
    IPInstance,
    ReducedInstance,
    SENSE_MIN,
    box_bounds,
    preprocess_zero_columns,
)


def aggregation_vector(b: Sequence[int]) -> tuple[int, ...]:
    """Running-product row weights for right-hand side b.

    Entry 0 is 1 and entry i+1 is entry i times (b_i + 1).  Requires at
    least one row and nonnegative entries.
    """
    if len(b) == 0:
        raise ValidationError("aggregation needs at least one row")
    f = [1]
    for bi in b[:-1]:
        if bi < 0:
            raise ValidationError("right-hand side entries must be nonnegative")
        f.append(f[-1] * (bi + 1))
    if b[-1] < 0:
        raise ValidationError("right-hand side entries must be nonnegative")
    return tuple(f)


def aggregate(red: ReducedInstance) -> tuple[tuple[int, ...], int]:
    """Weighted column sums and right-hand side of the single-row surrogate.

    Takes a reduced instance (no zero columns) so every aggregated
    coefficient comes out strictly positive.
    """
    inst = red.inner
    f = aggregation_vector(inst.b)
    a = tuple(
        sum(f[i] * inst.A[i][j] for i in range(inst.m)) for j in range(inst.n)
    )
    a0 = sum(f[i] * inst.b[i] for i in range(inst.m))
    return a, a0


def nonneg_cost_shift(c: Sequence[int], A: Sequence[Sequence[int]]) -> int:
    """Smallest integer k >= 0 with c_j + k * colsum_j >= 0 for every column.

    Requires every column sum positive (guaranteed after preprocessing).
    """
    k = 0
    for j, cj in enumerate(c):
        if cj >= 0:
            continue
        s = sum(row[j] for row in A)
        if s <= 0:
            raise ValidationError(f"column {j} has nonpositive sum; preprocess first")
        # ceil(-cj / s) without floats; cj < 0 here
        k = max(k, (-cj + s - 1) // s)
    return k


def objective_upper_bound(red: ReducedInstance, box: BoxBounds) -> int:
    """Upper bound on the optimal value: positive costs times box bounds.

    Every feasible point sits inside the box, so sum over j of
    max(0, c_j) * upper_j dominates c^T x there.  Requires a finite box.
    """
    if not box.finite:
        raise ValidationError("objective bound needs finite box bounds")
    c = red.inner.c
    if len(c) != len(box.upper):
        raise ValidationError("box bounds do not match the reduced instance")
    return sum(cj * uj for cj, uj in zip(c, box.upper) if cj > 0)


def penalty_weight(upper_bound: int, shift: int, b: Sequence[int]) -> int:
    """Penalty H = upper_bound + shift * (sum(b) + 1) + 1.

    The margin is sized so the penalized objective always prefers a point
    satisfying the full row system over one that merely satisfies the
    aggregated row.  A point of the surrogate that misses the right-hand
    side produces row mass of at least sum(b) + 1 (the right-hand side is
    the strict row-mass minimizer when its entries are positive), and each
    unit of row mass can hide up to `shift` units of negative raw cost, so
    the swing available to such a point is shift * (sum(b) + 1) plus the
    upper_bound achievable by a genuinely feasible point.  One more unit
    makes the separation strict.  The value always exceeds shift, which
    keeps the penalized costs nonnegative.
    """
    return upper_bound + shift * (sum(b) + 1) + 1


def vertex_lower_bound(x0: Sequence[int]) -> int:
    """prod(x0_i + 1) - 1, a floor no aggregated right-hand side can beat

    for any vertex x0 of the original hull.
    """
    out = 1
    for v in x0:
        if v < 0:
            raise ValidationError("vertex coordinates must be nonnegative")
        out *= v + 1
    return out - 1


@dataclass(frozen=True)
class KnapsackInstance:
    """The single-row surrogate of an integer program.

    weights/rhs describe the aggregated equality, costs the penalized
    objective over the kept columns.  upper_bound, shift and penalty are the
    L, k, H parameters of the construction; reduced maps kept columns back
    to the original instance.
    """

    weights: tuple[int, ...]
    rhs: int
    costs: tuple[int, ...]
    upper_bound: int
    shift: int
    penalty: int
    reduced: ReducedInstance
    original: IPInstance

    def __post_init__(self) -> None:
        if any(w <= 0 for w in self.weights):
            raise ValidationError("aggregated weights must be positive")
        if self.rhs < 0:
            raise ValidationError("aggregated right-hand side must be nonnegative")
        if len(self.costs) != len(self.weights):
            raise ValidationError("cost vector must match the weight vector")
        if any(cv < 0 for cv in self.costs):
            raise ValidationError("penalized costs must be nonnegative")

    @property
    def column_map(self) -> tuple[int, ...]:
        return self.reduced.column_map


def build_knapsack(inst: IPInstance) -> KnapsackInstance:
    """Run the whole construction on a minimize-canonical instance.

    Preprocesses zero columns (raising UnboundedProblem when one has
    negative cost), aggregates rows, and penalizes the objective so the
    surrogate's minimizer decides the original program.
    """
    if inst.sense != SENSE_MIN:
        raise ValidationError("build_knapsack requires a minimize-canonical instance")
    red = preprocess_zero_columns(inst)
    weights, rhs = aggregate(red)
    box = box_bounds(red.inner)
    bound = objective_upper_bound(red, box)
    shift = nonneg_cost_shift(red.inner.c, red.inner.A)
    penalty = penalty_weight(bound, shift, inst.b)
    col_sums = tuple(
        sum(red.inner.A[i][j] for i in range(red.inner.m)) for j in range(red.inner.n)
    )
    costs = tuple(cj + penalty * sj for cj, sj in zip(red.inner.c, col_sums))
    return KnapsackInstance(
        weights=weights,
        rhs=rhs,
        costs=costs,
        upper_bound=bound,
        shift=shift,
        penalty=penalty,
        reduced=red,
        original=inst,
    )

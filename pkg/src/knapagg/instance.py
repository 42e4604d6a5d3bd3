"""Equality-form integer program instances.

An instance is min (or max) c^T x subject to A x = b, x >= 0 integer, with
A and b nonnegative integers.  Everything here is exact: entries are Python
ints of arbitrary size, and the JSON interchange format carries every number
as a decimal string so no reader is tempted to round.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import DimensionMismatch, ParseError, UnboundedProblem, ValidationError

Vector = tuple[int, ...]
Matrix = tuple[Vector, ...]

SENSE_MIN = "min"
SENSE_MAX = "max"

_INT_RE = re.compile(r"-?[0-9]+\Z")


@dataclass(frozen=True)
class IPInstance:
    """One equality-form program.  Rows of A are tuples, all entries ints.

    Invariants enforced on construction: at least one row, rectangular A,
    matching lengths for b and c, A and b nonnegative, sense is "min" or
    "max".  Zero columns are legal here; `preprocess_zero_columns` removes
    them before aggregation.  n = 0 is allowed so a fully reduced instance
    can still be represented; the parser rejects empty input separately.
    """

    A: Matrix
    b: Vector
    c: Vector
    sense: str = SENSE_MIN

    def __post_init__(self) -> None:
        if not isinstance(self.A, tuple) or not all(isinstance(r, tuple) for r in self.A):
            raise ValidationError("A must be a tuple of row tuples")
        m = len(self.A)
        if m == 0:
            raise ValidationError("at least one constraint row is required")
        n = len(self.A[0])
        for row in self.A:
            if len(row) != n:
                raise ValidationError("rows of A must all have the same length")
            for v in row:
                if not isinstance(v, int):
                    raise ValidationError("entries of A must be integers")
                if v < 0:
                    raise ValidationError("entries of A must be nonnegative")
        if len(self.b) != m:
            raise ValidationError("b must have one entry per row of A")
        for v in self.b:
            if not isinstance(v, int):
                raise ValidationError("entries of b must be integers")
            if v < 0:
                raise ValidationError("entries of b must be nonnegative")
        if len(self.c) != n:
            raise ValidationError("c must have one entry per column of A")
        for v in self.c:
            if not isinstance(v, int):
                raise ValidationError("entries of c must be integers")
        if self.sense not in (SENSE_MIN, SENSE_MAX):
            raise ValidationError("sense must be 'min' or 'max'")

    @property
    def m(self) -> int:
        return len(self.A)

    @property
    def n(self) -> int:
        return len(self.A[0])

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.A)

    @classmethod
    def from_rows(
        cls,
        A: Sequence[Sequence[int]],
        b: Sequence[int],
        c: Sequence[int],
        sense: str = SENSE_MIN,
    ) -> "IPInstance":
        return cls(tuple(tuple(row) for row in A), tuple(b), tuple(c), sense)


class Evaluation(NamedTuple):
    residual: Vector
    objective: int
    feasible: bool


@dataclass(frozen=True)
class BoxBounds:
    """Per-variable upper bounds implied by Ax = b, x >= 0.

    upper[j] is min over rows with A[i][j] > 0 of b[i] // A[i][j], or None
    when column j is all zero and the variable is unbounded.
    """

    upper: tuple[int | None, ...]

    @property
    def finite(self) -> bool:
        return all(u is not None for u in self.upper)


@dataclass(frozen=True)
class ReducedInstance:
    """An instance with its zero columns removed.

    column_map[j] is the original index of kept column j; dropped records
    (original index, reason) pairs.  original_n restores full-length points.
    """

    inner: IPInstance
    column_map: tuple[int, ...]
    dropped: tuple[tuple[int, str], ...]
    original_n: int

    def lift(self, x: Sequence[int]) -> Vector:
        """Map a point over the kept columns back to original coordinates."""
        if len(x) != len(self.column_map):
            raise DimensionMismatch("point length does not match kept column count")
        out = [0] * self.original_n
        for j, orig in enumerate(self.column_map):
            out[orig] = x[j]
        return tuple(out)


@dataclass(frozen=True)
class RowRestriction:
    """Zero right-hand-side rows removed along with the variables they pin.

    row_map[i] is the original index of kept row i, column_map[j] the
    original index of kept column j, and dropped records (original column
    index, reason) pairs for the pinned variables.  lift fills the pinned
    coordinates with zeros.
    """

    inner: IPInstance
    column_map: tuple[int, ...]
    row_map: tuple[int, ...]
    dropped: tuple[tuple[int, str], ...]
    original_n: int

    def lift(self, x: Sequence[int]) -> Vector:
        """Map a point over the kept columns back to original coordinates."""
        if len(x) != len(self.column_map):
            raise DimensionMismatch("point length does not match kept column count")
        out = [0] * self.original_n
        for j, orig in enumerate(self.column_map):
            out[orig] = x[j]
        return tuple(out)


def restrict_zero_rows(inst: IPInstance) -> RowRestriction:
    """Drop rows with a zero right-hand side and the variables they pin.

    A row stating that a nonnegative combination of nonnegative variables
    equals zero forces every variable with a positive coefficient in it to
    zero, so those variables and the row can be removed without changing
    the feasible set or the objective.  The remaining right-hand sides are
    then all positive, which matters downstream: positive entries keep the
    aggregating weights strictly increasing, and the strictness is what
    lets the penalized surrogate certify answers about the original rows.
    Instances with no zero entries come back unchanged, and so does a
    right-hand side that is zero everywhere (that case needs no surgery:
    the aggregated equality then admits only the origin), keeping the
    inner instance at least one row tall.
    """
    zero = tuple(i for i in range(inst.m) if inst.b[i] == 0)
    if not zero or len(zero) == inst.m:
        return RowRestriction(
            inst, tuple(range(inst.n)), tuple(range(inst.m)), (), inst.n
        )
    pinned = {
        j for j in range(inst.n) if any(inst.A[i][j] > 0 for i in zero)
    }
    kept_rows = tuple(i for i in range(inst.m) if inst.b[i] > 0)
    kept_cols = tuple(j for j in range(inst.n) if j not in pinned)
    dropped = tuple(
        (j, "pinned to zero by a zero right-hand-side row") for j in sorted(pinned)
    )
    inner = IPInstance(
        tuple(tuple(inst.A[i][j] for j in kept_cols) for i in kept_rows),
        tuple(inst.b[i] for i in kept_rows),
        tuple(inst.c[j] for j in kept_cols),
        inst.sense,
    )
    return RowRestriction(inner, kept_cols, kept_rows, dropped, inst.n)


def _parse_int(raw: object, where: str) -> int:
    if not isinstance(raw, str) or not _INT_RE.match(raw):
        raise ParseError(f"{where}: expected a decimal integer string, got {raw!r}")
    return int(raw)


def parse_instance(text: str | bytes) -> IPInstance:
    """Parse the JSON interchange form.

    Keys: "A" (list of rows of decimal strings), "b", "c" (lists of decimal
    strings), optional "sense" ("min" or "max", default "min").  Numbers must
    be strings; bare JSON numbers are rejected so floats can never sneak in.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top level must be a JSON object")
    for key in ("A", "b", "c"):
        if key not in doc:
            raise ParseError(f"missing required key {key!r}")
    raw_A = doc["A"]
    if not isinstance(raw_A, list) or not all(isinstance(r, list) for r in raw_A):
        raise ParseError("A must be a list of rows")
    A = tuple(
        tuple(_parse_int(v, f"A[{i}][{j}]") for j, v in enumerate(row))
        for i, row in enumerate(raw_A)
    )
    if not isinstance(doc["b"], list) or not isinstance(doc["c"], list):
        raise ParseError("b and c must be lists of decimal integer strings")
    b = tuple(_parse_int(v, f"b[{i}]") for i, v in enumerate(doc["b"]))
    c = tuple(_parse_int(v, f"c[{j}]") for j, v in enumerate(doc["c"]))
    sense = doc.get("sense", SENSE_MIN)
    if sense not in (SENSE_MIN, SENSE_MAX):
        raise ParseError("sense must be 'min' or 'max'")
    if len(A) == 0:
        raise ValidationError("at least one constraint row is required")
    if len(A[0]) == 0:
        raise ValidationError("at least one variable is required")
    return IPInstance(A, b, c, sense)


def serialize_instance(inst: IPInstance) -> str:
    """Canonical compact JSON, inverse of parse_instance up to whitespace."""
    doc = {
        "A": [[str(v) for v in row] for row in inst.A],
        "b": [str(v) for v in inst.b],
        "c": [str(v) for v in inst.c],
        "sense": inst.sense,
    }
    return json.dumps(doc, separators=(",", ":"), sort_keys=True)


def instance_digest(inst: IPInstance) -> str:
    return hashlib.sha256(serialize_instance(inst).encode()).hexdigest()


def box_bounds(inst: IPInstance) -> BoxBounds:
    upper: list[int | None] = []
    for j in range(inst.n):
        col = inst.column(j)
        if any(v > 0 for v in col):
            upper.append(min(inst.b[i] // col[i] for i in range(inst.m) if col[i] > 0))
        else:
            upper.append(None)
    return BoxBounds(tuple(upper))


def preprocess_zero_columns(inst: IPInstance) -> ReducedInstance:
    """Drop columns of A that are all zero.

    Requires a minimize-canonical instance.  A zero column with nonnegative
    cost is fixed at zero without loss; one with negative cost makes the
    program unbounded and raises UnboundedProblem.
    """
    if inst.sense != SENSE_MIN:
        raise ValidationError("preprocessing requires a minimize-canonical instance")
    kept: list[int] = []
    dropped: list[tuple[int, str]] = []
    for j in range(inst.n):
        if any(row[j] > 0 for row in inst.A):
            kept.append(j)
        elif inst.c[j] < 0:
            raise UnboundedProblem(
                f"column {j} is identically zero with negative cost {inst.c[j]}"
            )
        else:
            dropped.append((j, "zero column, cost >= 0, variable fixed to 0"))
    inner = IPInstance(
        tuple(tuple(row[j] for j in kept) for row in inst.A),
        inst.b,
        tuple(inst.c[j] for j in kept),
        SENSE_MIN,
    )
    return ReducedInstance(inner, tuple(kept), tuple(dropped), inst.n)


def evaluate(inst: IPInstance, x: Sequence[int]) -> Evaluation:
    """Residual Ax - b, objective c^T x, and feasibility of a candidate point."""
    if len(x) != inst.n:
        raise DimensionMismatch(f"point has {len(x)} coordinates, instance has {inst.n}")
    for v in x:
        if not isinstance(v, int) or v < 0:
            raise ValidationError("candidate points must be nonnegative integers")
    residual = tuple(
        sum(row[j] * x[j] for j in range(inst.n)) - inst.b[i]
        for i, row in enumerate(inst.A)
    )
    objective = sum(inst.c[j] * x[j] for j in range(inst.n))
    return Evaluation(residual, objective, all(r == 0 for r in residual))


def canonicalize_minimize(inst: IPInstance) -> IPInstance:
    """Flip a maximize instance into the equivalent minimize instance."""
    if inst.sense == SENSE_MIN:
        return inst
    return IPInstance(inst.A, inst.b, tuple(-v for v in inst.c), SENSE_MIN)

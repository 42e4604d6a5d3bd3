from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, product

import pytest

from knapagg import (
    CapExceeded,
    DimensionMismatch,
    IPInstance,
    PointSet,
    ValidationError,
    brute_force_optimum,
    check_box_injectivity,
    check_convex_combination,
    check_rhs_lower_bound,
    check_rhs_vertex,
    check_vertex_preservation,
    enumerate_feasible,
    preprocess_zero_columns,
    vertex_set,
)


def _brute_points(A, b, limit):
    m, n = len(A), len(A[0])
    out = []
    for x in product(range(limit + 1), repeat=n):
        if all(sum(A[i][j] * x[j] for j in range(n)) == b[i] for i in range(m)):
            out.append(x)
    return sorted(out)


def _hull_member(p, pts):
    # independent exact membership test: try every support of size <= dim+1
    # and solve the convex-combination system by rational elimination
    others = [q for q in pts if q != p]
    d = len(p)
    for size in range(1, d + 2):
        for sub in combinations(others, size):
            rows = d + 1
            aug = [
                [Fraction(sub[j][i]) for j in range(size)] + [Fraction(p[i])]
                for i in range(d)
            ]
            aug.append([Fraction(1)] * size + [Fraction(1)])
            piv_cols = []
            r = 0
            for cidx in range(size):
                pr = next((rr for rr in range(r, rows) if aug[rr][cidx] != 0), None)
                if pr is None:
                    continue
                aug[r], aug[pr] = aug[pr], aug[r]
                pv = aug[r][cidx]
                aug[r] = [v / pv for v in aug[r]]
                for rr in range(rows):
                    if rr != r and aug[rr][cidx] != 0:
                        fac = aug[rr][cidx]
                        aug[rr] = [a - fac * v for a, v in zip(aug[rr], aug[r])]
                piv_cols.append(cidx)
                r += 1
                if r == rows:
                    break
            if any(aug[rr][size] != 0 for rr in range(r, rows)):
                continue
            lam = [Fraction(0)] * size
            for idx, cidx in enumerate(piv_cols):
                lam[cidx] = aug[idx][size]
            if all(v >= 0 for v in lam):
                return True
    return False


def test_enumerate_demo():
    pts = enumerate_feasible(((1, 1, 0), (0, 1, 1)), (1, 1))
    assert pts.points == ((0, 1, 0), (1, 0, 1))
    assert pts.dim == 3


def test_enumerate_single_row():
    pts = enumerate_feasible(((1, 3),), (11,))
    assert pts.points == ((2, 3), (5, 2), (8, 1), (11, 0))


def test_enumerate_empty_set():
    assert enumerate_feasible(((2,),), (3,)).points == ()
    assert enumerate_feasible(((1, 0), (0, 2)), (1, 1)).points == ()


def test_enumerate_zero_rhs():
    assert enumerate_feasible(((1, 2), (3, 1)), (0, 0)).points == ((0, 0),)


def test_enumerate_is_lexicographic():
    pts = enumerate_feasible(((1, 1, 1),), (3,))
    assert list(pts.points) == sorted(pts.points)
    assert pts.points[0] == (0, 0, 3)


def test_enumerate_zero_column_needs_var_bound():
    with pytest.raises(ValidationError):
        enumerate_feasible(((1, 0),), (2,))
    pts = enumerate_feasible(((1, 0),), (2,), var_bound=2)
    assert pts.points == ((2, 0), (2, 1), (2, 2))


def test_enumerate_cap():
    with pytest.raises(CapExceeded):
        enumerate_feasible(((1, 1),), (50,), cap=10)
    # exactly at the cap is fine
    assert len(enumerate_feasible(((1, 1),), (9,), cap=10)) == 10


def test_enumerate_no_columns():
    assert enumerate_feasible(((), ()), (0, 0)).points == ((),)
    assert enumerate_feasible(((), ()), (0, 1)).points == ()


def test_enumerate_matches_brute_force():
    rng = random.Random(8080)
    for _ in range(80):
        m = rng.randint(1, 2)
        n = rng.randint(1, 3)
        A = [[rng.randint(0, 3) for _ in range(n)] for _ in range(m)]
        for j in range(n):
            A[rng.randrange(m)][j] = max(1, A[rng.randrange(m)][j])
        b = [rng.randint(0, 6) for _ in range(m)]
        pts = enumerate_feasible(tuple(map(tuple, A)), tuple(b))
        assert list(pts.points) == _brute_points(A, b, max(b, default=0))


def test_point_set_validation():
    with pytest.raises(ValidationError):
        PointSet(2, ((1, 2), (1, 2)))
    with pytest.raises(DimensionMismatch):
        PointSet(2, ((1, 2), (1,)))


def test_convex_combination_outside():
    assert check_convex_combination((0, 0), [(1, 0), (0, 1)]) is None
    assert check_convex_combination((3,), [(1,), (2,)]) is None
    assert check_convex_combination((1, 1), []) is None


def test_convex_combination_inside():
    lam = check_convex_combination((1, 1), [(0, 0), (2, 2), (5, 0)])
    assert lam is not None
    assert sum(lam) == 1
    assert all(v >= 0 for v in lam)
    pts = [(0, 0), (2, 2), (5, 0)]
    for i in range(2):
        assert sum(l * Fraction(p[i]) for l, p in zip(lam, pts)) == 1


def test_convex_combination_on_collinear_points():
    lam = check_convex_combination((5, 2), [(11, 0), (8, 1), (2, 3)])
    assert lam is not None
    assert sum(lam) == 1
    for i in range(2):
        assert sum(l * p[i] for l, p in zip(lam, [(11, 0), (8, 1), (2, 3)])) == (5, 2)[i]


def test_convex_combination_exact_point_match():
    lam = check_convex_combination((4, 4), [(4, 4), (9, 9)])
    assert lam is not None
    assert lam[0] == 1 and lam[1] == 0


def test_convex_combination_is_deterministic():
    args = ((3, 3), [(0, 0), (6, 6), (6, 0), (0, 6), (3, 3)])
    assert check_convex_combination(*args) == check_convex_combination(*args)


def test_convex_combination_dimension_check():
    with pytest.raises(DimensionMismatch):
        check_convex_combination((1, 2), [(1,)])


def test_convex_combination_matches_independent_oracle():
    rng = random.Random(6021)
    for _ in range(120):
        d = rng.randint(1, 3)
        count = rng.randint(1, 6)
        pts = list({tuple(rng.randint(0, 6) for _ in range(d)) for _ in range(count)})
        x0 = tuple(rng.randint(0, 6) for _ in range(d))
        others = [p for p in pts if p != x0]
        lam = check_convex_combination(x0, others)
        assert (lam is not None) == _hull_member(x0, others + [x0])
        if lam is not None:
            assert sum(lam) == 1
            for i in range(d):
                assert sum(l * p[i] for l, p in zip(lam, others)) == x0[i]


def test_vertex_set_collinear():
    pts = enumerate_feasible(((1, 3),), (11,))
    report = vertex_set(pts)
    assert report.vertices == ((2, 3), (11, 0))
    for p, wit in report.witnesses.items():
        combo = [Fraction(0), Fraction(0)]
        total = Fraction(0)
        for idx, w in wit:
            assert pts.points[idx] != p
            assert w > 0
            total += w
            for i in range(2):
                combo[i] += w * pts.points[idx][i]
        assert total == 1
        assert tuple(combo) == p


def test_vertex_set_single_point():
    report = vertex_set(PointSet(2, ((7, 7),)))
    assert report.vertices == ((7, 7),)
    assert report.witnesses == {}


def test_vertex_set_square_with_center():
    pts = PointSet(2, ((0, 0), (0, 2), (1, 1), (2, 0), (2, 2)))
    report = vertex_set(pts)
    assert report.vertices == ((0, 0), (0, 2), (2, 0), (2, 2))
    assert (1, 1) in report.witnesses


def test_vertex_set_matches_independent_oracle():
    rng = random.Random(9339)
    for _ in range(40):
        d = rng.randint(1, 3)
        pts = sorted({tuple(rng.randint(0, 5) for _ in range(d)) for _ in range(rng.randint(1, 8))})
        report = vertex_set(PointSet(d, tuple(pts)))
        expect = tuple(p for p in pts if not _hull_member(p, pts))
        assert report.vertices == expect
        for p, wit in report.witnesses.items():
            total = Fraction(0)
            combo = [Fraction(0)] * d
            for idx, w in wit:
                assert pts[idx] != p
                total += w
                for i in range(d):
                    combo[i] += w * pts[idx][i]
            assert total == 1 and tuple(combo) == p


def test_brute_force_optimum_demo():
    red = preprocess_zero_columns(
        IPInstance.from_rows([[1, 1, 0], [0, 1, 1]], [1, 1], [1, 1, 1])
    )
    res = brute_force_optimum(red.inner)
    assert res.status == "optimal"
    assert res.value == 1
    assert res.argmin == ((0, 1, 0),)


def test_brute_force_optimum_reports_all_argmins():
    inst = IPInstance.from_rows([[1, 1]], [2], [0, 0])
    res = brute_force_optimum(inst)
    assert res.value == 0
    assert res.argmin == ((0, 2), (1, 1), (2, 0))


def test_brute_force_optimum_infeasible():
    inst = IPInstance.from_rows([[2]], [3], [1])
    res = brute_force_optimum(inst)
    assert res.status == "infeasible"
    assert res.value is None and res.argmin == ()


def test_rhs_vertex_examples():
    assert check_rhs_vertex((2, 3))
    assert check_rhs_vertex((1, 1))
    assert check_rhs_vertex((0,))
    assert check_rhs_vertex((0, 0, 0))
    assert check_rhs_vertex((4, 4))


def test_rhs_vertex_exhaustive_small():
    for b1 in range(4):
        for b2 in range(4):
            assert check_rhs_vertex((b1, b2))


def test_rhs_vertex_zero_entry_has_tied_minimizers():
    # A zero entry in b collapses two consecutive weights, so the
    # coordinate-sum minimum is shared.  b = (0, 1) gives weights (1, 1)
    # and the feasible set {(0, 1), (1, 0)}, both with sum 1.  The check
    # must still accept b: it remains a vertex of the hull.
    pts = enumerate_feasible(((1, 1),), (1,), 100)
    assert set(pts.points) == {(0, 1), (1, 0)}
    assert sum((0, 1)) == sum((1, 0)) == 1
    assert check_rhs_vertex((0, 1))
    assert check_rhs_vertex((1, 0))


def test_vertex_preservation_demo():
    inst = IPInstance.from_rows([[1, 1, 0], [0, 1, 1]], [1, 1], [1, 1, 1])
    out = check_vertex_preservation(inst)
    assert out.holds and not out.vacuous


def test_vertex_preservation_vacuous_on_empty_set():
    inst = IPInstance.from_rows([[1, 0], [0, 2]], [1, 1], [0, 0])
    out = check_vertex_preservation(inst)
    assert out.holds and out.vacuous


def test_rhs_lower_bound_demo():
    inst = IPInstance.from_rows([[1, 1, 0], [0, 1, 1]], [1, 1], [1, 1, 1])
    out = check_rhs_lower_bound(inst)
    assert out.holds and not out.vacuous


def test_rhs_lower_bound_tight_case():
    # the bound is attained at the vertex (1, 0, 1): product 4 - 1 = rhs 3
    inst = IPInstance.from_rows([[1, 1, 0], [0, 1, 1]], [1, 1], [0, 0, 0])
    out = check_rhs_lower_bound(inst)
    assert out.holds


def test_box_injectivity():
    assert check_box_injectivity((1, 3, 2), (1, 0, 1))
    assert not check_box_injectivity((1, 1), (1, 1))
    assert check_box_injectivity((1, 2, 4), (1, 1, 1))
    assert check_box_injectivity((), ())
    assert check_box_injectivity((5, 9), (0, 0))


def test_box_injectivity_cap_and_dims():
    with pytest.raises(CapExceeded):
        check_box_injectivity((1, 2), (1000, 1000), cap=100)
    with pytest.raises(DimensionMismatch):
        check_box_injectivity((1, 2), (1,))


def test_checks_hold_on_random_instances():
    rng = random.Random(12)
    nonvacuous = 0
    for _ in range(60):
        m = rng.randint(1, 2)
        n = rng.randint(1, 3)
        A = [[rng.randint(0, 3) for _ in range(n)] for _ in range(m)]
        for j in range(n):
            A[rng.randrange(m)][j] = max(1, A[rng.randrange(m)][j])
        b = [rng.randint(0, 4) for _ in range(m)]
        inst = IPInstance.from_rows(A, b, [0] * n)
        pre = check_vertex_preservation(inst)
        low = check_rhs_lower_bound(inst)
        assert pre.holds and low.holds
        if not pre.vacuous:
            nonvacuous += 1
    assert nonvacuous > 10

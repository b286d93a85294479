import itertools
import random
from fractions import Fraction

import pytest
import sympy

from oracles import drop_last, hull_edges_2d
from weylret.errors import ParseError
from weylret.exact import (
    HalfspaceCone,
    Membership,
    RationalMatrix,
    canonical_subspace,
    cone_lineality,
    cone_membership,
    format_rational,
    hull_edges,
    integer_primitive,
    lp_edge_feasible,
    lp_feasible,
    nullspace_basis,
    parse_rational,
    rref,
)

F = Fraction


def rand_fraction(rng: random.Random) -> Fraction:
    return F(rng.randint(-9, 9), rng.randint(1, 4))


# --- rationals -------------------------------------------------------------


def test_parse_and_format_rational():
    assert parse_rational("3/4") == F(3, 4)
    assert parse_rational("-2") == F(-2)
    assert parse_rational(" 1/3 ") == F(1, 3)
    assert parse_rational("1.5") == F(3, 2)
    assert parse_rational(7) == F(7)
    for bad in ("1/0", "abc", "", "1/2/3"):
        with pytest.raises(ParseError):
            parse_rational(bad)
    assert format_rational(F(3, 4)) == "3/4"
    assert format_rational(F(-2)) == "-2"
    assert parse_rational(format_rational(F(-22, 7))) == F(-22, 7)


def test_integer_primitive():
    assert integer_primitive((F(1, 2), F(-3, 4), F(0))) == (2, -3, 0)
    assert integer_primitive((4, 6, -2)) == (2, 3, -1)
    # sign is normalized: first nonzero entry comes out positive
    assert integer_primitive((0, 0, -5)) == (0, 0, 1)
    with pytest.raises(ValueError):
        integer_primitive((0, 0, 0))


# --- matrices vs sympy -----------------------------------------------------


def test_det_rank_minor_vs_sympy():
    rng = random.Random(1)
    for trial in range(25):
        n = rng.randint(1, 5)
        rows = tuple(
            tuple(rand_fraction(rng) for _ in range(n)) for _ in range(n)
        )
        mat = RationalMatrix(rows)
        sym = sympy.Matrix([[sympy.Rational(x) for x in row] for row in rows])
        assert mat.det() == sym.det()
        assert mat.rank() == sym.rank()
        k = rng.randint(1, n)
        ri = sorted(rng.sample(range(1, n + 1), k))
        ci = sorted(rng.sample(range(1, n + 1), k))
        sub = sym[[i - 1 for i in ri], [j - 1 for j in ci]]
        assert mat.minor(ri, ci) == sub.det()


def test_det_hand_values():
    assert RationalMatrix(((1, 2), (3, 4))).det() == -2
    hilbert = RationalMatrix(
        tuple(tuple(F(1, i + j + 1) for j in range(3)) for i in range(3))
    )
    assert hilbert.det() == F(1, 2160)


def test_matrix_json_round_trip():
    mat = RationalMatrix(((F(1, 2), F(-3)), (F(0), F(7, 5))))
    assert RationalMatrix.from_json(mat.to_json()) == mat
    assert mat.to_json() == [["1/2", "-3"], ["0", "7/5"]]


# --- linear algebra --------------------------------------------------------


def test_rref_and_nullspace():
    rng = random.Random(2)
    for trial in range(20):
        nrows, ncols = rng.randint(1, 4), rng.randint(1, 5)
        rows = [[rand_fraction(rng) for _ in range(ncols)] for _ in range(nrows)]
        reduced, pivots = rref(rows)
        sym = sympy.Matrix([[sympy.Rational(x) for x in r] for r in rows])
        assert len(pivots) == sym.rank()
        basis = nullspace_basis(rows, ncols)
        assert len(basis) == ncols - sym.rank()
        for vec in basis:
            for row in rows:
                assert sum(a * b for a, b in zip(row, vec)) == 0


def test_canonical_subspace_is_basis_invariant():
    v1, v2 = (1, 0, 2, 0), (0, 1, -1, 3)
    mixed = [
        (1, 1, 1, 3),  # v1 + v2
        (2, -1, 5, -3),  # 2 v1 - v2
    ]
    assert canonical_subspace([v1, v2], 4) == canonical_subspace(mixed, 4)
    assert canonical_subspace([v1], 4) != canonical_subspace([v1, v2], 4)
    assert canonical_subspace([], 4) == ()


# --- cones -----------------------------------------------------------------


def quadrant() -> HalfspaceCone:
    return HalfspaceCone(normals=((1, 0), (0, 1)), equalities=(), dim=2)


def test_cone_membership():
    cone = quadrant()
    assert cone_membership(cone, (1, 1)) is Membership.INTERIOR
    assert cone_membership(cone, (0, 1)) is Membership.BOUNDARY
    assert cone_membership(cone, (0, 0)) is Membership.BOUNDARY
    assert cone_membership(cone, (-1, 1)) is Membership.OUTSIDE
    flat = HalfspaceCone(normals=((1, 0),), equalities=((0, 1),), dim=2)
    assert cone_membership(flat, (2, 0)) is Membership.INTERIOR
    assert cone_membership(flat, (2, 1)) is Membership.OUTSIDE
    assert cone_membership(flat, (0, 0)) is Membership.BOUNDARY


def test_cone_lineality():
    assert cone_lineality(quadrant()) == ()
    half = HalfspaceCone(normals=((1, 0, 0),), equalities=(), dim=3)
    lin = cone_lineality(half)
    assert canonical_subspace(lin, 3) == canonical_subspace(
        [(0, 1, 0), (0, 0, 1)], 3
    )


# --- linear programming ----------------------------------------------------


def test_lp_feasible_basic():
    # x >= 1 and x <= 2 encoded as -x <= -1, x <= 2
    assert lp_feasible([((-1,), -1), ((1,), 2)], [], 1)
    assert not lp_feasible([((1,), -1), ((-1,), -1)], [], 1)
    # equality x + y = 1 with x, y <= 0 is infeasible
    assert not lp_feasible(
        [((1, 0), 0), ((0, 1), 0)], [((1, 1), 1)], 2
    )
    assert lp_feasible([((1, 0), 0), ((0, 1), 0)], [((1, 1), -1)], 2)
    assert lp_feasible([], [], 3)


def test_lp_feasible_randomized_witness():
    # systems built around a known solution must come back feasible
    rng = random.Random(4)
    for trial in range(20):
        dim = rng.randint(1, 4)
        x0 = [rand_fraction(rng) for _ in range(dim)]
        ineqs = []
        eqs = []
        for _ in range(rng.randint(1, 6)):
            a = [rand_fraction(rng) for _ in range(dim)]
            val = sum(ai * xi for ai, xi in zip(a, x0))
            if rng.random() < 0.3:
                eqs.append((tuple(a), val))
            else:
                ineqs.append((tuple(a), val + F(rng.randint(0, 3))))
        assert lp_feasible(ineqs, eqs, dim)


# --- hulls -----------------------------------------------------------------


def test_hull_edges_2d_vs_sympy():
    rng = random.Random(6)
    for trial in range(30):
        pts = set()
        while len(pts) < rng.randint(3, 10):
            pts.add((rand_fraction(rng), rand_fraction(rng)))
        pts = sorted(pts)
        verts, edges = hull_edges(pts)
        got = {frozenset((pts[i], pts[j])) for i, j in edges}
        assert got == hull_edges_2d(pts), pts


def test_hull_edges_degenerate():
    verts, edges = hull_edges([(0, 0), (2, 2), (1, 1)])
    assert sorted(verts) == [0, 1] and edges == [(0, 1)]
    verts, edges = hull_edges([(5, 7)])
    assert verts == [0] and edges == []
    with pytest.raises(ValueError):
        hull_edges([(0, 0), (0, 0)])


def test_hull_edges_square_with_center():
    pts = [(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)]
    verts, edges = hull_edges(pts)
    assert sorted(verts) == [0, 1, 2, 3]
    assert len(edges) == 4
    assert all(4 not in e for e in edges)


def test_hull_edges_permutohedron():
    # S4 orbit of an increasing point: 24 vertices, 36 edges, cubic graph
    perms = list(itertools.permutations((0, 1, 2, 3)))
    verts, edges = hull_edges(perms)
    assert len(verts) == 24
    assert len(edges) == 36
    degree = {i: 0 for i in range(24)}
    for i, j in edges:
        degree[i] += 1
        degree[j] += 1
    assert set(degree.values()) == {3}
    # every edge differs by a transposition of adjacent values
    for i, j in edges:
        diff = [a - b for a, b in zip(perms[i], perms[j])]
        nonzero = sorted(v for v in diff if v != 0)
        assert len(nonzero) == 2 and nonzero[0] == -nonzero[1]


def test_hull_edges_rejects_high_dimension():
    pts = [tuple(int(i == j) for j in range(4)) for i in range(4)] + [
        (0, 0, 0, 0)
    ]
    with pytest.raises(ValueError):
        hull_edges(pts)


def _no_three_collinear(pts) -> bool:
    for a, b, c in itertools.combinations(pts, 3):
        if (b[0] - a[0]) * (c[1] - a[1]) == (b[1] - a[1]) * (c[0] - a[0]):
            return False
    return True


def test_lp_edge_feasible_matches_hull_2d():
    # the two detectors agree only in general position: a third point in
    # the middle of a hull edge defeats the LP's strict separation while
    # the hull still reports the edge.  Orbit points sit on a sphere, so
    # the library never feeds that case; keep the comparison domain honest.
    rng = random.Random(8)
    for trial in range(10):
        pts = set()
        while len(pts) < 7 or not _no_three_collinear(pts):
            if len(pts) >= 7:
                pts.clear()
            pts.add((rand_fraction(rng), rand_fraction(rng)))
        pts = sorted(pts)
        _, edges = hull_edges(pts)
        edge_set = {frozenset(e) for e in edges}
        for i, j in itertools.combinations(range(len(pts)), 2):
            assert lp_edge_feasible(pts, i, j) == (
                frozenset((i, j)) in edge_set
            )


def test_lp_edge_feasible_permutohedron_spots():
    perms = list(itertools.permutations((0, 1, 2, 3)))
    _, edges = hull_edges(perms)
    edge_set = {frozenset(e) for e in edges}
    rng = random.Random(9)
    pairs = rng.sample(list(itertools.combinations(range(24), 2)), 40)
    for i, j in set(pairs) | set(map(tuple, map(sorted, edge_set))):
        assert lp_edge_feasible(perms, i, j) == (frozenset((i, j)) in edge_set)

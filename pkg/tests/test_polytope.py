import random
from fractions import Fraction
from itertools import combinations

import pytest

from primefacets.linalg import rank
from primefacets.polyring import SparsePolynomial
from primefacets.polytope import (
    PolytopeV,
    face_minimizing,
    hull,
    is_simple,
    minkowski_sum,
    newton_polytope,
    normal_fan,
)


def brute_force_facets(points):
    """All-subsets supporting-hyperplane oracle (tiny inputs only).

    Returns the set of primitive (a, b) with a.x >= b valid and tight on an
    affinely (d-1)-dimensional subset, d = affine dimension; representatives
    are canonicalized modulo the equation lattice the same way hull() does.
    """
    from primefacets.linalg import nullspace, rank as rk, reduce_mod_rowspace, vec_gcd

    pts = sorted(set(map(tuple, points)))
    dim = len(pts[0])
    p0 = pts[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in pts[1:]]
    d = rk(diffs) if diffs else 0
    ortho = nullspace(diffs, dim) if diffs else nullspace([[0] * dim], dim)
    eq_rows = [list(o) + [sum(x * y for x, y in zip(o, p0))] for o in ortho]

    def canon(a, b):
        ab = tuple(a) + (b,)
        if eq_rows:
            ab = reduce_mod_rowspace(ab, eq_rows)
        g = vec_gcd(ab)
        if g > 1:
            ab = tuple(x // g for x in ab)
        return ab[:-1], ab[-1]

    out = set()
    for sub in combinations(pts, d):
        rows = [[a - b for a, b in zip(p, sub[0])] for p in sub[1:]]
        if rk(rows) != d - 1:
            continue
        cand = nullspace(rows + [list(o) for o in ortho], dim)
        if len(cand) != 1:
            continue
        a = cand[0]
        vals = [sum(x * y for x, y in zip(a, p)) for p in pts]
        b0 = sum(x * y for x, y in zip(a, sub[0]))
        if all(v >= b0 for v in vals):
            out.add(canon(a, b0))
        elif all(v <= b0 for v in vals):
            out.add(canon(tuple(-x for x in a), -b0))
    return out


def facet_set(poly):
    return {(f.normal, f.offset) for f in poly.facets}


def test_unit_square():
    pts = [(0, 0), (1, 0), (0, 1), (1, 1)]
    p = hull(pts)
    assert facet_set(p) == {
        ((1, 0), 0),
        ((0, 1), 0),
        ((-1, 0), -1),
        ((0, -1), -1),
    }
    assert p.equations == []
    assert [tuple(v) for v in p.vertices] == sorted(pts)
    assert is_simple(p)


def test_segment_1d():
    p = hull([(3,), (7,), (5,)])
    assert facet_set(p) == {((1,), 3), ((-1,), -7)}
    assert p.vertices == [(3,), (7,)]


def test_point():
    p = hull([(2, 5)])
    assert p.facets == []
    assert len(p.equations) == 2
    assert p.vertices == [(2, 5)]


def test_lower_dimensional_simplex():
    # triangle living in the plane x+y+z = 1 of R^3
    pts = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    p = hull(pts)
    assert len(p.equations) == 1
    a, b = p.equations[0]
    assert all(sum(x * y for x, y in zip(a, v)) == b for v in pts)
    assert len(p.facets) == 3
    assert p.affine_dim == 2
    assert is_simple(p)


def test_simplex_simple():
    pts = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert is_simple(hull(pts))


def test_square_pyramid_not_simple():
    pts = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)]
    p = hull(pts)
    assert len(p.facets) == 5
    assert not is_simple(p)


def test_interior_points_dropped():
    pts = [(0, 0), (4, 0), (0, 4), (4, 4), (2, 2), (1, 1), (4, 2)]
    p = hull(pts)
    assert [tuple(v) for v in p.vertices] == [(0, 0), (0, 4), (4, 0), (4, 4)]


def test_hull_against_bruteforce_random():
    rng = random.Random(17)
    for trial in range(60):
        dim = rng.choice([2, 3, 4])
        npts = rng.randint(dim + 1, 9)
        pts = {tuple(rng.randint(-4, 4) for _ in range(dim)) for _ in range(npts)}
        pts = sorted(pts)
        expected = brute_force_facets(pts)
        got = facet_set(hull(pts))
        assert got == expected, (pts, got, expected)


def test_hull_determinism_under_permutation():
    rng = random.Random(23)
    base = [tuple(rng.randint(0, 5) for _ in range(4)) for _ in range(40)]
    ref = hull(base)
    for _ in range(5):
        sh = base[:]
        rng.shuffle(sh)
        p = hull(sh)
        assert facet_set(p) == facet_set(ref)
        assert p.vertices == ref.vertices
        assert p.equations == ref.equations


def test_primitive_normals():
    rng = random.Random(31)
    from math import gcd

    for _ in range(30):
        pts = [tuple(rng.randint(0, 6) for _ in range(3)) for _ in range(12)]
        p = hull(pts)
        for f in p.facets:
            g = 0
            for x in f.normal:
                g = gcd(g, abs(x))
            assert g == 1


def test_rational_points():
    pts = [(Fraction(1, 2), 0), (0, Fraction(1, 2)), (0, 0)]
    p = hull(pts)
    assert len(p.facets) == 3
    assert ((-1, -1), Fraction(-1, 2)) in facet_set(p)
    assert all(tuple(v) in p.vertices for v in pts)


# -- newton polytopes / minkowski sums ------------------------------------


def test_newton_polytope_support():
    p = SparsePolynomial(2, {(1, 0): 1, (0, 1): 1})
    np_ = newton_polytope(p)
    assert set(np_.points) == {(1, 0), (0, 1)}
    with pytest.raises(ValueError):
        newton_polytope(SparsePolynomial.zero(2))


def test_minkowski_sum_trivial():
    p = SparsePolynomial(2, {(1, 0): 1, (0, 1): 1})
    s = minkowski_sum([newton_polytope(p), newton_polytope(p)])
    # hull of {(2,0),(1,1),(0,2)}: the middle point is not a vertex
    assert [tuple(v) for v in s.vertices] == [(0, 2), (2, 0)]
    a, b = s.equations[0]
    assert sum(x * y for x, y in zip(a, (1, 1))) == b


def random_positive_poly(rng, nvars, nterms, deg=2):
    terms = {}
    for _ in range(nterms):
        e = tuple(rng.randint(0, deg) for _ in range(nvars))
        terms[e] = terms.get(e, 0) + rng.randint(1, 3)
    return SparsePolynomial(nvars, terms)


def test_minkowski_vs_symbolic_product_oracle():
    rng = random.Random(41)
    cases = 0
    while cases < 60:
        nvars = rng.choice([2, 3, 4])
        nfac = rng.randint(2, 5)
        polys = [random_positive_poly(rng, nvars, rng.randint(1, 4)) for _ in range(nfac)]
        prod = polys[0]
        for q in polys[1:]:
            prod = prod * q
        direct = hull(sorted(prod.terms))
        summed = minkowski_sum([newton_polytope(q) for q in polys])
        assert facet_set(direct) == facet_set(summed)
        assert direct.vertices == summed.vertices
        cases += 1


def test_minkowski_bulk_oracle_500():
    # acceptance 9 scale: 500 randomized Minkowski-vs-product checks
    rng = random.Random(43)
    for _ in range(500):
        nvars = rng.choice([2, 3])
        polys = [random_positive_poly(rng, nvars, rng.randint(1, 3), deg=2) for _ in range(rng.randint(2, 4))]
        prod = polys[0]
        for q in polys[1:]:
            prod = prod * q
        direct = hull(sorted(prod.terms))
        summed = minkowski_sum([newton_polytope(q) for q in polys])
        assert facet_set(direct) == facet_set(summed)


# -- faces / fans ------------------------------------------------------------


def test_face_minimizing_square():
    p = hull([(0, 0), (1, 0), (0, 1), (1, 1)])
    face, codim = face_minimizing(p, (1, 0))
    pts = sorted(tuple(p.vertices[i]) for i in face)
    assert pts == [(0, 0), (0, 1)]
    assert codim == 1
    face, codim = face_minimizing(p, (1, 1))
    assert [tuple(p.vertices[i]) for i in face] == [(0, 0)]
    assert codim == 2
    face, codim = face_minimizing(p, (0, 0))
    assert codim == 0


def test_normal_fan_square():
    p = hull([(0, 0), (1, 0), (0, 1), (1, 1)])
    fan = normal_fan(p)
    assert set(fan.rays) == {(1, 0), (0, 1), (-1, 0), (0, -1)}
    assert all(len(c) == 2 for c in fan.cones)

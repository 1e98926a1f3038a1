import random
from fractions import Fraction

import pytest

from primefacets.grnewton import build_stage, clear_to_nonnegative
from primefacets.polyring import SparsePolynomial
from primefacets.polytope import normal_fan
from primefacets.roots import gen_root_vector, nonfrozen_subsets
from primefacets.tropic import (
    HeightSpace,
    TropPoly,
    TropicalChart,
    cubical_collection,
    f_map,
    height_vector,
    omega,
    trop_eval,
)


def test_trop_eval_basic():
    t = TropPoly(((1, 0), (0, 1)))
    assert trop_eval(t, (2, 5)) == 2
    with pytest.raises(ValueError):
        trop_eval(t, (1, 2, 3))


def test_trop_p24_gr25():
    chart = TropicalChart(2, 5)
    # p_{2,4} = x11 + x12, so P_{2,4}(y) = min(y11, y12)
    assert chart.P((2, 4), (3, 7, 11)) == 3
    assert chart.P((2, 4), (9, 7, 11)) == 7


def test_trop_multiplicative_on_products():
    rng = random.Random(5)
    for _ in range(40):
        nv = 3
        a = SparsePolynomial(nv, {tuple(rng.randint(0, 3) for _ in range(nv)): 1 for _ in range(3)})
        b = SparsePolynomial(nv, {tuple(rng.randint(0, 3) for _ in range(nv)): 1 for _ in range(3)})
        y = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(nv))
        assert trop_eval(TropPoly.of(a * b), y) == trop_eval(TropPoly.of(a), y) + trop_eval(
            TropPoly.of(b), y
        )


def test_cubical_collection_gr25():
    # J={1,3}: both slots free since 2,4 not in J
    got = cubical_collection(2, 5, (1, 3))
    assert got == {(1, 3), (1, 4), (2, 3), (2, 4)}


def test_cubical_collection_sizes():
    for k, n in [(2, 5), (3, 6)]:
        for J in nonfrozen_subsets(k, n):
            js = set(J)
            free = sum(1 for j in J if (j % n) + 1 not in js)
            assert len(cubical_collection(k, n, J)) == 2**free


def test_cubical_one_free_slot():
    # J = {1,2,4} in [6]: slots 1,2 locked (2 and 3... 2 in J locks slot 1;
    # 3 not in J frees slot 2; 5 not in J frees slot 3) -> size 4
    got = cubical_collection(3, 6, (1, 2, 4))
    assert len(got) == 4


def test_omega_zero_and_scaling():
    chart = TropicalChart(2, 5)
    assert omega(chart, (2, 4), (0, 0, 0)) == 0
    y = (Fraction(1), Fraction(0), Fraction(0))
    w1 = omega(chart, (2, 4), y)
    w3 = omega(chart, (2, 4), tuple(3 * c for c in y))
    assert w3 == 3 * w1


def test_omega_24_gr25_value():
    chart = TropicalChart(2, 5)
    y = (Fraction(1), Fraction(0), Fraction(0))
    # omega_{24} = P24 - P25 - P34 + P35 (expand U({2,4}) with signs)
    expected = (
        chart.P((2, 4), y) - chart.P((2, 5), y) - chart.P((3, 4), y) + chart.P((3, 5), y)
    )
    assert omega(chart, (2, 4), y) == expected


def test_height_vector_reduction_idempotent():
    space = HeightSpace(2, 5)
    h = height_vector(space, (1, 3))
    # adding any lineality generator leaves the canonical representative fixed
    for gen in space.gens:
        shifted = tuple(a + b for a, b in zip(h, gen))
        assert space.reduce(shifted) == h
    assert space.reduce(h) == h


def test_height_vector_orthogonal_to_lineality():
    space = HeightSpace(2, 5)
    h = height_vector(space, (2, 4))
    for gen in space.gens:
        assert sum(a * b for a, b in zip(h, gen)) == 0


def test_f_map_zero():
    chart = TropicalChart(2, 5)
    space = HeightSpace(2, 5)
    assert all(c == 0 for c in f_map(chart, space, (0, 0, 0)))


def test_f_map_piecewise_linear_gr25():
    chart = TropicalChart(2, 5)
    space = HeightSpace(2, 5)
    heights = {J: height_vector(space, J) for J in nonfrozen_subsets(2, 5)}
    rng = random.Random(13)
    st = build_stage(2, 5, 1)
    fan = normal_fan(st.polytope)
    # sample two points in the same maximal cone (positive combos of its rays)
    done = 0
    while done < 6:
        cone = rng.choice(fan.cones)
        rays = [fan.rays[i] for i in cone]
        if len(rays) < 2:
            continue
        c1 = [rng.randint(1, 5) for _ in rays]
        c2 = [rng.randint(1, 5) for _ in rays]
        y1 = tuple(sum(c * r[i] for c, r in zip(c1, rays)) for i in range(3))
        y2 = tuple(sum(c * r[i] for c, r in zip(c2, rays)) for i in range(3))
        mid = tuple(Fraction(a + b, 2) for a, b in zip(y1, y2))
        f1 = f_map(chart, space, y1, heights)
        f2 = f_map(chart, space, y2, heights)
        fm = f_map(chart, space, mid, heights)
        assert fm == tuple(Fraction(a + b, 2) for a, b in zip(f1, f2))
        done += 1


def canon_ray(k, n, a):
    v, _ = clear_to_nonnegative(a, k, n)
    from primefacets.linalg import primitivize

    return primitivize(v)


@pytest.mark.parametrize("k,n", [(2, 5), (2, 6), (3, 6)])
def test_rays_of_stage0_fan_are_roots(k, n):
    st = build_stage(k, n, 0)
    fan = normal_fan(st.polytope, canon=lambda a: canon_ray(k, n, a))
    got = set(fan.rays)
    expected = {canon_ray(k, n, gen_root_vector(k, n, J)) for J in nonfrozen_subsets(k, n)}
    assert got == expected

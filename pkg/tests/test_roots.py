import random
from fractions import Fraction

import pytest

from primefacets.roots import (
    combination_vector,
    quotient_reduce,
    gen_root_vector,
    is_noncrossing,
    is_weakly_separated,
    noncrossing_decompose,
    nonfrozen_subsets,
)


def test_gen_root_table1_rows():
    assert gen_root_vector(3, 6, (1, 2, 4)) == (0, 0, 0, 1, 0, 0)
    assert gen_root_vector(3, 6, (1, 3, 5)) == (1, 0, 0, 0, 1, 0)
    assert gen_root_vector(3, 6, (1, 2, 5)) == (0, 0, 0, 1, 1, 0)
    assert gen_root_vector(3, 6, (1, 3, 6)) == (1, 0, 0, 0, 1, 1)
    assert gen_root_vector(3, 6, (2, 5, 6)) == (0, 1, 1, 0, 0, 0)


def test_gen_root_k2():
    # k=2 specialization: v_{a,b} = e_{1,a} + ... + e_{1,b-2}
    assert gen_root_vector(2, 5, (2, 4)) == (0, 1, 0)
    assert gen_root_vector(2, 5, (1, 3)) == (1, 0, 0)
    assert gen_root_vector(2, 5, (2, 5)) == (0, 1, 1)


def test_gen_root_frozen_rejected():
    with pytest.raises(ValueError):
        gen_root_vector(3, 6, (1, 2, 3))
    with pytest.raises(ValueError):
        gen_root_vector(3, 6, (1, 2, 6))


def test_weak_separation():
    assert is_weakly_separated((1, 2), (1, 3), 4)
    assert not is_weakly_separated((1, 3), (2, 4), 4)
    assert is_weakly_separated((1, 3), (1, 3), 4)


def test_noncrossing_trivial():
    assert is_noncrossing((1, 3, 5), (1, 3, 5), 6)
    # weakly separated pairs are noncrossing
    assert is_noncrossing((1, 2, 4), (1, 2, 5), 6)


def test_noncrossing_vs_chords_gr2():
    # for k=2 noncrossing = classical chord noncrossing on the n-gon
    n = 8

    def chords_cross(I, J):
        (a, b), (c, d) = sorted(I), sorted(J)
        if {a, b} & {c, d}:
            return False
        return (a < c < b < d) or (c < a < d < b)

    for I in nonfrozen_subsets(2, n):
        for J in nonfrozen_subsets(2, n):
            assert is_noncrossing(I, J, n) == (not chords_cross(I, J)), (I, J)


def test_decompose_single_root():
    for J in [(1, 3, 5), (1, 2, 4), (2, 4, 6)]:
        v = gen_root_vector(3, 6, J)
        assert noncrossing_decompose(3, 6, v) == {J: 1}


def test_decompose_zero():
    assert noncrossing_decompose(3, 6, (0,) * 6) == {}


GR312_INPUT = [((1, 5, 9), -1), ((2, 6, 10), 2), ((3, 7, 11), 3), ((4, 8, 12), 4)]

# decomposition as printed in the source example
GR312_PRINTED = {
    (1, 2, 6): 1,
    (2, 8, 10): 1,
    (2, 9, 10): 1,
    (3, 8, 10): 3,
    (4, 6, 10): 2,
    (4, 7, 10): 3,
    (7, 8, 10): 1,
}

# unique decomposition under the Table-1 root convention (verified below by
# exact reconstruction, positivity, pairwise noncrossing, and the DFS oracle)
GR312_VERIFIED = {
    (1, 2, 6): 1,
    (2, 8, 11): 1,
    (2, 11, 12): 1,
    (3, 8, 10): 1,
    (3, 8, 11): 2,
    (4, 6, 12): 2,
    (4, 7, 12): 3,
    (7, 8, 10): 1,
}


def test_decompose_gr312_verified_unique():
    v = combination_vector(3, 12, GR312_INPUT)
    got = noncrossing_decompose(3, 12, v)
    assert got == GR312_VERIFIED
    assert quotient_reduce(3, 12, combination_vector(3, 12, got)) == quotient_reduce(
        3, 12, v
    )
    keys = list(got)
    for i, a in enumerate(keys):
        for b in keys[i + 1 :]:
            assert is_noncrossing(a, b, 12)


def test_decompose_gr312_printed_list_is_erroneous():
    # The printed decomposition does not reconstruct the printed input under
    # the root convention fixed by the source's own Gr(3,6) table, so it
    # cannot be the decomposition of this vector (documented erratum).
    v = combination_vector(3, 12, GR312_INPUT)
    w = combination_vector(3, 12, GR312_PRINTED)
    assert quotient_reduce(3, 12, w) != quotient_reduce(3, 12, v)


@pytest.mark.xfail(
    strict=True,
    reason="paper erratum: the printed (3,12) decomposition does not "
    "reconstruct the printed input (see decisions ledger)",
)
def test_decompose_paper_gr312_term_for_term():
    v = combination_vector(3, 12, GR312_INPUT)
    assert noncrossing_decompose(3, 12, v) == GR312_PRINTED


def test_decompose_output_noncrossing_and_exact():
    rng = random.Random(99)
    for k, n in [(2, 6), (3, 7)]:
        subsets = nonfrozen_subsets(k, n)
        for _ in range(25):
            terms = {}
            for J in rng.sample(subsets, rng.randint(1, 3)):
                terms[J] = rng.randint(1, 4)
            v = combination_vector(k, n, terms)
            got = noncrossing_decompose(k, n, v)
            assert all(c > 0 for c in got.values())
            keys = list(got)
            for i in range(len(keys)):
                for j in range(i + 1, len(keys)):
                    assert is_noncrossing(keys[i], keys[j], n)
            assert quotient_reduce(k, n, combination_vector(k, n, got)) == quotient_reduce(k, n, v)


def test_decompose_homogeneous():
    v = combination_vector(3, 7, [((1, 3, 5), 1), ((2, 4, 6), 2)])
    d1 = noncrossing_decompose(3, 7, v)
    d3 = noncrossing_decompose(3, 7, tuple(3 * x for x in v))
    assert d3 == {J: 3 * c for J, c in d1.items()}


def test_decompose_rational():
    v = combination_vector(2, 6, [((1, 3), Fraction(1, 2)), ((1, 4), Fraction(3, 7))])
    got = noncrossing_decompose(2, 6, v)
    assert quotient_reduce(2, 6, combination_vector(2, 6, got)) == quotient_reduce(2, 6, v)
    assert all(isinstance(c, Fraction) or c > 0 for c in got.values())


def test_roundtrip_noncrossing_collections():
    # generate from known noncrossing collections, verify reconstruction
    rng = random.Random(7)
    for k, n in [(3, 9), (4, 8)]:
        subsets = nonfrozen_subsets(k, n)
        done = 0
        while done < 25:
            collection = []
            for J in rng.sample(subsets, len(subsets)):
                if all(is_noncrossing(J, X, n) for X in collection):
                    collection.append(J)
                if len(collection) == 4:
                    break
            coeffs = {J: rng.randint(1, 5) for J in collection}
            from primefacets.linalg import rank as rk
            from primefacets.roots import gen_root_vector as grv

            if rk([grv(k, n, J) for J in collection]) != len(collection):
                continue
            v = combination_vector(k, n, coeffs)
            got = noncrossing_decompose(k, n, v)
            assert got == coeffs, (k, n, coeffs, got)
            done += 1

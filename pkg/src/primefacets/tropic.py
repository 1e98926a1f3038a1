"""Tropicalized characters, cross-ratios, height vectors, and the chart map.

Tropicalization uses the min convention: Trop(f)(y) = min over the support
of f of <exponent, y>.  Height vectors live in R^{C(n,k)} modulo the
lineality space Lin_{k,n} spanned by the n coordinate-sum vectors; canonical
representatives are obtained by exact orthogonal projection.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .linalg import solve_exact
from .polyring import is_frozen_subset, plucker_eval, web_matrix


@dataclass(frozen=True)
class TropPoly:
    """Min-plus form of a polynomial: just its support."""

    support: tuple  # tuple of exponent tuples

    @staticmethod
    def of(poly):
        if poly.is_zero():
            raise ValueError("tropicalization of the zero polynomial")
        return TropPoly(tuple(sorted(poly.terms)))

    def __call__(self, y):
        return trop_eval(self, y)


def trop_eval(t: TropPoly, y):
    """min over the support of <e, y>."""
    vals = []
    for e in t.support:
        if len(e) != len(y):
            raise ValueError("dimension mismatch")
        vals.append(sum(Fraction(a) * Fraction(b) for a, b in zip(e, y)))
    return min(vals)


class TropicalChart:
    """Tropical Plucker coordinates P_J(y) for a fixed Gr(k, n) chart."""

    def __init__(self, k, n):
        self.k = k
        self.n = n
        w = web_matrix(k, n)
        self.trop = {
            J: TropPoly.of(plucker_eval(w, J))
            for J in combinations(range(1, n + 1), k)
        }

    def P(self, J, y):
        return trop_eval(self.trop[tuple(sorted(J))], y)


def cubical_collection(k, n, J):
    """U(J): shifts j_i + t_i with t_i in {0,1}, t_i = 0 whenever j_i+1 in J,
    entries mod n."""
    J = tuple(sorted(J))
    if is_frozen_subset(J, n):
        raise ValueError(f"{J} is frozen")
    js = set(J)
    free = [i for i, j in enumerate(J) if (j % n) + 1 not in js]
    out = set()
    for bits in range(1 << len(free)):
        t = [0] * len(J)
        for b, i in enumerate(free):
            t[i] = (bits >> b) & 1
        shifted = tuple(sorted((j - 1 + ti) % n + 1 for j, ti in zip(J, t)))
        out.add(shifted)
    return out


def omega(chart: TropicalChart, J, y):
    """Tropical planar cross-ratio: alternating sum of P_{J'} over U(J)."""
    J = tuple(sorted(J))
    total = Fraction(0)
    js = set(J)
    for Jp in cubical_collection(chart.k, chart.n, J):
        sign = (-1) ** (chart.k - len(js & set(Jp)) + 1)
        total += sign * chart.P(Jp, y)
    return total


class HeightSpace:
    """R^{C(n,k)} with its lineality Lin_{k,n} and canonical projection."""

    def __init__(self, k, n):
        self.k = k
        self.n = n
        self.index = {
            J: i for i, J in enumerate(combinations(range(1, n + 1), k))
        }
        self.N = len(self.index)
        gens = []
        for j in range(1, n + 1):
            v = [0] * self.N
            for J, i in self.index.items():
                if j in J:
                    v[i] = 1
            gens.append(v)
        self.gens = gens
        # Gram matrix for exact orthogonal projection onto Lin
        self._gram = [
            [sum(a * b for a, b in zip(gens[i], gens[j])) for j in range(n)]
            for i in range(n)
        ]

    def reduce(self, v):
        """Canonical representative orthogonal to Lin_{k,n}."""
        rhs = [sum(Fraction(x) * g for x, g in zip(v, gen)) for gen in self.gens]
        coeffs = solve_exact(self._gram, rhs)
        if coeffs is None:
            raise RuntimeError("gram system inconsistent")
        out = list(map(Fraction, v))
        for c, gen in zip(coeffs, self.gens):
            if c:
                for i in range(self.N):
                    out[i] -= c * gen[i]
        return tuple(out)


def _L(n, j, x):
    """L_j(x) = sum_{t=1}^{n-1} t * x_{j+t} with cyclic 1-based indices."""
    total = 0
    for t in range(1, n):
        idx = (j - 1 + t) % n
        total += t * x[idx]
    return total


def height_vector(space: HeightSpace, J, reduced=True):
    """h_J = -(1/n) sum_I min_j L_j(e_J - e_I) e^I, canonically reduced."""
    k, n = space.k, space.n
    J = tuple(sorted(J))
    if is_frozen_subset(J, n):
        raise ValueError(f"{J} is frozen")
    eJ = [0] * n
    for j in J:
        eJ[j - 1] += 1
    out = [Fraction(0)] * space.N
    for I, idx in space.index.items():
        x = list(eJ)
        for i in I:
            x[i - 1] -= 1
        m = min(_L(n, j, x) for j in range(1, n + 1))
        out[idx] = -Fraction(m, n)
    return space.reduce(out) if reduced else tuple(out)


def f_map(chart: TropicalChart, space: HeightSpace, y, heights=None):
    """F^(k)_n(y) = sum over nonfrozen J of omega_J(y) h_J, reduced."""
    k, n = chart.k, chart.n
    total = [Fraction(0)] * space.N
    for J in combinations(range(1, n + 1), k):
        if is_frozen_subset(J, n):
            continue
        w = omega(chart, J, y)
        if w == 0:
            continue
        h = heights[J] if heights is not None else height_vector(space, J)
        for i in range(space.N):
            total[i] += w * h[i]
    return space.reduce(total)

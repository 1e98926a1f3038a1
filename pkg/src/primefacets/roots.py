"""Generalized positive roots and the noncrossing decomposition.

Every nonfrozen k-subset J of [n] carries a vector v_J in the flattened
(k-1) x (n-k) chart; pairwise noncrossing collections of such subsets span
the maximal cones of a complete simplicial fan, and every vector decomposes
uniquely with positive coefficients over a single noncrossing collection.
The decomposition is found by walking the fan: start in any maximal cone and
pivot across a wall whenever a coordinate goes negative.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .linalg import rank, solve_exact
from .polyring import is_frozen_subset
from .tableaux import flat_index


def gen_root_vector(k, n, J):
    """v_J = sum over segments of the basis vectors e_{i,t}; J nonfrozen."""
    J = tuple(sorted(J))
    if len(J) != k:
        raise ValueError(f"{J} is not a {k}-subset")
    if is_frozen_subset(J, n):
        raise ValueError(f"{J} is frozen; no generalized root")
    v = [0] * ((k - 1) * (n - k))
    for i in range(1, k):
        lo = J[i - 1] - (i - 1)
        hi = J[i] - (i + 1)
        for t in range(lo, hi + 1):
            v[flat_index(k, n, i, t)] += 1
    return tuple(v)


def nonfrozen_subsets(k, n):
    return [
        J
        for J in combinations(range(1, n + 1), k)
        if not is_frozen_subset(J, n)
    ]


def _cyclic_sign_changes(I, J, n):
    """Number of sign alternations of e_I - e_J read cyclically."""
    diff = [0] * (n + 1)
    for i in I:
        diff[i] += 1
    for j in J:
        diff[j] -= 1
    signs = [diff[v] for v in range(1, n + 1) if diff[v] != 0]
    if not signs:
        return 0
    changes = 0
    for a, b in zip(signs, signs[1:] + signs[:1]):
        if a * b < 0:
            changes += 1
    return changes


def is_weakly_separated(I, J, n=None):
    """e_I - e_J alternates sign at most twice cyclically."""
    I, J = sorted(I), sorted(J)
    if len(I) != len(J):
        raise ValueError("subsets must have equal size")
    if n is None:
        n = max(I[-1], J[-1])
    return _cyclic_sign_changes(I, J, n) <= 2


def is_noncrossing(I, J, n=None):
    """For each window a <= b: weakly separated windows or differing strict
    interiors (the SSW criterion, verbatim)."""
    I, J = sorted(I), sorted(J)
    k = len(I)
    if len(J) != k:
        raise ValueError("subsets must have equal size")
    if n is None:
        n = max(I[-1], J[-1])
    for a in range(k):
        for b in range(a + 1, k):
            wI = I[a : b + 1]
            wJ = J[a : b + 1]
            if is_weakly_separated(wI, wJ, n):
                continue
            if I[a + 1 : b] != J[a + 1 : b]:
                continue
            return False
    return True


def quotient_reduce(k, n, v):
    """Project a flattened (k-1)x(n-k) vector to the per-row quotient by the
    all-ones vector: subtract each row's last entry and drop it, giving
    coordinates in (R^{n-k}/R(1,..,1))^{k-1} of length (k-1)(n-k-1)."""
    w = n - k
    out = []
    for i in range(k - 1):
        row = v[i * w : (i + 1) * w]
        last = row[-1]
        out.extend(x - last for x in row[:-1])
    return tuple(out)


class _RootSystem:
    """Cached per-(k,n) data: roots, quotient vectors, noncrossing table.

    All linear algebra happens in the quotient T^{k-1,n-k}, where the
    noncrossing cones form a complete simplicial fan.
    """

    def __init__(self, k, n):
        self.k = k
        self.n = n
        self.subsets = nonfrozen_subsets(k, n)
        self.vectors = {
            J: quotient_reduce(k, n, gen_root_vector(k, n, J)) for J in self.subsets
        }
        self.dim = (k - 1) * (n - k - 1)
        self._nc = {}

    def noncrossing(self, I, J):
        key = (I, J) if I <= J else (J, I)
        hit = self._nc.get(key)
        if hit is None:
            hit = is_noncrossing(I, J, self.n)
            self._nc[key] = hit
        return hit

    def compatible_with_all(self, J, collection):
        return all(self.noncrossing(J, X) for X in collection)


@lru_cache(maxsize=None)
def _system(k, n):
    return _RootSystem(k, n)


def _solve_in_basis(rs, basis, v):
    """Coefficients of v over {v_J : J in basis}, or None."""
    cols = [rs.vectors[J] for J in basis]
    rows = [[col[r] for col in cols] for r in range(rs.dim)]
    sol = solve_exact(rows, list(v))
    if sol is None:
        return None
    # confirm exactness (solve_exact zero-fills free variables)
    for r in range(rs.dim):
        if sum(c * s for c, s in zip(rows[r], sol)) != v[r]:
            return None
    return sol


def _greedy_maximal_collection(rs):
    """A maximal pairwise-noncrossing collection spanning the whole space."""
    chosen = []
    for J in rs.subsets:
        if rs.compatible_with_all(J, chosen):
            cand = chosen + [J]
            if rank([rs.vectors[X] for X in cand]) == len(cand):
                chosen = cand
                if len(chosen) == rs.dim:
                    break
    if len(chosen) != rs.dim:
        raise RuntimeError("failed to build an initial maximal simplex")
    return chosen


def _wall_neighbor(rs, simplex, drop):
    """The unique other root completing simplex - drop to a maximal cone."""
    wall = [J for J in simplex if J != drop]
    for X in rs.subsets:
        if X == drop or X in wall:
            continue
        if not rs.compatible_with_all(X, wall):
            continue
        sol = _solve_in_basis(rs, wall + [X], rs.vectors[drop])
        if sol is None:
            continue
        # X lies on the other side of the wall iff drop's expansion over
        # wall + X gives X a negative coefficient
        if sol[-1] < 0:
            return X
    return None


def noncrossing_decompose(k, n, v):
    """The unique noncrossing decomposition v = sum c_J v_J with c_J > 0
    (equality in the quotient modulo per-row all-ones vectors).

    Accepts a full flattened (k-1)(n-k) vector or an already-reduced
    (k-1)(n-k-1) vector, integer or rational.  Walks the noncrossing fan,
    flipping across the wall of the most negative coordinate; falls back to
    exhaustive DFS on pathological walks.
    """
    rs = _system(k, n)
    v = tuple(Fraction(x) for x in v)
    if len(v) == (k - 1) * (n - k):
        v = quotient_reduce(k, n, v)
    if len(v) != rs.dim:
        raise ValueError(f"vector must have length {rs.dim} or {(k-1)*(n-k)}")
    if not any(v):
        return {}
    simplex = _greedy_maximal_collection(rs)
    seen = set()
    for _ in range(200000):
        key = frozenset(simplex)
        if key in seen:
            break  # cycling: give up on the walk, fall back to DFS
        seen.add(key)
        sol = _solve_in_basis(rs, simplex, v)
        if sol is None:
            raise RuntimeError("simplex basis failed to span; predicate bug")
        neg = [(c, i) for i, c in enumerate(sol) if c < 0]
        if not neg:
            out = {}
            for J, c in zip(simplex, sol):
                if c != 0:
                    out[J] = c
            return out
        _, i = min(neg)
        nxt = _wall_neighbor(rs, simplex, simplex[i])
        if nxt is None:
            break
        simplex = [J for J in simplex if J != simplex[i]] + [nxt]
    return _decompose_dfs(rs, v)


def _decompose_dfs(rs, v):
    """Exhaustive search over noncrossing collections (small cases only)."""

    def rec(collection, start):
        sol = None
        if collection:
            cols = [rs.vectors[J] for J in collection]
            rows = [[c[r] for c in cols] for r in range(rs.dim)]
            sol = solve_exact(rows, list(v))
            if sol is not None and all(c > 0 for c in sol):
                if all(
                    sum(c * col[r] for c, col in zip(sol, cols)) == v[r]
                    for r in range(rs.dim)
                ):
                    return dict(zip(collection, sol))
        if len(collection) >= rs.dim:
            return None
        for idx in range(start, len(rs.subsets)):
            X = rs.subsets[idx]
            if rs.compatible_with_all(X, collection):
                hit = rec(collection + [X], idx + 1)
                if hit is not None:
                    return hit
        return None

    hit = rec([], 0)
    if hit is None:
        raise RuntimeError(
            "no noncrossing decomposition found; fan completeness violated"
        )
    return hit


def combination_vector(k, n, terms):
    """Evaluate sum c_J v_J for {J: c} or [(J, c)] input."""
    rs = _system(k, n)
    v = [Fraction(0)] * rs.dim
    items = terms.items() if isinstance(terms, dict) else terms
    for J, c in items:
        J = tuple(sorted(J))
        vec = rs.vectors.get(J)
        if vec is None:
            vec = gen_root_vector(k, n, J)
        for r in range(rs.dim):
            v[r] += Fraction(c) * vec[r]
    return tuple(v)

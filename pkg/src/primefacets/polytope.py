"""Exact rational polyhedral kernel.

Convex hulls / facet enumeration are computed by an incremental
beneath-beyond insertion that keeps non-simplicial facets merged: a new facet
through an inserted point p and a horizon ridge (shared by a visible facet f
and a hidden facet g) has hyperplane

    H_new = slack_g(p) * H_f  -  slack_f(p) * H_g,

which is integer-exact, so no determinant solves are needed in the hot path.
Visibility tests run as int64 numpy mat-vecs with an overflow guard and an
arbitrary-precision fallback.  Minkowski sums fold summands one at a time;
since refining a normal fan never removes rays or maximal cones, the
intermediate facet/vertex counts never exceed the final ones.

Inequalities are stored as (a, b) meaning a.x >= b with a a primitive integer
vector; outward normals are -a.  Equations are (a, b) with a.x = b.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from .linalg import hnf, primitivize, reduce_mod_lattice, reduce_mod_rowspace, vec_gcd

_INT64_GUARD = 2**62


@dataclass(frozen=True)
class PolytopeV:
    """V-representation: a finite point set (not necessarily irredundant)."""

    dim: int
    points: tuple

    def __post_init__(self):
        if not self.points:
            raise ValueError("empty point set")
        for p in self.points:
            if len(p) != self.dim:
                raise ValueError("point of wrong dimension")


@dataclass(frozen=True)
class Facet:
    normal: tuple  # primitive integer a, inequality a.x >= offset
    offset: object  # int (or Fraction for scaled rational input)
    vertex_indices: frozenset


@dataclass
class Polytope:
    """Full dual description: exact vertices, equations, irredundant facets."""

    dim: int
    vertices: list  # sorted list of integer (or Fraction) tuples
    equations: list  # [(a, b)] with a.x = b, HNF-canonical
    facets: list  # [Facet], sorted by (normal, offset)

    @property
    def inequalities(self):
        return [(f.normal, f.offset) for f in self.facets]

    @property
    def affine_dim(self):
        return self.dim - len(self.equations)

    def facet_count(self):
        return len(self.facets)

    def to_json(self):
        def num(x):
            return str(x) if isinstance(x, Fraction) else int(x)

        return {
            "dim": self.dim,
            "equations": [[*map(num, a), num(b)] for a, b in self.equations],
            "inequalities": [[*map(num, f.normal), num(f.offset)] for f in self.facets],
            "vertices": [[str(c) for c in v] for v in self.vertices],
        }


def _as_int_points(points):
    """Scale rational points to integers; returns (int_points, scale)."""
    den = 1
    for p in points:
        for c in p:
            f = Fraction(c)
            den = den * f.denominator // gcd(den, f.denominator)
    if den == 1:
        return [tuple(int(c) for c in p) for p in points], 1
    return [tuple(int(Fraction(c) * den) for c in p) for p in points], den


class _Echelon:
    """Incremental exact echelon basis for integer rows (rank tracking)."""

    __slots__ = ("rows", "pivots")

    def __init__(self):
        self.rows = []
        self.pivots = []

    def residual(self, row):
        row = [Fraction(x) for x in row]
        for r, pc in zip(self.rows, self.pivots):
            f = row[pc]
            if f:
                row = [a - f * b for a, b in zip(row, r)]
        return row

    def add(self, row):
        """Reduce row against the basis; add if independent.  Returns bool."""
        row = self.residual(row)
        for pc, x in enumerate(row):
            if x:
                row = [v / x for v in row]
                self.rows.append(row)
                self.pivots.append(pc)
                return True
        return False

    @property
    def rank(self):
        return len(self.rows)


def _affine_rank_at_least(points, target):
    """True iff the affine hull of `points` has dimension >= target."""
    if target <= 0:
        return len(points) >= 1
    it = iter(points)
    try:
        p0 = next(it)
    except StopIteration:
        return False
    ech = _Echelon()
    for p in it:
        if ech.add([a - b for a, b in zip(p, p0)]) and ech.rank >= target:
            return True
    return False


def _ff_rank_rows(rows, target=None, seed_rows=None):
    """Fraction-free integer row reduction; returns the rank (stops early at
    `target`).  `rows` is an iterable of int sequences."""
    basis = []  # list of (pivot_col, row) with integer entries
    if seed_rows:
        for r in seed_rows:
            _ff_add(basis, list(r))
    for r in rows:
        if _ff_add(basis, list(r)) and target is not None and len(basis) >= target:
            return len(basis)
    return len(basis)


def _ff_add(basis, row):
    """Reduce an integer row against a fraction-free basis; append if new."""
    for pc, brow in basis:
        x = row[pc]
        if x:
            p = brow[pc]
            row = [a * p - b * x for a, b in zip(row, brow)]
    for pc, x in enumerate(row):
        if x:
            g = vec_gcd(row)
            if g > 1:
                row = [v // g for v in row]
            basis.append((pc, row))
            return True
    return False


def _rows_rank_at_least(rows, target):
    """Exact test rank(rows) >= target.

    ndarray input runs vectorized Bareiss elimination in int64 with an
    overflow guard; oversized or list input falls back to the greedy
    fraction-free scan.
    """
    if target <= 0:
        return True
    if len(rows) < target:
        return False
    if isinstance(rows, np.ndarray) and rows.dtype == np.int64:
        r = _bareiss_rank(rows, target)
        if r is not None:
            return r
    basis = []
    for r in rows:
        row = [int(x) for x in r]
        if _ff_add(basis, row) and len(basis) >= target:
            return True
    return False


_BAREISS_GUARD = 2**31


def _bareiss_rank(mat, target):
    """True/False if rank >= target decided in int64; None on overflow risk.

    Fraction-free Gaussian elimination with exact division by the previous
    pivot; rows are gcd-normalized when entries grow.
    """
    R = mat.copy()
    m, d = R.shape
    rank = 0
    prev = 1
    for col in range(d):
        if rank >= target or rank >= m:
            break
        sub = R[rank:, col]
        nz = np.nonzero(sub)[0]
        if not len(nz):
            continue
        pr = rank + int(nz[np.argmin(np.abs(sub[nz]))])
        if pr != rank:
            R[[rank, pr]] = R[[pr, rank]]
        piv = int(R[rank, col])
        if rank + 1 < m:
            block = R[rank + 1 :]
            mx = int(np.abs(block).max(initial=0))
            if abs(piv) * mx + mx * int(np.abs(R[rank]).max()) >= _BAREISS_GUARD * abs(prev):
                # entries would overflow; normalize rows by gcd and retry once
                g = np.gcd.reduce(np.abs(block), axis=1)
                g[g == 0] = 1
                R[rank + 1 :] = block // g[:, None]
                block = R[rank + 1 :]
                mx = int(np.abs(block).max(initial=0))
                if abs(piv) * mx + mx * int(np.abs(R[rank]).max()) >= _BAREISS_GUARD * abs(prev):
                    return None
            R[rank + 1 :] = (block * piv - np.outer(block[:, col], R[rank])) // prev
        prev = piv
        rank += 1
        if rank >= target:
            return True
    return rank >= target


class _HullEngine:
    """Incremental convex hull in full-dimensional reduced coordinates."""

    def __init__(self, dim):
        self.d = dim
        self.pts = []  # reduced integer tuples, by vertex id
        self.payload = []  # caller data per vertex id
        self.facets = {}  # key (a, b) -> set of vertex ids
        self.facets_of = {}  # vertex id -> set of facet keys
        self.deleted = set()  # vertex ids no longer on any facet
        self._mat = None  # cached numpy facet matrix
        self._mat_keys = None
        self._pts_np = np.empty((0, dim), dtype=np.int64)
        # per-facet incremental fraction-free echelon of vset diffs: rank
        # d-1 marks a genuine facet, lower ranks are dormant inequalities
        self.fbasis = {}  # key -> (anchor_vid, basis rows)
        self._ridge_cache = {}  # (fkey, gkey) -> (|Vf|, |Vg|, is_ridge)
        self._interior = None  # (numerator vector, denominator)

    def pts_np(self):
        if len(self._pts_np) < len(self.pts):
            extra = np.array(self.pts[len(self._pts_np) :], dtype=np.int64)
            self._pts_np = (
                np.vstack([self._pts_np, extra]) if len(self._pts_np) else extra
            )
        return self._pts_np

    # -- setup ---------------------------------------------------------------

    def seed(self, simplex_pts, payloads):
        d = self.d
        assert len(simplex_pts) == d + 1
        for p, pay in zip(simplex_pts, payloads):
            self._register(p, pay)
        csum = [sum(p[i] for p in simplex_pts) for i in range(d)]
        self._interior = (csum, d + 1)
        for drop in range(d + 1):
            rest = [i for i in range(d + 1) if i != drop]
            a, b = self._hyperplane_through([self.pts[i] for i in rest])
            # orient so the dropped vertex satisfies a.x >= b strictly
            s = self._dot(a, self.pts[drop]) - b
            if s == 0:
                raise ValueError("seed simplex is degenerate")
            if s < 0:
                a, b = tuple(-x for x in a), -b
            self._add_facet((a, b), set(rest))

    def _register(self, p, payload):
        self.pts.append(tuple(p))
        self.payload.append(payload)
        self.facets_of[len(self.pts) - 1] = set()
        return len(self.pts) - 1

    @staticmethod
    def _dot(a, p):
        return sum(x * y for x, y in zip(a, p))

    def _hyperplane_through(self, pts):
        """Primitive (a, b) with a.x = b on all pts (pts affinely span d-1)."""
        from .linalg import nullspace

        p0 = pts[0]
        rows = [[x - y for x, y in zip(p, p0)] for p in pts[1:]]
        cand = nullspace(rows, self.d)
        if len(cand) != 1:
            raise ValueError("points do not span a hyperplane")
        a = tuple(cand[0])
        return a, self._dot(a, p0)

    # -- facet bookkeeping ----------------------------------------------------

    def _add_facet(self, key, vset):
        self.facets[key] = set(vset)
        for v in vset:
            self.facets_of[v].add(key)
        ids = iter(sorted(vset))
        anchor = next(ids)
        basis = []
        ap = self.pts[anchor]
        for q in ids:
            qp = self.pts[q]
            if _ff_add(basis, [x - y for x, y in zip(qp, ap)]) and len(
                basis
            ) >= self.d - 1:
                break
        self.fbasis[key] = (anchor, basis)
        self._mat = None

    def facet_rank(self, key):
        return len(self.fbasis[key][1])

    def _facet_add_vertex(self, key, q):
        self.facets[key].add(q)
        self.facets_of[q].add(key)
        anchor, basis = self.fbasis[key]
        if len(basis) < self.d - 1:
            ap = self.pts[anchor]
            qp = self.pts[q]
            _ff_add(basis, [x - y for x, y in zip(qp, ap)])

    def _del_facet(self, key):
        for v in self.facets.pop(key):
            self.facets_of[v].discard(key)
        del self.fbasis[key]
        if len(self._ridge_cache) > 400000:
            self._ridge_cache.clear()
        self._mat = None

    def _matrix(self):
        if self._mat is None:
            keys = list(self.facets)
            rows = [list(a) + [-b] for a, b in keys]
            maxabs = max((abs(x) for r in rows for x in r), default=0)
            self._mat_keys = keys
            self._mat = (np.array(rows, dtype=np.int64), maxabs)
        return self._mat_keys, self._mat

    def slacks_block(self, block):
        """Slack matrix (npts x nfacets) for integer point block, exact."""
        keys, (mat, maxabs) = self._matrix()
        pts = block if isinstance(block, np.ndarray) else np.asarray(block, dtype=np.int64)
        hom = np.hstack([pts, np.ones((len(pts), 1), dtype=np.int64)])
        pmax = int(np.abs(hom).max(initial=0))
        if maxabs and pmax and maxabs * pmax * (self.d + 1) >= _INT64_GUARD:
            out = [
                [self._dot(a, tuple(int(x) for x in p)) - b for (a, b) in keys]
                for p in block
            ]
            return keys, out
        return keys, hom @ mat.T

    # -- insertion -------------------------------------------------------------

    def insert(self, p, payload):
        """Insert one point; returns True if it extended the hull."""
        keys, slk = self.slacks_block([p])
        row = slk[0]
        visible = []
        coplanar = []
        for key, s in zip(keys, row):
            s = int(s)
            if s < 0:
                visible.append(key)
            elif s == 0:
                coplanar.append(key)
        if not visible:
            return False
        vid = self._register(p, payload)
        self._extend(vid, visible, coplanar)
        return True

    def _extend(self, vid, visible, coplanar):
        p = self.pts[vid]
        visible_set = set(visible)
        slack_cache = {}

        def slack(key):
            if key not in slack_cache:
                a, b = key
                slack_cache[key] = self._dot(a, p) - b
            return slack_cache[key]

        pool = set()
        for f in visible:
            pool |= self.facets[f]
        if self.d == 1:
            counters = {
                f: {g: 0 for g in self.facets if g not in visible_set}
                for f in visible
            }
        else:
            from collections import Counter

            counters = {f: Counter() for f in visible}
            for v in pool:
                vf = self.facets_of[v]
                vis_v = vf & visible_set
                if not vis_v:
                    continue
                hid = vf - visible_set
                if not hid:
                    continue
                for f in vis_v:
                    counters[f].update(hid)
        new_keys = set()
        for f in visible:
            sf = slack(f)
            fv = self.facets[f]
            counts = counters[f]
            af, bf = f
            lenf = len(fv)
            for g, c in counts.items():
                if c < self.d - 1:
                    continue
                sg = slack(g)
                if sg == 0:
                    continue  # coplanar neighbour keeps its hyperplane
                if self.d >= 3:
                    gv = self.facets[g]
                    ck = (f, g) if f < g else (g, f)
                    hit = self._ridge_cache.get(ck)
                    if hit is None or hit[0] != lenf or hit[1] != len(gv):
                        shared = sorted(fv & gv)
                        coords = self.pts_np()[shared]
                        ok = _rows_rank_at_least(coords[1:] - coords[0], self.d - 2)
                        hit = (lenf, len(gv), ok)
                        self._ridge_cache[ck] = hit
                    if not hit[2]:
                        continue
                ag, bg = g
                a = tuple(sg * x - sf * y for x, y in zip(af, ag))
                b = sg * bf - sf * bg
                g0 = vec_gcd(a + (b,))
                if g0 > 1:
                    a = tuple(x // g0 for x in a)
                    b = b // g0
                new_keys.add((a, b))
        for f in visible:
            self._del_facet(f)
        for g in coplanar:
            self._facet_add_vertex(g, vid)
        pool.add(vid)
        added = 0
        if new_keys:
            pool_ids = sorted(pool)
            coords = self.pts_np()[pool_ids]
            keys = sorted(new_keys)
            try:
                amat = np.array([k[0] for k in keys], dtype=np.int64)
                bvec = np.array([k[1] for k in keys], dtype=np.int64)
                maxa = int(np.abs(amat).max(initial=0))
                maxp = int(np.abs(coords).max(initial=0))
                safe = not (maxa and maxp and maxa * maxp * self.d >= _INT64_GUARD)
            except OverflowError:
                safe = False
            tight_cols = coords @ amat.T == bvec[None, :] if safe else None
            for ki, key in enumerate(keys):
                a, b = key
                if tight_cols is None:
                    vset = {q for q in pool_ids if self._dot(a, self.pts[q]) == b}
                else:
                    vset = {pool_ids[i] for i in np.nonzero(tight_cols[:, ki])[0]}
                if key in self.facets:
                    for q in vset - self.facets[key]:
                        self._facet_add_vertex(key, q)
                    self._mat = None
                    added += 1
                    continue
                self._add_facet(key, vset)
                added += 1
        if not added and not coplanar:
            raise RuntimeError("horizon not found; hull invariant broken")
        # vertices swallowed entirely lose all facets
        for v in list(pool):
            if not self.facets_of[v] and v != vid:
                self.deleted.add(v)

    def drop_dormant(self):
        """Delete inequalities whose tight sets never reached facet rank."""
        for key in list(self.facets):
            if len(self.fbasis[key][1]) < self.d - 1:
                self._del_facet(key)
        for v in list(self.facets_of):
            if not self.facets_of[v] and v not in self.deleted:
                self.deleted.add(v)

    def insert_block(self, block, payloads):
        """Insert many points; slacks are batched, stale discards are safe.

        `block` may be a list of int tuples or an int64 ndarray; `payloads`
        anything indexable (tuples are materialized only for survivors).
        """
        if not len(block):
            return
        keys, slk = self.slacks_block(block)
        if isinstance(slk, np.ndarray):
            survivors = np.nonzero((slk < 0).any(axis=1))[0]
        else:
            survivors = [i for i, row in enumerate(slk) if any(s < 0 for s in row)]
        for i in survivors:
            p = tuple(int(x) for x in block[i])
            pay = payloads[i]
            if not isinstance(pay, tuple):
                pay = tuple(int(x) for x in pay)
            self.insert(p, pay)

    # -- results ----------------------------------------------------------------

    def live_vertex_ids(self):
        return [
            v
            for v in range(len(self.pts))
            if v not in self.deleted and self.facets_of[v]
        ]

    def true_vertex_ids(self):
        """Vertex ids whose tight facet normals span the full dimension."""
        out = []
        for v in self.live_vertex_ids():
            fk = self.facets_of[v]
            if len(fk) < self.d:
                continue
            try:
                rows = np.array([a for a, _ in fk], dtype=np.int64)
            except OverflowError:
                rows = [list(a) for a, _ in fk]
            if _rows_rank_at_least(rows, self.d):
                out.append(v)
        return out


def _initial_simplex_ids(points, d):
    """Indices of d+1 affinely independent points (float-assisted, exact)."""
    order = sorted(range(len(points)), key=lambda i: points[i])
    ids = [order[0]]
    ech = _Echelon()
    p0 = points[order[0]]
    for i in order[1:]:
        if len(ids) == d + 1:
            break
        if ech.add([a - b for a, b in zip(points[i], p0)]):
            ids.append(i)
    if len(ids) != d + 1:
        raise ValueError("points do not span the expected dimension")
    return ids


def affine_hull(points):
    """Equations and pivot coordinates of the affine hull of integer points.

    Returns (equations, pivot_cols): equations are primitive (a, b) rows in
    HNF-canonical form; pivot_cols is a coordinate subset restricting to
    which is injective on the affine hull.
    """
    from .linalg import nullspace

    dim = len(points[0])
    p0 = points[0]
    ech = _Echelon()
    for p in points[1:]:
        ech.add([a - b for a, b in zip(p, p0)])
        if ech.rank == dim:
            break
    pivot_cols = list(ech.pivots)
    # nullspace of the diff span = equation normals; the echelon rows span
    # the same space as the diffs, so feed those to the exact nullspace
    eqs = []
    if ech.rank < dim:
        for a in nullspace([list(r) for r in ech.rows], dim):
            eqs.append((tuple(a), sum(x * y for x, y in zip(a, p0))))
    if eqs:
        rows = [list(a) + [b] for a, b in eqs]
        eqs = [(tuple(r[:-1]), r[-1]) for r in hnf(rows)]
    return eqs, pivot_cols


def _lift_inequality(a_red, b, pivot_cols, dim, eq_red):
    """Ambient representative of a reduced-coordinate inequality, canonical
    modulo the rational span of the equation rows."""
    a = [0] * dim
    for x, c in zip(a_red, pivot_cols):
        a[c] = x
    ab = list(a) + [b]
    if eq_red is not None:
        ab = list(reduce_mod_rowspace(ab, None, red=eq_red))
    g = vec_gcd(ab[:-1])
    if g > 1:
        bq = Fraction(ab[-1], g)
        ab = [x // g for x in ab[:-1]] + [int(bq) if bq.denominator == 1 else bq]
    return tuple(ab[:-1]), ab[-1]


def hull(points) -> Polytope:
    """Exact irredundant H-representation (+ facet/vertex incidence) of the
    convex hull of a finite point set."""
    pts = list({tuple(p) for p in points})
    if not pts:
        raise ValueError("hull of an empty point set")
    ipts, scale = _as_int_points(pts)
    dim = len(ipts[0])
    eqs, pivot_cols = affine_hull(ipts)
    d = len(pivot_cols)
    if d == 0:
        v = _unscale_point(ipts[0], scale)
        return Polytope(dim, [v], _unscale_equations(eqs, scale), [])
    red = [tuple(p[c] for c in pivot_cols) for p in ipts]
    engine = _HullEngine(d)
    seed_ids = _initial_simplex_ids(red, d)
    engine.seed([red[i] for i in seed_ids], [ipts[i] for i in seed_ids])
    rest = [i for i in range(len(red)) if i not in set(seed_ids)]
    rest.sort(key=lambda i: red[i], reverse=True)
    block = 4096
    for start in range(0, len(rest), block):
        chunk = rest[start : start + block]
        engine.insert_block([red[i] for i in chunk], [ipts[i] for i in chunk])
    return _finalize(engine, dim, scale, eqs, pivot_cols)


def _unscale_point(p, scale):
    if scale == 1:
        return tuple(p)
    return tuple(Fraction(c, scale) for c in p)


def _unscale_equations(eqs, scale):
    if scale == 1:
        return list(eqs)
    out = []
    for a, b in eqs:
        fb = Fraction(b, scale)
        # clear denominators of (a, b) jointly
        den = fb.denominator
        a2 = tuple(x * den for x in a)
        g = vec_gcd(a2 + (int(fb * den),))
        out.append((tuple(x // g for x in a2), int(fb * den) // g))
    return out


def _finalize(engine, dim, scale, eqs, pivot_cols) -> Polytope:
    from .linalg import rref

    engine.drop_dormant()
    eq_red = rref([list(a) + [b] for a, b in eqs]) if eqs else None
    true_ids = engine.true_vertex_ids()
    amb = {v: engine.payload[v] for v in true_ids}
    verts = sorted(amb.values())
    index_of = {v: i for i, v in enumerate(verts)}
    facets = []
    for (a_red, b), vset in engine.facets.items():
        a, b2 = _lift_inequality(a_red, b, pivot_cols, dim, eq_red)
        vi = frozenset(index_of[engine.payload[v]] for v in vset if v in amb)
        facets.append(Facet(a, b2, vi))
    facets.sort(key=lambda f: (f.normal, f.offset))
    if scale != 1:
        verts = [_unscale_point(v, scale) for v in verts]
        facets = [
            Facet(f.normal, Fraction(f.offset, scale), f.vertex_indices) for f in facets
        ]
        eqs = _unscale_equations(eqs, scale)
        facets = [_rescale_facet(f) for f in facets]
    return Polytope(dim, verts, list(eqs), facets)


def _rescale_facet(f: Facet) -> Facet:
    g = vec_gcd(f.normal)
    a, b = f.normal, Fraction(f.offset)
    if g > 1:
        a = tuple(x // g for x in a)
        b = b / g
    if b.denominator == 1:
        b = int(b)
    return Facet(a, b, f.vertex_indices)


def newton_polytope(poly) -> PolytopeV:
    """Support of a nonzero sparse polynomial as a point set."""
    if poly.is_zero():
        raise ValueError("Newton polytope of the zero polynomial")
    pts = tuple(sorted(poly.terms))
    return PolytopeV(poly.nvars, pts)


def minkowski_sum(summands, progress=None) -> Polytope:
    """Exact Minkowski sum of point sets (PolytopeV or iterables of points).

    Folds summands smallest-first with an exact hull after every step, so the
    working vertex set stays irredundant (up to hull-engine supersets).
    """
    sets = []
    for s in summands:
        pts = s.points if isinstance(s, PolytopeV) else tuple(s)
        ipts, scale = _as_int_points(pts)
        if scale != 1:
            raise ValueError("minkowski_sum expects integer (lattice) points")
        sets.append(sorted(set(ipts)))
    if not sets:
        raise ValueError("empty Minkowski sum")
    dim = len(sets[0][0])
    if any(len(s[0]) != dim for s in sets):
        raise ValueError("dimension mismatch among summands")
    shift = [0] * dim
    big = []
    for s in sets:
        if len(s) == 1:
            shift = [a + b for a, b in zip(shift, s[0])]
        else:
            big.append(s)
    big.sort(key=len)
    if not big:
        p = tuple(shift)
        eqs, _ = affine_hull([p])
        return Polytope(dim, [p], eqs, [])
    current = [tuple(x + y for x, y in zip(p, shift)) for p in big[0]]
    cur_poly = hull(current)
    current = _vertex_points(cur_poly)
    for step, s in enumerate(big[1:], start=2):
        if progress:
            progress(f"minkowski fold {step}/{len(big)}: |V|={len(current)} x |S|={len(s)}")
        cur_poly = _fold_step(current, s)
        current = _vertex_points(cur_poly)
    return cur_poly


def _vertex_points(poly: Polytope):
    return [tuple(int(c) for c in v) for v in poly.vertices]


def _fold_step(vpts, spts) -> Polytope:
    dim = len(vpts[0])
    # affine hull of the sum = sum of affine hulls; seed a simplex a priori
    v0, s0 = vpts[0], spts[0]
    ech = _Echelon()
    seed_pts = [tuple(a + b for a, b in zip(v0, s0))]
    for v in vpts[1:]:
        if ech.add([a - b for a, b in zip(v, v0)]):
            seed_pts.append(tuple(a + b for a, b in zip(v, s0)))
    for s in spts[1:]:
        if ech.add([a - b for a, b in zip(s, s0)]):
            seed_pts.append(tuple(a + b for a, b in zip(v0, s)))
    d = ech.rank
    eqs, pivot_cols = affine_hull(seed_pts) if d else ([], [])
    if d == 0:
        p = seed_pts[0]
        eqs, _ = affine_hull([p])
        return Polytope(dim, [p], eqs, [])
    engine = _HullEngine(d)
    red_seed = [tuple(p[c] for c in pivot_cols) for p in seed_pts]
    engine.seed(red_seed, seed_pts)
    varr = np.array(vpts, dtype=np.int64)
    order = sorted(range(len(spts)), key=lambda i: spts[i], reverse=True)
    piv = list(pivot_cols)
    for si in order:
        s = spts[si]
        block_amb = varr + np.array(s, dtype=np.int64)
        engine.insert_block(block_amb[:, piv], block_amb)
    return _finalize(engine, dim, 1, eqs, pivot_cols)


def face_minimizing(poly: Polytope, gamma):
    """Vertex subset minimizing the linear functional gamma, with codimension."""
    if not poly.vertices:
        raise ValueError("empty polytope")
    vals = [sum(Fraction(g) * Fraction(c) for g, c in zip(gamma, v)) for v in poly.vertices]
    m = min(vals)
    face = [i for i, v in enumerate(vals) if v == m]
    pts = [poly.vertices[i] for i in face]
    # affine dims
    face_dim = _affine_dim(pts)
    codim = poly.affine_dim - face_dim
    return face, codim


def _affine_dim(pts):
    if len(pts) <= 1:
        return 0
    p0 = pts[0]
    ech = _Echelon()
    for p in pts[1:]:
        ech.add([Fraction(a) - Fraction(b) for a, b in zip(p, p0)])
    return ech.rank


def is_simple(poly: Polytope) -> bool:
    """Every vertex tight on exactly affine_dim facets."""
    d = poly.affine_dim
    counts = [0] * len(poly.vertices)
    for f in poly.facets:
        for v in f.vertex_indices:
            counts[v] += 1
    return all(c == d for c in counts)


@dataclass(frozen=True)
class NormalFan:
    rays: tuple  # primitive inner normals, canonical modulo lineality
    cones: tuple  # one frozenset of ray indices per vertex (maximal cones)


def normal_fan(poly: Polytope, canon=None) -> NormalFan:
    """Rays (facet inner normals mod lineality) and maximal cones per vertex."""
    if canon is None:
        from .linalg import rref

        eq_red = rref([list(a) for a, _ in poly.equations]) if poly.equations else None

        def canon(a):
            if eq_red is not None:
                a = reduce_mod_rowspace(a, None, red=eq_red)
            return primitivize(a)

    rays = []
    ray_index = {}
    facet_ray = []
    for f in poly.facets:
        r = canon(f.normal)
        if r not in ray_index:
            ray_index[r] = len(rays)
            rays.append(r)
        facet_ray.append(ray_index[r])
    cones = []
    for vi in range(len(poly.vertices)):
        cone = frozenset(
            facet_ray[fi] for fi, f in enumerate(poly.facets) if vi in f.vertex_indices
        )
        cones.append(cone)
    return NormalFan(tuple(rays), tuple(cones))

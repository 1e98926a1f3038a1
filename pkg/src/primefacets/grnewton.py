"""Newton polytopes N^(d)_{k,n} for Grassmannian cluster algebras.

Stage 0 multiplies the characters of the n cyclic shifts of the one-column
tableau {1,...,k-1,k+1}; stage 1 multiplies all Plucker coordinates; stage
d+1 multiplies the characters of the facet tableaux of stage d.  Facets are
converted to tableaux by clearing negative entries with the per-row all-ones
equation normals and reading the result in the fundamental-tableau basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import tableaux as tb
from .polyring import SparsePolynomial, is_frozen_subset, plucker_eval, web_matrix
from .polytope import (
    Facet,
    Polytope,
    face_minimizing,
    minkowski_sum,
    newton_polytope,
)


class MissingCharacterError(KeyError):
    def __init__(self, tableau):
        self.tableau = tableau
        super().__init__(f"no character available for tableau {tableau}")


class CharTable:
    """Tableau -> character polynomial (evaluated on the web matrix).

    Lookups fall back to the reduced tableau and then to factoring the
    tableau into stored entries (characters multiply along such a
    factorization; in finite type this is the honest character).
    """

    def __init__(self, k, n, entries=None):
        self.k = k
        self.n = n
        self.entries = {}
        if entries:
            for t, p in entries.items() if isinstance(entries, dict) else entries:
                self.add(t, p)

    def add(self, t: tb.Tableau, poly: SparsePolynomial):
        if not poly.coefficients_positive():
            raise ValueError(f"character of {t} has nonpositive coefficients")
        self.entries[t] = poly

    def __contains__(self, t):
        return t in self.entries or tb.reduce(t) in self.entries

    def char_for(self, t: tb.Tableau, strict=False) -> SparsePolynomial:
        """Character of t.  With strict=True only stored entries (or the
        reduced tableau) are used; otherwise composite tableaux may be
        factored into stored entries and the characters multiplied."""
        if t in self.entries:
            return self.entries[t]
        r = tb.reduce(t)
        if r in self.entries:
            return self.entries[r]
        if r.is_empty():
            nvars = (self.k - 1) * (self.n - self.k)
            return SparsePolynomial.constant(nvars, 1)
        if strict:
            raise MissingCharacterError(r)
        prod = self._factor(r)
        if prod is None:
            raise MissingCharacterError(r)
        return prod

    def _factor(self, t: tb.Tableau):
        """DFS factorization of t into stored tableaux; product of their chars."""
        candidates = [
            (s, p)
            for s, p in self.entries.items()
            if not s.is_empty() and s.width <= t.width
        ]
        nvars = (self.k - 1) * (self.n - self.k)

        def rec(rem: tb.Tableau):
            if rem.is_empty():
                return SparsePolynomial.constant(nvars, 1)
            for s, p in candidates:
                try:
                    quot = rem.divide(s)
                except ValueError:
                    continue
                sub = rec(quot)
                if sub is not None:
                    return p * sub
            return None

        return rec(t)

    def to_json(self):
        return {
            "k": self.k,
            "n": self.n,
            "entries": [
                {"tableau": t.to_json(), "poly": p.to_json()}
                for t, p in sorted(self.entries.items(), key=lambda kv: str(kv[0]))
            ],
        }

    @staticmethod
    def from_json(data):
        table = CharTable(data["k"], data["n"])
        for e in data["entries"]:
            table.add(
                tb.Tableau.from_json(e["tableau"]),
                SparsePolynomial.from_json(e["poly"]),
            )
        return table


def plucker_char_table(k, n) -> CharTable:
    """Characters of all one-column tableaux: the Plucker evaluations."""
    w = web_matrix(k, n)
    table = CharTable(k, n)
    for J in combinations(range(1, n + 1), k):
        table.add(tb.Tableau.one_column(k, n, J), plucker_eval(w, J))
    return table


def t0_tableaux(k, n):
    """Cyclic shifts of the one-column tableau {1,...,k-1,k+1}."""
    if not 2 <= k <= n - 2:
        raise ValueError(f"need 2 <= k <= n-2, got ({k},{n})")
    base = tb.Tableau.one_column(k, n, list(range(1, k)) + [k + 1])
    return [base.shift(t) for t in range(n)]


def row_equation_normals(k, n):
    """The per-row all-ones vectors R_i in the flattened chart basis."""
    dim = (k - 1) * (n - k)
    out = []
    for i in range(1, k):
        v = [0] * dim
        for j in range(1, n - k + 1):
            v[tb.flat_index(k, n, i, j)] = 1
        out.append(tuple(v))
    return out


def clear_to_nonnegative(a, k, n):
    """v' = a + sum_i c_i R_i with c_i = max(0, -min_j a_{i,j}).

    Returns (v', coefficients c).  v' is the canonical per-row-min-zero
    representative used throughout the facet dictionary.
    """
    w = n - k
    v = list(a)
    cs = []
    for i in range(k - 1):
        row = v[i * w : (i + 1) * w]
        c = max(0, -min(row))
        cs.append(c)
        for j in range(w):
            v[i * w + j] += c
    return tuple(v), cs


def canonical_facet(a, b, k, n, equations):
    """Per-row-min-zero representative of an inequality modulo the row
    equations, with the offset adjusted accordingly."""
    v, cs = clear_to_nonnegative(a, k, n)
    rows = row_equation_normals(k, n)
    eq_by_row = {}
    for ea, eb in equations:
        if tuple(ea) in set(rows):
            eq_by_row[tuple(ea)] = eb
    b2 = b
    for i, c in enumerate(cs):
        if c:
            b2 = b2 + c * eq_by_row[rows[i]]
    return v, b2


@dataclass
class NewtonStage:
    k: int
    n: int
    d: int
    tableaux_in: list
    polytope: Polytope
    facet_tableaux: list  # [(Facet-with-canonical-normal, Tableau)]

    def facet_count(self):
        return len(self.polytope.facets)

    def canonical_inequalities(self):
        return sorted((f.normal, f.offset) for f, _ in self.facet_tableaux)

    def dictionary(self):
        """{tableau: (canonical normal, offset, dominant monomial)}."""
        out = {}
        for f, t in self.facet_tableaux:
            out[t] = (f.normal, f.offset, tb.tableau_to_monomial(t))
        return out


def facet_to_tableau(a, b_or_equations, k=None, n=None, equations=None) -> tb.Tableau:
    """Tableau of a facet normal: clear negatives with row equations, read
    the nonnegative vector in the fundamental basis, strip trivial factors."""
    if k is None or n is None:
        raise ValueError("facet_to_tableau requires k and n")
    v, _ = clear_to_nonnegative(a, k, n)
    if any(x < 0 for x in v):
        raise ValueError(f"normal {a} not clearable to nonnegative (wrong equations?)")
    return tb.tableau_from_lattice(k, n, v)


def _verify_row_equations(poly: Polytope, k, n):
    rows = set(row_equation_normals(k, n))
    got = {tuple(a) for a, _ in poly.equations}
    if got != rows:
        raise ValueError(
            f"stage polytope equations {sorted(got)} are not the per-row sums"
        )


def build_stage(k, n, d, chars: CharTable | None = None, progress=None) -> NewtonStage:
    """The recursive Newton polytope N^(d)_{k,n} with its facet dictionary."""
    if d < 0:
        raise ValueError("stage index must be >= 0")
    if chars is None:
        chars = plucker_char_table(k, n)
    if d == 0:
        gens = t0_tableaux(k, n)
    elif d == 1:
        gens = [
            tb.Tableau.one_column(k, n, J) for J in combinations(range(1, n + 1), k)
        ]
    else:
        prev = build_stage(k, n, d - 1, chars, progress=progress)
        gens = [t for _, t in prev.facet_tableaux]
        # facet tableaux are (conjecturally) prime: their characters must be
        # supplied, never reassembled from factors
        return _stage_from_generators(k, n, d, gens, chars, strict=True, progress=progress)
    return _stage_from_generators(k, n, d, gens, chars, progress=progress)


def _stage_from_generators(k, n, d, gens, chars, strict=False, progress=None) -> NewtonStage:
    summands = []
    for t in gens:
        summands.append(newton_polytope(chars.char_for(t, strict=strict)))
    poly = minkowski_sum(summands, progress=progress)
    _verify_row_equations(poly, k, n)
    facet_tableaux = []
    for f in poly.facets:
        v, b2 = canonical_facet(f.normal, f.offset, k, n, poly.equations)
        t = tb.tableau_from_lattice(k, n, v)
        facet_tableaux.append((Facet(v, b2, f.vertex_indices), t))
    facet_tableaux.sort(key=lambda ft: (ft[0].normal, ft[0].offset))
    return NewtonStage(k, n, d, list(gens), poly, facet_tableaux)


def all_ssyt_up_to_columns(k, n, d):
    """Every rectangular SSYT with k rows, entries in [n], at most d columns."""
    cols = list(combinations(range(1, n + 1), k))
    out = [tb.Tableau.empty(k, n)]
    frontier = [tb.Tableau.empty(k, n)]
    for _ in range(d):
        nxt = []
        for t in frontier:
            last = t.columns[-1] if t.columns else None
            for c in cols:
                if last is not None and c < last:
                    continue
                try:
                    cand = tb.Tableau(k, n, t.columns + (c,))
                except ValueError:
                    continue
                nxt.append(cand)
        out.extend(nxt)
        frontier = nxt
    return out


def build_stage_prime(k, n, d, chars: CharTable | None = None, progress=None) -> NewtonStage:
    """The non-recursive polytope N'^(d)_{k,n} over all tableaux with <= d
    columns."""
    if d < 1:
        raise ValueError("stage index must be >= 1")
    if chars is None:
        chars = plucker_char_table(k, n)
    gens = [t for t in all_ssyt_up_to_columns(k, n, d) if not t.is_empty()]
    missing = []
    for t in gens:
        try:
            chars.char_for(t)
        except MissingCharacterError as e:
            missing.append(e.tableau)
    if missing:
        raise MissingCharacterError(missing[0])
    return _stage_from_generators(k, n, d, gens, chars, progress=progress)


def tableau_to_face(t: tb.Tableau, stage: NewtonStage):
    """Face of the stage polytope minimized by gamma_T, with codimension."""
    gamma = tb.lattice_vector(t)
    return face_minimizing(stage.polytope, gamma)

"""Rectangular semistandard Young tableaux and dominant monomials.

A tableau here always has k rows, entries in [1, n], strictly increasing
columns and weakly increasing rows.  The row-wise multiset union makes the
set of such tableaux a commutative monoid; quotienting by consecutive-run
("trivial") column factors turns it into a free monoid on the fundamental
one-column tableaux T_{i,j} (entries [j, j+k] minus {i+j}).  That free monoid
is identified with the lattice Z_{>=0}^{(k-1) x (n-k)} and, on the quantum
affine side, with dominant monomials in the variables Y_{i,s}.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering

from .linalg import solve_integer


@dataclass(frozen=True)
class Tableau:
    """Rectangular SSYT with k rows and entries in [1, n], stored by columns."""

    k: int
    n: int
    columns: tuple  # tuple of tuples, each strictly increasing, length k

    def __post_init__(self):
        for col in self.columns:
            if len(col) != self.k:
                raise ValueError(f"column {col} does not have {self.k} entries")
            if any(not 1 <= e <= self.n for e in col):
                raise ValueError(f"column {col} has entries outside [1, {self.n}]")
            if any(col[i] >= col[i + 1] for i in range(self.k - 1)):
                raise ValueError(f"column {col} is not strictly increasing")
        rows = self.rows()
        for row in rows:
            if any(row[i] > row[i + 1] for i in range(len(row) - 1)):
                raise ValueError("rows are not weakly increasing")

    @staticmethod
    def from_rows(k, n, rows):
        """Build from row multisets, re-sorting into column form."""
        rows = [sorted(r) for r in rows]
        if len(rows) != k:
            raise ValueError(f"expected {k} rows")
        width = len(rows[0]) if rows else 0
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        cols = tuple(tuple(rows[i][j] for i in range(k)) for j in range(width))
        return Tableau(k, n, cols)

    @staticmethod
    def empty(k, n):
        return Tableau(k, n, ())

    @staticmethod
    def one_column(k, n, entries):
        return Tableau(k, n, (tuple(sorted(entries)),))

    def rows(self):
        return [sorted(col[i] for col in self.columns) for i in range(self.k)]

    @property
    def width(self):
        return len(self.columns)

    def is_empty(self):
        return not self.columns

    def union(self, other: "Tableau") -> "Tableau":
        if (self.k, self.n) != (other.k, other.n):
            raise ValueError(
                f"shape mismatch: ({self.k},{self.n}) vs ({other.k},{other.n})"
            )
        rows = [a + b for a, b in zip(self.rows(), other.rows())]
        return Tableau.from_rows(self.k, self.n, rows)

    __or__ = union

    def divide(self, other: "Tableau") -> "Tableau":
        """Row-wise multiset difference self / other; raises if not a factor."""
        if (self.k, self.n) != (other.k, other.n):
            raise ValueError("shape mismatch")
        rows = []
        for mine, theirs in zip(self.rows(), other.rows()):
            left = list(mine)
            for e in theirs:
                try:
                    left.remove(e)
                except ValueError:
                    raise ValueError(f"{other} is not a factor of {self}") from None
            rows.append(left)
        return Tableau.from_rows(self.k, self.n, rows)

    def content(self):
        """k x n count matrix: content()[r][v-1] = multiplicity of v in row r+1."""
        out = [[0] * self.n for _ in range(self.k)]
        for col in self.columns:
            for r, e in enumerate(col):
                out[r][e - 1] += 1
        return out

    def content_vector(self):
        return tuple(x for row in self.content() for x in row)

    def shift(self, t=1):
        """Cyclic shift of every entry by t (mod n), columns re-sorted."""
        cols = tuple(
            tuple(sorted((e - 1 + t) % self.n + 1 for e in col)) for col in self.columns
        )
        rows = [sorted(c[i] for c in cols) for i in range(self.k)]
        return Tableau.from_rows(self.k, self.n, rows)

    def to_json(self):
        return {"k": self.k, "n": self.n, "columns": [list(c) for c in self.columns]}

    @staticmethod
    def from_json(data):
        return Tableau(
            data["k"], data["n"], tuple(tuple(c) for c in data["columns"])
        )

    def __str__(self):
        return "[" + ",".join("[" + ",".join(map(str, c)) + "]" for c in self.columns) + "]"


@total_ordering
@dataclass(frozen=True)
class YMonomial:
    """Laurent monomial in the formal variables Y_{i,s}; exponents nonzero."""

    exponents: tuple  # sorted tuple of ((i, s), e) with e != 0

    @staticmethod
    def from_dict(d):
        items = tuple(sorted((k, v) for k, v in d.items() if v != 0))
        return YMonomial(items)

    @staticmethod
    def one():
        return YMonomial(())

    @staticmethod
    def var(i, s, e=1):
        return YMonomial.from_dict({(i, s): e})

    def as_dict(self):
        return dict(self.exponents)

    def __mul__(self, other):
        d = self.as_dict()
        for key, e in other.exponents:
            d[key] = d.get(key, 0) + e
        return YMonomial.from_dict(d)

    def __pow__(self, p):
        return YMonomial(tuple((k, e * p) for k, e in self.exponents)) if p else YMonomial.one()

    def inverse(self):
        return self ** -1

    def __truediv__(self, other):
        return self * other.inverse()

    def is_dominant(self):
        return all(e > 0 for _, e in self.exponents)

    def is_trivial(self):
        return not self.exponents

    def degree(self):
        return sum(e for _, e in self.exponents)

    def __lt__(self, other):
        return self.exponents < other.exponents

    def to_json(self):
        return {"factors": [{"i": i, "s": s, "e": e} for (i, s), e in self.exponents]}

    @staticmethod
    def from_json(data):
        return YMonomial.from_dict(
            {(f["i"], f["s"]): f["e"] for f in data["factors"]}
        )

    def __str__(self):
        if not self.exponents:
            return "1"
        parts = []
        for (i, s), e in self.exponents:
            parts.append(f"Y[{i},{s}]" + (f"^{e}" if e != 1 else ""))
        return "*".join(parts)


def fundamental_tableau(k, n, i, j):
    """T_{i,j}: the one-column tableau with entries [j, j+k] minus {i+j}."""
    if not (1 <= i <= k - 1 and 1 <= j <= n - k):
        raise ValueError(f"fundamental index ({i},{j}) out of range for ({k},{n})")
    entries = [e for e in range(j, j + k + 1) if e != i + j]
    return Tableau.one_column(k, n, entries)


def trivial_column(k, n, top):
    """Consecutive-run column {top, ..., top+k-1}; trivial factor generators."""
    if not 1 <= top <= n - k + 1:
        raise ValueError(f"trivial column top {top} out of range")
    return tuple(range(top, top + k))


def flat_index(k, n, i, j):
    """Row-major position of e_{i,j} in the (k-1)(n-k) lattice."""
    return (i - 1) * (n - k) + (j - 1)


def union(s: Tableau, t: Tableau) -> Tableau:
    return s.union(t)


def reduce(t: Tableau) -> Tableau:
    """Remove the maximal trivial factor (consecutive-run columns).

    Distinct trivial tops use disjoint entries in every row, so the maximal
    factor multiplicity is computed per top independently.
    """
    rows = t.rows()
    counts = {}
    for top in range(1, t.n - t.k + 2):
        m = min(rows[r].count(top + r) for r in range(t.k))
        if m:
            counts[top] = m
    if not counts:
        return t
    new_rows = []
    for r, row in enumerate(rows):
        row = list(row)
        for top, m in counts.items():
            for _ in range(m):
                row.remove(top + r)
        new_rows.append(row)
    return Tableau.from_rows(t.k, t.n, new_rows)


def equivalent(s: Tableau, t: Tableau) -> bool:
    """The ~ relation: equality after removing maximal trivial factors."""
    return reduce(s) == reduce(t)


def _content_basis(k, n):
    """Columns of the content linear system: fundamentals then trivial columns.

    Returns (matrix_rows, n_fund) where the matrix maps coefficient vectors
    (c_{1,1..}, ..., t_1, ..., t_{n-k+1}) to k*n content vectors.
    """
    cols = []
    for i in range(1, k):
        for j in range(1, n - k + 1):
            cols.append(fundamental_tableau(k, n, i, j).content_vector())
    for top in range(1, n - k + 2):
        cols.append(
            Tableau.one_column(k, n, trivial_column(k, n, top)).content_vector()
        )
    n_fund = (k - 1) * (n - k)
    rows = [tuple(col[r] for col in cols) for r in range(k * n)]
    return rows, n_fund


def fundamental_decomposition(t: Tableau):
    """The unique multiset {(i,j): c_{i,j}} with t ~ union of T_{i,j}^{c_{i,j}}.

    Solved from row contents: content(t) = sum c_{i,j} content(T_{i,j})
    + integer combination of trivial columns.  Coefficients c_{i,j} are
    nonnegative; the trivial part may have either sign.
    """
    k, n = t.k, t.n
    rows, n_fund = _content_basis(k, n)
    sol = solve_integer(rows, t.content_vector())
    out = {}
    idx = 0
    for i in range(1, k):
        for j in range(1, n - k + 1):
            c = sol[idx]
            if c < 0:
                raise ValueError(f"negative fundamental multiplicity at ({i},{j})")
            if c:
                out[(i, j)] = c
            idx += 1
    return out


def lattice_vector(t: Tableau):
    """Image of t under the monoid isomorphism to Z_{>=0}^{(k-1)(n-k)}."""
    dec = fundamental_decomposition(t)
    v = [0] * ((t.k - 1) * (t.n - t.k))
    for (i, j), c in dec.items():
        v[flat_index(t.k, t.n, i, j)] = c
    return tuple(v)


def tableau_from_lattice(k, n, v):
    """Inverse isomorphism: reduce(union of T_{i,j}^{v_{i,j}})."""
    t = Tableau.empty(k, n)
    idx = 0
    for i in range(1, k):
        for j in range(1, n - k + 1):
            c = v[idx]
            if c < 0:
                raise ValueError("lattice vector has a negative entry")
            for _ in range(c):
                t = t.union(fundamental_tableau(k, n, i, j))
            idx += 1
    return reduce(t)


def fundamental_to_y(k, i, j):
    """Dictionary T_{i,j} <-> Y_{k-i, k-i-2j} (height function xi(i) = i-2)."""
    return (k - i, k - i - 2 * j)


def y_to_fundamental(k, i, s):
    """Inverse of fundamental_to_y; requires i-s even and valid ranges."""
    if (i - s) % 2 != 0:
        raise ValueError(f"Y[{i},{s}] violates the parity convention i-s = 0 mod 2")
    return (k - i, (i - s) // 2)


def tableau_to_monomial(t: Tableau) -> YMonomial:
    """Dominant monomial of the simple module labelled by t (up to ~)."""
    dec = fundamental_decomposition(t)
    d = {}
    for (i, j), c in dec.items():
        key = fundamental_to_y(t.k, i, j)
        d[key] = d.get(key, 0) + c
    return YMonomial.from_dict(d)


def monomial_to_tableau(m: YMonomial, k, n) -> Tableau:
    """Tableau of a dominant monomial; inverse of tableau_to_monomial up to ~."""
    t = Tableau.empty(k, n)
    for (i, s), e in m.exponents:
        if e < 0:
            raise ValueError(f"monomial is not dominant: Y[{i},{s}]^{e}")
        fi, fj = y_to_fundamental(k, i, s)
        if not (1 <= fi <= k - 1 and 1 <= fj <= n - k):
            raise ValueError(f"Y[{i},{s}] lies outside the C_l window for ({k},{n})")
        for _ in range(e):
            t = t.union(fundamental_tableau(k, n, fi, fj))
    return reduce(t)


def _bender_knuth(rows, i, k):
    """Bender-Knuth involution swapping free i's and (i+1)'s, acting on rows."""
    width = len(rows[0]) if rows else 0
    out = [list(r) for r in rows]
    for r in range(k):
        row = out[r]
        below = out[r + 1] if r + 1 < k else None
        above = out[r - 1] if r >= 1 else None
        free_i, free_i1 = [], []
        for c in range(width):
            if row[c] == i:
                if below is not None and below[c] == i + 1:
                    continue
                free_i.append(c)
            elif row[c] == i + 1:
                if above is not None and above[c] == i:
                    continue
                free_i1.append(c)
        a, b = len(free_i), len(free_i1)
        cells = free_i + free_i1
        for idx, c in enumerate(cells):
            row[c] = i if idx < b else i + 1
    return out


def promotion(t: Tableau) -> Tableau:
    """Schutzenberger promotion on the n-letter alphabet.

    Computed as the chain of Bender-Knuth involutions sigma_{n-1} ... sigma_1,
    which agrees with the jeu-de-taquin definition; promotion^n is the
    identity on rectangular tableaux.
    """
    if t.is_empty():
        return t
    rows = [list(r) for r in t.rows()]
    for i in range(1, t.n):
        rows = _bender_knuth(rows, i, t.k)
    return Tableau.from_rows(t.k, t.n, rows)


def promotion_orbit(t: Tableau):
    """Orbit of t under promotion (as a list starting at t)."""
    orbit = [t]
    cur = promotion(t)
    while cur != t:
        orbit.append(cur)
        cur = promotion(cur)
        if len(orbit) > t.n * max(1, t.width) + 1:
            raise RuntimeError("promotion failed to return; convention bug")
    return orbit

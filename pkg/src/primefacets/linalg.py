"""Exact linear algebra over the integers and rationals.

Everything in this package that touches geometry runs through these helpers:
rational row reduction, integer/rational system solving, nullspaces, and
primitive-vector normalization.  No floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def vec_gcd(v):
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return g


def primitivize(v):
    """Divide an integer vector by the gcd of its entries."""
    g = vec_gcd(v)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def rref(rows, ncols=None):
    """Reduced row echelon form over Q.

    Accepts rows of ints or Fractions.  Returns (reduced_rows, pivot_cols)
    with zero rows dropped; reduced_rows are Fraction tuples.
    """
    mat = [list(map(Fraction, r)) for r in rows]
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return [tuple(row) for row in mat[:r]], pivots


def rank(rows):
    if not rows:
        return 0
    return len(rref(rows)[0])


def clear_denominators(v):
    """Scale a rational vector to a primitive integer vector."""
    den = 1
    for x in v:
        f = Fraction(x)
        den = den * f.denominator // gcd(den, f.denominator)
    w = [int(Fraction(x) * den) for x in v]
    g = vec_gcd(w)
    if g > 1:
        w = [x // g for x in w]
    return tuple(w)


def nullspace(rows, ncols):
    """Basis of {x : A x = 0} as primitive integer vectors."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(clear_denominators(v))
    return basis


def solve_exact(rows, rhs):
    """Solve A x = b over Q with free variables set to zero.

    Returns a Fraction tuple, or None if the system is inconsistent.
    """
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        # free variables are zero and other pivot columns vanish in row r
        x[pc] = red[r][ncols]
    return tuple(x)


def solve_unique(rows, rhs):
    """Solve A x = b requiring a unique solution.  Raises ValueError otherwise."""
    ncols = len(rows[0]) if rows else 0
    sol = solve_exact(rows, rhs)
    if sol is None:
        raise ValueError("inconsistent linear system")
    if rank(rows) != ncols:
        raise ValueError("linear system is underdetermined")
    return sol


def solve_integer(rows, rhs):
    """Unique integer solution of A x = b, or raise ValueError."""
    sol = solve_unique(rows, rhs)
    out = []
    for x in sol:
        if x.denominator != 1:
            raise ValueError(f"no integer solution (fractional coordinate {x})")
        out.append(int(x))
    return tuple(out)


def hnf(rows):
    """Row-style Hermite normal form of an integer lattice basis.

    Returns nonzero HNF rows: pivots positive, entries above pivots reduced
    into [0, pivot).
    """
    mat = [list(r) for r in rows if any(r)]
    if not mat:
        return []
    ncols = len(mat[0])
    r = 0
    for c in range(ncols):
        while True:
            live = [i for i in range(r, len(mat)) if mat[i][c] != 0]
            if not live:
                break
            i0 = min(live, key=lambda i: abs(mat[i][c]))
            mat[r], mat[i0] = mat[i0], mat[r]
            done = True
            for i in range(r + 1, len(mat)):
                if mat[i][c] != 0:
                    q = mat[i][c] // mat[r][c]
                    mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
                    if mat[i][c] != 0:
                        done = False
            if done:
                break
        if r < len(mat) and mat[r][c] != 0:
            if mat[r][c] < 0:
                mat[r] = [-x for x in mat[r]]
            r += 1
            if r == len(mat):
                break
    mat = [row for row in mat[:r] if any(row)]
    pivcols = [next(i for i, x in enumerate(row) if x != 0) for row in mat]
    for i in range(len(mat)):
        for j in range(i + 1, len(mat)):
            p = mat[j][pivcols[j]]
            q = mat[i][pivcols[j]] // p
            if q:
                mat[i] = [a - q * b for a, b in zip(mat[i], mat[j])]
    return [tuple(row) for row in mat]


def reduce_mod_lattice(v, lattice_rows, basis=None):
    """Canonical representative of integer vector v modulo the integer lattice
    spanned by lattice_rows."""
    if basis is None:
        basis = hnf(lattice_rows)
    w = list(v)
    for row in basis:
        pc = next(i for i, x in enumerate(row) if x != 0)
        q = w[pc] // row[pc]
        if q:
            w = [a - q * b for a, b in zip(w, row)]
    return tuple(w)


def in_lattice(v, lattice_rows, basis=None):
    """Is v an integer combination of lattice_rows?"""
    return not any(reduce_mod_lattice(v, lattice_rows, basis=basis))


def reduce_mod_rowspace(v, rows, red=None):
    """Canonical representative of v modulo the rational row span of `rows`.

    Eliminates the pivot columns of the RREF of `rows` from v and rescales to
    a primitive integer vector.  Unique up to sign for a fixed row space, so
    suitable for comparing facet normals of lower-dimensional polytopes.
    Pass red=rref(rows) to reuse a precomputed reduction.
    """
    if red is None:
        red = rref(rows)
    rrows, pivots = red
    w = [Fraction(x) for x in v]
    for row, pc in zip(rrows, pivots):
        f = w[pc]
        if f:
            w = [a - f * b for a, b in zip(w, row)]
    if not any(w):
        return tuple(0 for _ in w)
    return clear_denominators(w)

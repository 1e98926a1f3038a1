"""Sparse multivariate polynomials over Z and the web-matrix chart.

Exponent vectors are dense integer tuples of length (k-1)(n-k), flattened
row-major over the chart variables x_{i,j} (i in [1,k-1], j in [1,n-k]).
Coefficients are arbitrary-precision ints; zero coefficients are never stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations


class SparsePolynomial:
    """Map from exponent tuples to nonzero integer coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for e, c in (terms.items() if isinstance(terms, dict) else terms):
                if c:
                    e = tuple(e)
                    nc = self.terms.get(e, 0) + c
                    if nc:
                        self.terms[e] = nc
                    else:
                        del self.terms[e]

    @staticmethod
    def zero(nvars):
        return SparsePolynomial(nvars)

    @staticmethod
    def constant(nvars, c):
        return SparsePolynomial(nvars, {(0,) * nvars: c} if c else None)

    @staticmethod
    def variable(nvars, idx, c=1):
        e = [0] * nvars
        e[idx] = 1
        return SparsePolynomial(nvars, {tuple(e): c})

    @staticmethod
    def monomial(nvars, exps, c=1):
        return SparsePolynomial(nvars, {tuple(exps): c})

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == {(0,) * self.nvars: 1}

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return isinstance(other, SparsePolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            nc = out.get(e, 0) + c
            if nc:
                out[e] = nc
            else:
                del out[e]
        p = SparsePolynomial(self.nvars)
        p.terms = out
        return p

    def __neg__(self):
        p = SparsePolynomial(self.nvars)
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return SparsePolynomial(self.nvars)
            p = SparsePolynomial(self.nvars)
            p.terms = {e: c * other for e, c in self.terms.items()}
            return p
        out = {}
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                nc = out.get(e, 0) + c1 * c2
                if nc:
                    out[e] = nc
                elif e in out:
                    del out[e]
        p = SparsePolynomial(self.nvars)
        p.terms = out
        return p

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = SparsePolynomial.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def support(self):
        return set(self.terms)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def leading_term(self):
        """Lexicographically largest exponent; canonical pivot for division."""
        e = max(self.terms)
        return e, self.terms[e]

    def sorted_terms(self):
        return sorted(self.terms.items())

    def evaluate(self, point):
        """Exact evaluation at a tuple of Fractions/ints."""
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, p in zip(point, e):
                if p:
                    v *= x**p
            total += v
        return total

    def exact_divide(self, divisor: "SparsePolynomial") -> "SparsePolynomial":
        """Quotient self / divisor, raising ValueError unless division is exact."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = dict(self.terms)
        out = {}
        de, dc = divisor.leading_term()
        dterms = divisor.sorted_terms()
        while rem:
            e = max(rem)
            c = rem[e]
            qe = tuple(a - b for a, b in zip(e, de))
            if any(x < 0 for x in qe) or c % dc != 0:
                raise ValueError("inexact polynomial division")
            qc = c // dc
            out[qe] = qc
            for te, tc in dterms:
                key = tuple(a + b for a, b in zip(qe, te))
                nc = rem.get(key, 0) - qc * tc
                if nc:
                    rem[key] = nc
                elif key in rem:
                    del rem[key]
        p = SparsePolynomial(self.nvars)
        p.terms = out
        return p

    def coefficients_positive(self):
        return all(c > 0 for c in self.terms.values())

    def to_json(self, var_names=None):
        if var_names is None:
            var_names = [f"x{i}" for i in range(self.nvars)]
        return {
            "vars": list(var_names),
            "terms": [
                {"exp": list(e), "coeff": str(c)} for e, c in self.sorted_terms()
            ],
        }

    @staticmethod
    def from_json(data):
        nvars = len(data["vars"])
        return SparsePolynomial(
            nvars, {tuple(t["exp"]): int(t["coeff"]) for t in data["terms"]}
        )

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"x{i}^{p}" if p > 1 else f"x{i}" for i, p in enumerate(e) if p
            )
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def add(p, q):
    return p + q


def mul(p, q):
    return p * q


def exact_divide(p, q):
    return p.exact_divide(q)


def chart_var_names(k, n):
    return [f"x{i}{j}" for i in range(1, k) for j in range(1, n - k + 1)]


def chart_index(k, n, i, j):
    """Flat index of x_{i,j} in the (k-1)(n-k) chart, row-major."""
    return (i - 1) * (n - k) + (j - 1)


@dataclass(frozen=True)
class WebMatrix:
    """The k x n polynomial matrix [ I_k | m ] parametrizing the positive chart.

    The right block has rows m_{i,j} = (-1)^{k+i} * sum over weakly increasing
    b_i <= ... <= b_{k-1} <= j of x_{i,b_i} ... x_{k-1,b_{k-1}} for i < k, and
    the all-ones bottom row.
    """

    k: int
    n: int
    entries: tuple  # k x n tuple of SparsePolynomial

    @property
    def nvars(self):
        return (self.k - 1) * (self.n - self.k)


def _m_entry(k, n, i, j):
    nvars = (k - 1) * (n - k)
    total = SparsePolynomial(nvars)
    # weakly increasing chains b_i <= ... <= b_{k-1} bounded by j
    def rec(level, lo, exps):
        nonlocal total
        if level == k:
            total = total + SparsePolynomial.monomial(nvars, exps)
            return
        for b in range(lo, j + 1):
            e2 = list(exps)
            e2[chart_index(k, n, level, b)] += 1
            rec(level + 1, b, e2)

    rec(i, 1, [0] * nvars)
    sign = -1 if (k + i) % 2 else 1
    return total * sign


def web_matrix(k, n) -> WebMatrix:
    """Web matrix for Gr(k, n); requires 2 <= k <= n-2."""
    if not 2 <= k <= n - 2:
        raise ValueError(f"web matrix needs 2 <= k <= n-2, got ({k},{n})")
    nvars = (k - 1) * (n - k)
    rows = []
    for i in range(1, k + 1):
        row = []
        for col in range(1, n + 1):
            if col <= k:
                row.append(SparsePolynomial.constant(nvars, 1 if col == i else 0))
            elif i == k:
                row.append(SparsePolynomial.constant(nvars, 1))
            else:
                row.append(_m_entry(k, n, i, col - k))
        rows.append(tuple(row))
    return WebMatrix(k, n, tuple(rows))


def _det(entries):
    """Cofactor-expansion determinant of a small matrix of polynomials."""
    m = len(entries)
    if m == 1:
        return entries[0][0]
    nvars = entries[0][0].nvars
    total = SparsePolynomial(nvars)
    for r in range(m):
        a = entries[r][0]
        if a.is_zero():
            continue
        minor = [row[1:] for i, row in enumerate(entries) if i != r]
        sub = _det(minor)
        term = a * sub
        total = total + (term if r % 2 == 0 else -term)
    return total


def plucker_eval(w: WebMatrix, subset) -> SparsePolynomial:
    """Plucker coordinate p_J evaluated on the web matrix, sign-normalized
    so that all coefficients are positive."""
    J = sorted(subset)
    if len(J) != w.k or len(set(J)) != w.k or J[0] < 1 or J[-1] > w.n:
        raise ValueError(f"J = {subset} is not a {w.k}-subset of [1,{w.n}]")
    mat = [[w.entries[r][c - 1] for c in J] for r in range(w.k)]
    det = _det(mat)
    if det.is_zero():
        raise ValueError(f"vanishing minor for J = {J}; web matrix bug")
    coeffs = list(det.terms.values())
    if all(c > 0 for c in coeffs):
        return det
    if all(c < 0 for c in coeffs):
        return -det
    raise ValueError(f"mixed coefficient signs in minor J = {J}; web matrix bug")


def all_plucker_evals(k, n):
    """{J: p_J(M)} over all k-subsets of [1, n]."""
    w = web_matrix(k, n)
    return {J: plucker_eval(w, J) for J in combinations(range(1, n + 1), k)}


def is_frozen_subset(J, n):
    """Is the k-subset J a cyclic interval [i, i+k-1] mod n?"""
    J = sorted(J)
    k = len(J)
    s = set(J)
    for start in J:
        if all((start + t - 1) % n + 1 in s for t in range(k)):
            return True
    return False

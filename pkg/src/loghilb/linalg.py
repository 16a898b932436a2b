"""Exact integer and rational linear algebra.

All matrices are plain lists of lists of Python integers (arbitrary
precision).  The module provides Smith and Hermite normal forms with
unimodular transforms, rational linear solving, and membership tests for
the integer row span of a matrix.  Everything is implemented with naive
Euclidean pivoting, which is entirely adequate at the matrix sizes that
occur here (a few hundred rows/columns).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

Matrix = List[List[int]]


class InconsistentSystemError(ValueError):
    """The linear system has no solution."""


class NonUniqueSolutionError(ValueError):
    """The linear system is consistent but underdetermined."""


@dataclass(frozen=True)
class IntMatrix:
    """Thin immutable wrapper around a dense integer matrix."""

    rows: int
    cols: int
    entries: Tuple[Tuple[int, ...], ...]

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]]) -> "IntMatrix":
        data = tuple(tuple(int(x) for x in r) for r in rows)
        ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged matrix")
        return IntMatrix(len(data), ncols, data)

    def to_lists(self) -> Matrix:
        return [list(r) for r in self.entries]


def _as_lists(m) -> Matrix:
    if isinstance(m, IntMatrix):
        return m.to_lists()
    return [list(map(int, row)) for row in m]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        return []
    n, k, m = len(a), len(b), len(b[0])
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        for p in range(k):
            c = ai[p]
            if c:
                bp = b[p]
                row = out[i]
                for j in range(m):
                    row[j] += c * bp[j]
    return out


def det(m) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    a = _as_lists(m)
    n = len(a)
    if n == 0:
        return 1
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(m) -> Tuple[Matrix, Matrix, Matrix]:
    """Return (D, U, V) with U*M*V = D in Smith normal form.

    U and V are unimodular; the diagonal of D is non-negative and each
    entry divides the next.
    """
    a = _as_lists(m)
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    u = identity(nrows)
    v = identity(ncols)

    def pivot_search(start: int) -> Optional[Tuple[int, int]]:
        best = None
        for i in range(start, nrows):
            for j in range(start, ncols):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while t < min(nrows, ncols):
        loc = pivot_search(t)
        if loc is None:
            break
        i, j = loc
        if i != t:
            a[t], a[i] = a[i], a[t]
            u[t], u[i] = u[i], u[t]
        if j != t:
            for row in a:
                row[t], row[j] = row[j], row[t]
            for row in v:
                row[t], row[j] = row[j], row[t]
        # clear column t and row t by Euclidean steps
        while True:
            done = True
            for i in range(t + 1, nrows):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    for j in range(ncols):
                        a[i][j] -= q * a[t][j]
                    for j in range(nrows):
                        u[i][j] -= q * u[t][j]
                    if a[i][t] != 0:
                        a[t], a[i] = a[i], a[t]
                        u[t], u[i] = u[i], u[t]
                        done = False
            for j in range(t + 1, ncols):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    for i in range(nrows):
                        a[i][j] -= q * a[i][t]
                    for i in range(ncols):
                        v[i][j] -= q * v[i][t]
                    if a[t][j] != 0:
                        # move the smaller remainder into pivot position
                        for i in range(nrows):
                            a[i][t], a[i][j] = a[i][j], a[i][t]
                        for i in range(ncols):
                            v[i][t], v[i][j] = v[i][j], v[i][t]
                        done = False
            if done:
                break
        # enforce divisibility of the remaining block by the pivot
        pivot = a[t][t]
        bad = None
        for i in range(t + 1, nrows):
            for j in range(t + 1, ncols):
                if a[i][j] % pivot != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            for j in range(ncols):
                a[t][j] += a[bad][j]
            for j in range(nrows):
                u[t][j] += u[bad][j]
            continue  # redo this pivot
        if pivot < 0:
            for j in range(ncols):
                a[t][j] = -a[t][j]
            for j in range(nrows):
                u[t][j] = -u[t][j]
        t += 1
    return a, u, v


def invariant_factors(m) -> List[int]:
    """Nonzero diagonal entries of the Smith normal form.

    Computed without transform matrices; pivots with absolute value 1 are
    preferred to keep intermediate entries small.
    """
    a = [row[:] for row in _as_lists(m)]
    a = [row for row in a if any(row)]
    diag: List[int] = []
    while a and a[0]:
        nrows = len(a)
        ncols = len(a[0])
        best = None
        for i in range(nrows):
            for j in range(ncols):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                    best = (i, j)
                    if abs(x) == 1:
                        break
            if best is not None and abs(a[best[0]][best[1]]) == 1:
                break
        if best is None:
            break
        bi, bj = best
        a[0], a[bi] = a[bi], a[0]
        for row in a:
            row[0], row[bj] = row[bj], row[0]
        while True:
            # clear first column
            again = False
            for i in range(1, len(a)):
                if a[i][0] != 0:
                    q = a[i][0] // a[0][0]
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], a[0])]
                    if a[i][0] != 0:
                        a[0], a[i] = a[i], a[0]
                        again = True
            # clear first row
            for j in range(1, ncols):
                if a[0][j] != 0:
                    q = a[0][j] // a[0][0]
                    if q:
                        for row in a:
                            row[j] -= q * row[0]
                    if a[0][j] != 0:
                        for row in a:
                            row[0], row[j] = row[j], row[0]
                        again = True
            if not again:
                break
        diag.append(abs(a[0][0]))
        a = [row[1:] for row in a[1:] if any(row[1:])]
    # a diagonal reached by unimodular operations determines the invariant
    # factors after pairwise gcd/lcm normalization of its entries
    changed = True
    while changed:
        changed = False
        for i in range(len(diag)):
            for j in range(i + 1, len(diag)):
                if diag[j] % diag[i] != 0:
                    g = gcd(diag[i], diag[j])
                    diag[i], diag[j] = g, diag[i] * diag[j] // g
                    changed = True
    return sorted(diag)


def hermite_normal_form(m) -> Tuple[Matrix, Matrix]:
    """Row-style Hermite normal form: (H, U) with U*M = H, U unimodular.

    H is in row echelon form with positive pivots and entries above each
    pivot reduced into [0, pivot).
    """
    a = _as_lists(m)
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    u = identity(nrows)
    r = 0
    for c in range(ncols):
        # gcd the column below row r into position r
        piv = None
        for i in range(r, nrows):
            if a[i][c] != 0 and (piv is None or abs(a[i][c]) < abs(a[piv][c])):
                piv = i
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        u[r], u[piv] = u[piv], u[r]
        while True:
            nonzero = [i for i in range(r + 1, nrows) if a[i][c] != 0]
            if not nonzero:
                break
            for i in nonzero:
                q = a[i][c] // a[r][c]
                for j in range(ncols):
                    a[i][j] -= q * a[r][j]
                for j in range(nrows):
                    u[i][j] -= q * u[r][j]
            piv = r
            for i in range(r + 1, nrows):
                if a[i][c] != 0 and abs(a[i][c]) < abs(a[piv][c]):
                    piv = i
            if piv != r:
                a[r], a[piv] = a[piv], a[r]
                u[r], u[piv] = u[piv], u[r]
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                for j in range(ncols):
                    a[i][j] -= q * a[r][j]
                for j in range(nrows):
                    u[i][j] -= q * u[r][j]
        r += 1
        if r == nrows:
            break
    return a, u


def in_row_span_z(m, target: Sequence[int]) -> bool:
    """Is the target vector an integer combination of the rows of m?"""
    a = _as_lists(m)
    if not a:
        return all(x == 0 for x in target)
    h, _ = hermite_normal_form(a)
    b = list(map(int, target))
    ncols = len(b)
    for row in h:
        lead = next((j for j in range(ncols) if row[j] != 0), None)
        if lead is None:
            break
        if b[lead] != 0:
            if b[lead] % row[lead] != 0:
                return False
            q = b[lead] // row[lead]
            for j in range(ncols):
                b[j] -= q * row[j]
    return all(x == 0 for x in b)


def rational_solve(a, b: Sequence) -> List[Fraction]:
    """Solve A*x = b exactly over the rationals.

    Raises InconsistentSystemError when no solution exists and
    NonUniqueSolutionError when the solution is not unique.
    """
    rows = [[Fraction(x) for x in row] for row in _as_lists(a)]
    rhs = [Fraction(x) for x in b]
    nrows = len(rows)
    if len(rhs) != nrows:
        raise ValueError("dimension mismatch")
    ncols = len(rows[0]) if nrows else 0
    aug = [rows[i] + [rhs[i]] for i in range(nrows)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, nrows):
        if aug[i][ncols] != 0:
            raise InconsistentSystemError("no solution")
    if len(pivots) < ncols:
        raise NonUniqueSolutionError("solution space is positive-dimensional")
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = aug[i][ncols]
    return x

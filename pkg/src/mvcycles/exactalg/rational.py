"""Dense linear algebra over Q with Fraction entries."""

from __future__ import annotations

from fractions import Fraction


def rref(rows, ncols: int, order=None):
    """Reduced row echelon form.

    ``order`` is the column priority used for pivoting (defaults to 0..ncols-1).
    Returns (reduced_rows, pivots) where ``pivots[k]`` is the pivot column of
    row k.  Input rows are not modified; zero rows are dropped.
    """
    if order is None:
        order = range(ncols)
    work = [list(r) for r in rows if any(r)]
    pivots = []
    r = 0
    for c in order:
        if r == len(work):
            break
        p = next((i for i in range(r, len(work)) if work[i][c]), None)
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        piv = work[r]
        inv = Fraction(1) / piv[c]
        if inv != 1:
            piv = [x * inv for x in piv]
            work[r] = piv
        nz = [j for j in range(ncols) if piv[j]]
        for i in range(len(work)):
            if i != r:
                f = work[i][c]
                if f:
                    row = work[i]
                    for j in nz:
                        row[j] -= f * piv[j]
        pivots.append(c)
        r += 1
    return work[:r], pivots


def rank(rows, ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def det(m) -> Fraction:
    """Determinant by Gaussian elimination."""
    a = [[Fraction(x) for x in r] for r in m]
    size = len(a)
    result = Fraction(1)
    for c in range(size):
        p = next((i for i in range(c, size) if a[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            result = -result
        piv = a[c][c]
        result *= piv
        for i in range(c + 1, size):
            f = a[i][c] / piv
            if f:
                for j in range(c, size):
                    a[i][j] -= f * a[c][j]
    return result


def solve(m, b):
    """Solve m x = b for square nonsingular m; returns None if singular."""
    size = len(m)
    aug = [[Fraction(x) for x in r] + [Fraction(bi)] for r, bi in zip(m, b)]
    red, piv = rref(aug, size + 1, order=range(size))
    if len(piv) < size:
        return None
    return [red[k][size] for k in range(size)]


def inverse(m):
    size = len(m)
    aug = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(size)] for i, r in enumerate(m)]
    red, piv = rref(aug, 2 * size, order=range(size))
    if len(piv) < size:
        return None
    return [row[size:] for row in red]


def nullspace(rows, ncols: int):
    """Basis of {x : rows . x = 0}."""
    red, piv = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for k, c in enumerate(piv):
            v[c] = -red[k][f]
        basis.append(v)
    return basis

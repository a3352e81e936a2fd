"""Square matrices of polynomials and their exact determinants."""

from __future__ import annotations

from .poly import MultiPoly


class PolyMatrix:
    """Immutable square matrix with MultiPoly entries."""

    __slots__ = ("rows", "n")

    def __init__(self, rows, n: int | None = None):
        rows = tuple(tuple(r) for r in rows)
        size = len(rows)
        if any(len(r) != size for r in rows):
            raise ValueError("matrix must be square")
        if n is None:
            n = next((e.n for r in rows for e in r if isinstance(e, MultiPoly)), None)
            if n is None:
                raise ValueError("cannot infer column count from scalar entries")
        self.n = n
        self.rows = tuple(
            tuple(e if isinstance(e, MultiPoly) else MultiPoly.const(n, e) for e in r) for r in rows
        )

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def masked(self, mask) -> "PolyMatrix":
        """Copy with entries replaced by zero wherever ``mask[i][j]`` is true."""
        z = MultiPoly.zero(self.n)
        return PolyMatrix(
            [[z if mask[i][j] else e for j, e in enumerate(r)] for i, r in enumerate(self.rows)],
            self.n,
        )

    def permuted(self, order) -> "PolyMatrix":
        """Simultaneous row and column permutation."""
        return PolyMatrix([[self.rows[i][j] for j in order] for i in order], self.n)

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __str__(self):
        cells = [[str(e) for e in r] for r in self.rows]
        w = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[ " + "  ".join(c.rjust(w) for c in r) + " ]" for r in cells)

    def determinant(self) -> MultiPoly:
        return determinant(self)


def determinant(m: PolyMatrix) -> MultiPoly:
    """Exact determinant by cofactor expansion memoised over column subsets.

    Row k is expanded against every (k+1)-subset of columns built from the
    k-subsets of the previous step, so no division is ever needed.
    """
    size = m.dim
    n = m.n
    if size == 0:
        return MultiPoly.one(n)
    minors = {0: MultiPoly.one(n)}
    for k in range(size):
        row = m.rows[k]
        nxt: dict = {}
        for mask, sub in minors.items():
            if not sub:
                continue
            # sign of inserting column c into the subset = parity of columns above c
            above = 0
            for c in range(size - 1, -1, -1):
                bit = 1 << c
                if mask & bit:
                    above += 1
                    continue
                e = row[c]
                if not e:
                    continue
                term = e * sub
                if above & 1:
                    term = -term
                key = mask | bit
                nxt[key] = nxt[key] + term if key in nxt else term
        minors = nxt
    return minors.get((1 << size) - 1, MultiPoly.zero(n))

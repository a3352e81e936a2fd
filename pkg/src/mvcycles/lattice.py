"""The lattice model of the affine Grassmannian inside a finite degree window.

A lattice Y with t^hi X_0 <= Y <= t^lo X_0 is stored exactly as the subspace
Y / t^hi X_0 of t^lo X_0 / t^hi X_0.  Coordinates are the symbols t^j e_i
with lo <= j < hi, ordered by degree and then column.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    NotTStable,
    ParseError,
    SamplingExhausted,
    WindowOverflow,
    WindowTooSmall,
)
from .exactalg import LaurentPoly
from .exactalg.rational import inverse, rank, rref
from .kostant import ExtendedPicture, KostantPicture, Loop, coweights

# vectors


def vec_shift(v: dict, k: int) -> dict:
    return {(j + k, i): c for (j, i), c in v.items()}


def format_vector(v: dict) -> str:
    """Inverse of :func:`parse_vector`, e.g. ``t^-2 e1 - 4 e3 + 1/2 t e2``."""
    out = ""
    for (j, i), c in sorted(v.items()):
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        t = "" if j == 0 else ("t " if j == 1 else f"t^{j} ")
        coef = "" if mag == 1 else f"{mag} "
        term = f"{coef}{t}e{i}"
        out = (("-" + term) if sign == "-" else term) if not out else f"{out} {sign} {term}"
    return out or "0"


_TERM = re.compile(r"^\s*([+-]?\s*[\d/]*)\s*(?:\*\s*)?(?:t(?:\^\s*\(?\s*(-?\d+)\s*\)?)?)?\s*\*?\s*e_?(\d+)\s*$")


def parse_vector(text: str) -> dict:
    """Parse ``3 t^-2 e1 - 4 e3 + 1/2 t e2``; a bare ``t`` means t^1."""
    out: dict = {}
    text = text.replace("−", "-")
    chunks = re.findall(r"[+-]?[^+-]+", re.sub(r"\^\s*-", "^~", text))
    for chunk in chunks:
        chunk = chunk.replace("^~", "^-")
        m = _TERM.match(chunk)
        if not m:
            raise ParseError(f"bad vector term {chunk!r}")
        coef, deg, col = m.groups()
        coef = coef.replace(" ", "")
        if coef in ("", "+"):
            c = Fraction(1)
        elif coef == "-":
            c = Fraction(-1)
        else:
            c = Fraction(coef)
        if deg is None:
            deg = "1" if re.search(r"t(?!\^)", chunk) else "0"
        key = (int(deg), int(col))
        out[key] = out.get(key, 0) + c
    return {k: c for k, c in out.items() if c}


# group elements


class GroupElement:
    """Upper unitriangular n x n matrix over Q[t, 1/t]."""

    def __init__(self, n: int, entries=None):
        self.n = n
        e = {}
        for (k, i), v in dict(entries or {}).items():
            if not 1 <= k < i <= n:
                raise ValueError(f"entry ({k},{i}) is not strictly upper triangular")
            v = v if isinstance(v, LaurentPoly) else LaurentPoly.const(v)
            if v:
                e[(k, i)] = v
        self.entries = e

    @classmethod
    def identity(cls, n: int) -> "GroupElement":
        return cls(n)

    def entry(self, k: int, i: int) -> LaurentPoly:
        if k == i:
            return LaurentPoly.const(1)
        return self.entries.get((k, i), LaurentPoly())

    def as_entries(self) -> dict:
        """Entries keyed (i, j), i < j, for polynomial evaluation."""
        return {(k, i): self.entry(k, i) for k in range(1, self.n + 1) for i in range(k + 1, self.n + 1)}

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        n = self.n
        out = {}
        for k in range(1, n + 1):
            for i in range(k + 1, n + 1):
                acc = LaurentPoly()
                for m in range(k, i + 1):
                    a, b = self.entry(k, m), other.entry(m, i)
                    if a and b:
                        acc = acc + a * b
                out[(k, i)] = acc
        return GroupElement(n, out)

    def inverse(self) -> "GroupElement":
        # g = 1 + N with N strictly upper triangular: g^-1 = sum_k (-N)^k
        neg = {k: -v for k, v in self.entries.items()}
        total = dict(neg)
        power = neg
        for _ in range(self.n - 2):
            power = _nil_mul(power, neg, self.n)
            for k, v in power.items():
                total[k] = total[k] + v if k in total else v
        return GroupElement(self.n, total)

    def max_negative_degree(self) -> int:
        return max([0] + [-v.min_degree() for v in self.entries.values()])

    def apply(self, v: dict) -> dict:
        out: dict = {}
        for (j, i), c in v.items():
            for k in range(1, i + 1):
                g = self.entry(k, i)
                for m, gc in g.terms().items():
                    key = (j + m, k)
                    out[key] = out.get(key, 0) + c * gc
        return {k: c for k, c in out.items() if c}

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.n == other.n and self.entries == other.entries

    def __repr__(self):
        return f"GroupElement({self.n}, {self.entries!r})"


def _nil_mul(a: dict, b: dict, n: int) -> dict:
    out = {}
    for k in range(1, n + 1):
        for i in range(k + 2, n + 1):
            acc = LaurentPoly()
            for m in range(k + 1, i):
                x, y = a.get((k, m)), b.get((m, i))
                if x and y:
                    acc = acc + x * y
            if acc:
                out[(k, i)] = acc
    return out


# lattices


@dataclass(frozen=True)
class TruncatedLattice:
    n: int
    lo: int
    hi: int
    rows: tuple  # reduced echelon basis of Y / t^hi X_0

    # coordinates

    @property
    def size(self) -> int:
        return (self.hi - self.lo) * self.n

    def index(self, j: int, i: int) -> int:
        return (j - self.lo) * self.n + (i - 1)

    def coord(self, idx: int):
        return idx // self.n + self.lo, idx % self.n + 1

    def dense(self, v: dict) -> list:
        row = [Fraction(0)] * self.size
        for (j, i), c in v.items():
            if j >= self.hi:
                continue
            if j < self.lo:
                raise WindowOverflow(f"t^{j} e{i} lies below the window starting at t^{self.lo}")
            row[self.index(j, i)] += c
        return row

    def sparse(self, row) -> dict:
        return {self.coord(k): c for k, c in enumerate(row) if c}

    @property
    def dim(self) -> int:
        return len(self.rows)

    def basis(self):
        return [self.sparse(r) for r in self.rows]

    def contains(self, v: dict) -> bool:
        return rank(list(self.rows) + [self.dense(v)], self.size) == self.dim

    def is_t_stable(self) -> bool:
        shifted = [self.dense({k: c for k, c in vec_shift(self.sparse(r), 1).items() if k[0] < self.hi}) for r in self.rows]
        return rank(list(self.rows) + shifted, self.size) == self.dim

    # construction

    @classmethod
    def from_rows(cls, n: int, lo: int, hi: int, vectors, close: bool = True) -> "TruncatedLattice":
        """Span of sparse vectors inside the window; ``close`` adds all t-shifts."""
        if hi <= lo:
            raise ValueError("empty window")
        tmp = cls(n, lo, hi, ())
        rows = []
        for v in vectors:
            v = {k: c for k, c in v.items() if k[0] < hi}
            if not v:
                continue
            shifts = range(hi - lo) if close else range(1)
            for s in shifts:
                w = {k: c for k, c in vec_shift(v, s).items() if k[0] < hi}
                if not w:
                    break
                rows.append(tmp.dense(w))
        red, _ = rref(rows, tmp.size)
        y = cls(n, lo, hi, tuple(tuple(r) for r in red))
        if not close and not y.is_t_stable():
            raise NotTStable("span is not closed under t")
        return y

    @classmethod
    def coweight_lattice(cls, lam, window=None) -> "TruncatedLattice":
        lam = tuple(lam)
        lo, hi = window if window else (min(-x for x in lam), max(-x for x in lam) + 1)
        return from_generators(len(lam), [], lam, (lo, hi))

    # windows

    def reframe(self, lo: int, hi: int) -> "TruncatedLattice":
        """The same lattice in another window."""
        vecs = self.basis()
        if hi < self.hi:
            for j in range(hi, self.hi):
                for i in range(1, self.n + 1):
                    if not self.contains({(j, i): 1}):
                        raise WindowTooSmall(f"t^{j} e{i} is not in the lattice; cannot cut the window at {hi}")
        if lo > self.lo and any(k[0] < lo for v in vecs for k in v):
            raise WindowOverflow(f"lattice has components below t^{lo}")
        extra = [{(j, i): 1} for j in range(self.hi, hi) for i in range(1, self.n + 1)]
        return TruncatedLattice.from_rows(self.n, lo, hi, vecs + extra, close=False)

    def padded(self, k: int = 1) -> "TruncatedLattice":
        return self.reframe(self.lo - k, self.hi + k)

    def same_as(self, other: "TruncatedLattice") -> bool:
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        return self.reframe(lo, hi).rows == other.reframe(lo, hi).rows

    # intersections

    def intersection_rows(self, cols) -> list:
        """Basis of Y intersected with the span of the given columns."""
        cols = set(cols)
        inside = [k for k in range(self.size) if self.coord(k)[1] in cols]
        outside = [k for k in range(self.size) if self.coord(k)[1] not in cols]
        red, piv = rref(self.rows, self.size, order=outside + inside)
        inside_set = set(inside)
        return [r for r, p in zip(red, piv) if p in inside_set]

    def intersection_dim(self, cols) -> int:
        return len(self.intersection_rows(cols))


def from_generators(n: int, vectors, base, window=None) -> TruncatedLattice:
    """Span of the coweight lattice of ``base`` and the t-closure of ``vectors``."""
    base = tuple(base)
    if len(base) != n:
        raise ValueError("base coweight must have n entries")
    vectors = [dict(v) for v in vectors]
    lows = [j for v in vectors for (j, _) in v] + [-b for b in base]
    lo_need = min(lows)
    hi_need = max(-b for b in base)
    if window is None:
        lo, hi = lo_need, hi_need + 1
    else:
        lo, hi = window
        if lo > lo_need:
            raise WindowOverflow(f"window starts at t^{lo} but data reaches t^{lo_need}")
        if hi < hi_need:
            raise WindowOverflow(f"window ends at t^{hi} but the base lattice needs t^{hi_need}")
    base_vecs = [{(j, i): 1} for i in range(1, n + 1) for j in range(-base[i - 1], hi)]
    return TruncatedLattice.from_rows(n, lo, hi, base_vecs + vectors, close=True)


def base_of(y: TruncatedLattice) -> tuple:
    """Coweight of the span of basis vectors t^j e_i lying in Y."""
    return tuple(y.intersection_dim([i]) - y.hi for i in range(1, y.n + 1))


def _interval(i, j):
    return range(i, j + 1)


def classify(y: TruncatedLattice, verify_padding: bool = False) -> ExtendedPicture:
    n = y.n
    inter = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            inter[(i, j)] = y.intersection_rows(_interval(i, j))
    loops = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            whole = len(inter[(i, j)])
            sub = rank(inter[(i + 1, j)] + inter[(i, j - 1)], y.size)
            loops.extend([Loop(i, j)] * (whole - sub))
    base = tuple(len(inter[(i, i)]) - y.hi for i in range(1, n + 1))
    result = ExtendedPicture(KostantPicture(n, tuple(loops)), base)
    if verify_padding and classify(y.padded(1)) != result:
        raise WindowTooSmall("classification changed under padding")
    return result


def lattice_d_stats(y: TruncatedLattice, m: int | None = None) -> dict:
    """d_ij(Y) = dim(Y cap V_ij / mbar cap V_ij) for the level-m coweight lattice mbar."""
    if m is None:
        m = min(base_of(y))
    out = {}
    for i in range(1, y.n + 1):
        for j in range(i, y.n + 1):
            out[(i, j)] = y.intersection_dim(_interval(i, j)) - (j - i + 1) * (y.hi + m)
    return out


def shift(y: TruncatedLattice, nu) -> TruncatedLattice:
    """The lattice nu . Y: column i moved up by nu_i."""
    vecs = [{(j - nu[i - 1], i): c for (j, i), c in v.items()} for v in y.basis()]
    lo = y.lo - max(nu)
    hi = y.hi - min(nu)
    extra = [{(j, i): 1} for i in range(1, y.n + 1) for j in range(y.hi - nu[i - 1], hi)]
    return TruncatedLattice.from_rows(y.n, lo, hi, vecs + extra, close=False)


def act(g: GroupElement, y: TruncatedLattice) -> TruncatedLattice:
    """g . Y for a unitriangular Laurent matrix g."""
    lo = y.lo - g.max_negative_degree()
    hi = y.hi + g.inverse().max_negative_degree()
    vecs = y.basis() + [{(j, i): 1} for j in range(y.hi, hi) for i in range(1, y.n + 1)]
    images = [g.apply(v) for v in vecs]
    return TruncatedLattice.from_rows(y.n, lo, hi, images, close=False)


def moment_map(y: TruncatedLattice) -> tuple:
    base = base_of(y)
    non_base = [k for k in range(y.size) if y.coord(k)[0] < -base[y.coord(k)[1] - 1]]
    proj = [[r[k] for k in non_base] for r in y.rows]
    red, _ = rref(proj, len(non_base))
    x = [Fraction(0)] * y.n
    if red:
        gram = [[sum(a * b for a, b in zip(r, s)) for s in red] for r in red]
        ginv = inverse(gram)
        for pos, k in enumerate(non_base):
            col = [r[pos] for r in red]
            if not any(col):
                continue
            diag = sum(col[a] * ginv[a][b] * col[b] for a in range(len(red)) for b in range(len(red)) if col[a] and col[b])
            x[y.coord(k)[1] - 1] += diag
    total = [Fraction(b) + xi for b, xi in zip(base, x)]
    mean = sum(total) / y.n
    return tuple(v - mean for v in total)


# sampling points of an MV-cycle


def _rand_q(rng: random.Random, nonzero=False) -> Fraction:
    while True:
        c = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
        if c or not nonzero:
            return c


def sample_window(p: ExtendedPicture):
    n = p.n
    through = [sum(1 for l in p.loops if l.passes(i)) for i in range(1, n + 1)]
    lo = min(-b - c for b, c in zip(p.base, through)) - 1
    hi = max(-b for b in p.base) + 1
    return lo, hi


def random_lattice(p: ExtendedPicture, rng: random.Random) -> TruncatedLattice:
    """A generic lattice built from a loop basis y_L with t.y_L in span{y_L' : L' inside L} + base."""
    pic = p.picture
    order = sorted(range(len(pic)), key=lambda a: (pic.loops[a].length, -a))
    ys: dict = {}
    for a in order:
        l = pic.loops[a]
        v: dict = {}
        for b in ys:
            if pic.encircles(a, b):
                c = _rand_q(rng)
                for k, x in ys[b].items():
                    v[k] = v.get(k, 0) + c * x
        for i in range(l.left, l.right + 1):
            key = (-p.base[i - 1], i)
            v[key] = v.get(key, 0) + _rand_q(rng, nonzero=True)
        ys[a] = {k: c for k, c in vec_shift(v, -1).items() if c}
    return from_generators(p.n, list(ys.values()), p.base, sample_window(p))


def _solve_combination(rows, size, constrained, target):
    """Coefficients c with (sum c_r rows_r)[k] = target[k] for k in constrained, or None."""
    # columns of the system are the rows of the lattice basis
    m = len(rows)
    system = [[rows[r][k] for r in range(m)] + [target.get(k, Fraction(0))] for k in constrained]
    red, piv = rref(system, m + 1)
    if m in piv:
        return None
    c = [Fraction(0)] * m
    for row, p in zip(red, piv):
        c[p] = row[m]
    return c


def group_element_for(y: TruncatedLattice, mu) -> GroupElement | None:
    """Some unitriangular g with g . mubar = Y, or None if Y is not of that form."""
    n = y.n
    entries = {}
    rows = list(y.rows)
    for i in range(1, n + 1):
        constrained = [k for k in range(y.size) if y.coord(k)[1] >= i]
        if y.lo > -mu[i - 1] or -mu[i - 1] >= y.hi:
            return None
        target = {y.index(-mu[i - 1], i): Fraction(1)}
        c = _solve_combination(rows, y.size, constrained, target)
        if c is None:
            return None
        w = [sum(c[r] * rows[r][k] for r in range(len(rows)) if c[r]) for k in range(y.size)]
        for k, x in enumerate(w):
            if x:
                j, col = y.coord(k)
                if col < i:
                    key = (col, i)
                    entries.setdefault(key, {})
                    entries[key][j + mu[i - 1]] = x
    g = GroupElement(n, {k: LaurentPoly(v) for k, v in entries.items()})
    mubar = TruncatedLattice.coweight_lattice(mu)
    return g if act(g, mubar).same_as(y) else None


def random_stabilizer(mu, rng: random.Random, spread: int = 2) -> GroupElement:
    """Random unitriangular s with s . mubar = mubar (deg s_ki >= mu_i - mu_k)."""
    n = len(mu)
    entries = {}
    for k in range(1, n + 1):
        for i in range(k + 1, n + 1):
            low = mu[i - 1] - mu[k - 1]
            entries[(k, i)] = LaurentPoly({low + s: _rand_q(rng) for s in range(spread)})
    return GroupElement(n, entries)


def sample_point(p: ExtendedPicture, rng: random.Random, attempts: int = 50):
    """(g, Y) with Y = g . mubar generic in the MV-cycle of p, and classify(Y) = p."""
    _, mu = coweights(p)
    for _ in range(attempts):
        y = random_lattice(p, rng)
        if classify(y) != p:
            continue
        g = group_element_for(y, mu)
        if g is not None:
            return g, y
    raise SamplingExhausted(f"no valid sample after {attempts} attempts")


# file format


def format_lattice(y: TruncatedLattice) -> str:
    lines = [f"n={y.n}", f"window={y.lo},{y.hi}"]
    lines += [format_vector(v) for v in y.basis()]
    return "\n".join(lines) + "\n"


def parse_lattice(text: str) -> TruncatedLattice:
    """Lines ``n=``, optional ``window=lo,hi``, optional ``base=(...)``, then one generator per line."""
    n = None
    window = None
    base = None
    vectors = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.match(r"^(n|window|base)\s*[=:]\s*(.*)$", line)
        if m:
            key, val = m.groups()
            nums = [int(x) for x in re.findall(r"-?\d+", val)]
            if key == "n":
                n = nums[0]
            elif key == "window":
                window = (nums[0], nums[1])
            else:
                base = tuple(nums)
            continue
        try:
            vectors.append(parse_vector(line))
        except ParseError as e:
            raise ParseError(f"line {lineno}: {e}") from None
    if n is None:
        raise ParseError("lattice file needs n=")
    if base is None:
        if window is None:
            raise ParseError("lattice file needs base= or window=")
        # plain span: the window top is the cut-off t^hi X_0
        base = (-window[1],) * n
    return from_generators(n, vectors, base, window)

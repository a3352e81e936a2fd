"""Kostant pictures, extended pictures and the fusion order.

A loop is a column interval (left, right) with left < right; it stands for
the positive root a_left + ... + a_{right-1}.  Pictures keep their loops in
the canonical order: ascending left end, and for equal left ends the outer
(longer) loop first.  Identical loops are nested by position, the earlier
copy encircling the later one.
"""

from __future__ import annotations

import enum
import json
import re
from collections import Counter, deque
from dataclasses import dataclass
from typing import NamedTuple

from .errors import BadLevel, LimitExceeded, NotOverlapping, ParseError
from .exactalg import MultiPoly
from .exactalg.poly import layout


class Loop(NamedTuple):
    left: int
    right: int

    @property
    def length(self) -> int:
        return self.right - self.left

    def passes(self, col: int) -> bool:
        return self.left <= col <= self.right

    def within(self, other: "Loop") -> bool:
        """Interval containment (not necessarily proper)."""
        return other.left <= self.left and self.right <= other.right

    def overlaps(self, other: "Loop") -> bool:
        """Neither contains the other and they share at least one column."""
        a, b = (self, other) if self.left <= other.left else (other, self)
        return a.left < b.left <= a.right < b.right

    def __str__(self):
        return f"({self.left},{self.right})"


def loop_order_key(loop: Loop):
    return (loop.left, -loop.right)


@dataclass(frozen=True)
class KostantPicture:
    n: int
    loops: tuple

    def __post_init__(self):
        loops = tuple(sorted((Loop(*l) for l in self.loops), key=loop_order_key))
        for l in loops:
            if not (1 <= l.left < l.right <= self.n):
                raise ValueError(f"loop {l} does not fit in {self.n} columns")
        object.__setattr__(self, "loops", loops)

    @classmethod
    def empty(cls, n: int) -> "KostantPicture":
        return cls(n, ())

    def __len__(self) -> int:
        return len(self.loops)

    @property
    def size(self) -> int:
        return len(self.loops)

    def counts(self) -> Counter:
        return Counter(self.loops)

    def left_counts(self) -> tuple:
        c = [0] * self.n
        for l in self.loops:
            c[l.left - 1] += 1
        return tuple(c)

    def right_counts(self) -> tuple:
        c = [0] * self.n
        for l in self.loops:
            c[l.right - 1] += 1
        return tuple(c)

    def weight(self) -> tuple:
        """Root-lattice weight in the simple-root basis."""
        w = [0] * (self.n - 1)
        for l in self.loops:
            for k in range(l.left - 1, l.right - 1):
                w[k] += 1
        return tuple(w)

    def encircles(self, a: int, b: int) -> bool:
        """Whether loop index ``a`` strictly encircles loop index ``b``."""
        la, lb = self.loops[a], self.loops[b]
        if la == lb:
            return a < b
        return lb.within(la)

    def is_richardson(self) -> bool:
        return not any(
            self.encircles(a, b) for a in range(len(self)) for b in range(len(self)) if a != b
        )

    def __str__(self):
        return format_picture(self)


Coweight = tuple


@dataclass(frozen=True)
class ExtendedPicture:
    picture: KostantPicture
    base: tuple

    def __post_init__(self):
        base = tuple(int(b) for b in self.base)
        if len(base) != self.picture.n:
            raise ValueError("base coweight length must equal n")
        object.__setattr__(self, "base", base)

    @property
    def n(self) -> int:
        return self.picture.n

    @property
    def loops(self) -> tuple:
        return self.picture.loops

    @property
    def highest(self) -> tuple:
        return coweights(self)[0]

    @property
    def lowest(self) -> tuple:
        return coweights(self)[1]

    def shifted(self, nu) -> "ExtendedPicture":
        return ExtendedPicture(self.picture, tuple(b + v for b, v in zip(self.base, nu)))

    def __str__(self):
        return format_picture(self)


def extended(picture: KostantPicture, base=None) -> ExtendedPicture:
    return ExtendedPicture(picture, base if base is not None else (0,) * picture.n)


def coweights(p: ExtendedPicture):
    """(highest, lowest) coweights: base plus counts of left (resp. right) ends per column."""
    lam = tuple(b + c for b, c in zip(p.base, p.picture.left_counts()))
    mu = tuple(b + c for b, c in zip(p.base, p.picture.right_counts()))
    return lam, mu


@dataclass(frozen=True)
class DStats:
    m: int
    d: tuple  # d[i-1][j-1] for i <= j, zero below the diagonal

    def __getitem__(self, ij):
        i, j = ij
        return self.d[i - 1][j - 1]

    def entries(self):
        n = len(self.d)
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                yield (i, j), self.d[i - 1][j - 1]


def d_stats(p: ExtendedPicture, m: int | None = None) -> DStats:
    """Loops (zero loops included, relative to level m) lying inside columns i..j."""
    if m is None:
        m = min(p.base)
    if any(b < m for b in p.base):
        raise BadLevel(f"level {m} exceeds a base entry of {p.base}")
    n = p.n
    zero = [b - m for b in p.base]
    d = [[0] * n for _ in range(n)]
    for i in range(1, n + 1):
        acc = 0
        for j in range(i, n + 1):
            acc += zero[j - 1]
            d[i - 1][j - 1] = acc
    for l in p.loops:
        for i in range(1, l.left + 1):
            row = d[i - 1]
            for j in range(l.right, n + 1):
                row[j - 1] += 1
    return DStats(m, tuple(tuple(r) for r in d))


def picture_from_dstats(stats: DStats) -> ExtendedPicture:
    """Inverse of :func:`d_stats` by inclusion-exclusion."""
    n = len(stats.d)

    def d(i, j):
        if i > j or i < 1 or j > n:
            return 0
        return stats[i, j]

    loops = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            k = d(i, j) - d(i + 1, j) - d(i, j - 1) + d(i + 1, j - 1)
            if k < 0:
                raise ValueError("inconsistent D-statistics")
            loops.extend([Loop(i, j)] * k)
    base = tuple(stats[i, i] + stats.m for i in range(1, n + 1))
    return ExtendedPicture(KostantPicture(n, tuple(loops)), base)


def fuse(p: ExtendedPicture, a: Loop, b: Loop) -> ExtendedPicture:
    """Replace overlapping loops a, b by their union and intersection.

    A one-column intersection becomes a zero loop, i.e. a base increment.
    """
    a, b = Loop(*a), Loop(*b)
    if not a.overlaps(b):
        raise NotOverlapping(f"{a} and {b} do not overlap")
    counts = p.picture.counts()
    if counts[a] < 1 or counts[b] < 1:
        raise NotOverlapping(f"{a} or {b} is not a loop of the picture")
    if a.left > b.left:
        a, b = b, a
    counts[a] -= 1
    counts[b] -= 1
    counts[Loop(a.left, b.right)] += 1
    base = list(p.base)
    if b.left < a.right:
        counts[Loop(b.left, a.right)] += 1
    else:
        base[b.left - 1] += 1
    return ExtendedPicture(KostantPicture(p.n, tuple(counts.elements())), tuple(base))


def overlapping_pairs(picture: KostantPicture):
    distinct = sorted(set(picture.loops), key=loop_order_key)
    for x in range(len(distinct)):
        for y in range(x + 1, len(distinct)):
            if distinct[x].overlaps(distinct[y]):
                yield distinct[x], distinct[y]


class Ordering(str, enum.Enum):
    LESS = "LESS"
    EQUAL = "EQUAL"
    GREATER = "GREATER"
    INCOMPARABLE = "INCOMPARABLE"

    def __str__(self):
        return self.value


def compare(p: ExtendedPicture, q: ExtendedPicture) -> Ordering:
    """Fusion order via D-statistics: p > q iff same coweights and D(q) > D(p)."""
    if p.n != q.n:
        raise ValueError("pictures have different column counts")
    if p == q:
        return Ordering.EQUAL
    if coweights(p) != coweights(q):
        return Ordering.INCOMPARABLE
    m = min(min(p.base), min(q.base))
    dp, dq = d_stats(p, m).d, d_stats(q, m).d
    ge = le = True
    for rp, rq in zip(dp, dq):
        for x, y in zip(rp, rq):
            if y < x:
                ge = False
            elif y > x:
                le = False
    if ge and not le:
        return Ordering.GREATER
    if le and not ge:
        return Ordering.LESS
    return Ordering.INCOMPARABLE


def align_bases(p: KostantPicture, q: KostantPicture):
    """Bases making (p, 0) and (q, base) share coweights, or None if weights differ."""
    lp, rp = p.left_counts(), p.right_counts()
    lq, rq = q.left_counts(), q.right_counts()
    shift = tuple(a - b for a, b in zip(lp, lq))
    if shift != tuple(a - b for a, b in zip(rp, rq)):
        return None
    return (0,) * p.n, shift


def compare_plain(p: KostantPicture, q: KostantPicture) -> Ordering:
    """Order on plain pictures: p > q iff (p, b) > (q, b') for some bases."""
    if p.n != q.n:
        raise ValueError("pictures have different column counts")
    if p == q:
        return Ordering.EQUAL
    bases = align_bases(p, q)
    if bases is None:
        return Ordering.INCOMPARABLE
    return compare(ExtendedPicture(p, bases[0]), ExtendedPicture(q, bases[1]))


def downset(p: ExtendedPicture, max_loops: int = 10, max_size: int = 200_000) -> set:
    """Every q <= p, by breadth-first closure under fusion."""
    if len(p.picture) > max_loops:
        raise LimitExceeded(f"{len(p.picture)} loops exceeds the limit of {max_loops}")
    seen = {p}
    queue = deque([p])
    while queue:
        cur = queue.popleft()
        for a, b in overlapping_pairs(cur.picture):
            nxt = fuse(cur, a, b)
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > max_size:
                    raise LimitExceeded(f"downset larger than {max_size}")
                queue.append(nxt)
    return seen


def add(p: KostantPicture, q: KostantPicture) -> KostantPicture:
    if p.n != q.n:
        raise ValueError("pictures have different column counts")
    return KostantPicture(p.n, p.loops + q.loops)


def add_extended(p: ExtendedPicture, q: ExtendedPicture) -> ExtendedPicture:
    return ExtendedPicture(add(p.picture, q.picture), tuple(a + b for a, b in zip(p.base, q.base)))


def monomial(p: KostantPicture) -> MultiPoly:
    lay = layout(p.n)
    exps = [0] * lay.nvars
    for l in p.loops:
        exps[lay.index[(l.left, l.right)]] += 1
    return MultiPoly.monomial(p.n, exps)


def picture_of_monomial(exps, n: int) -> KostantPicture:
    lay = layout(n)
    loops = []
    for idx, e in enumerate(exps):
        loops.extend([Loop(*lay.pairs[idx])] * e)
    return KostantPicture(n, tuple(loops))


def all_loops(n: int):
    return [Loop(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def kostant_partitions(weight, n: int):
    """All pictures of the given simple-root weight."""
    loops = all_loops(n)
    out = []

    def rec(idx, remaining, chosen):
        if not any(remaining):
            out.append(KostantPicture(n, tuple(chosen)))
            return
        if idx == len(loops):
            return
        l = loops[idx]
        cap = min(remaining[l.left - 1 : l.right - 1])
        for k in range(cap, -1, -1):
            rem = list(remaining)
            for c in range(l.left - 1, l.right - 1):
                rem[c] -= k
            rec(idx + 1, rem, chosen + [l] * k)

    rec(0, list(weight), [])
    return out


def pictures_up_to(n: int, max_loops: int):
    """Every picture on n columns with at most ``max_loops`` loops."""
    loops = all_loops(n)
    out = [KostantPicture.empty(n)]
    frontier = [((), 0)]
    for _ in range(max_loops):
        nxt = []
        for chosen, start in frontier:
            for k in range(start, len(loops)):
                c = chosen + (loops[k],)
                out.append(KostantPicture(n, c))
                nxt.append((c, k))
        frontier = nxt
    return out


# text and JSON formats

def format_picture(p) -> str:
    if isinstance(p, ExtendedPicture):
        base = ",".join(str(b) for b in p.base)
        return f"{format_picture(p.picture)}; base=({base})"
    return f"n={p.n}; loops=" + "".join(str(l) for l in p.loops)


_FIELD = re.compile(r"^\s*(n|loops|base)\s*=\s*(.*?)\s*$")


def parse_picture(text: str):
    """Parse ``n=6; loops=(1,5)(2,3); base=(...)``; returns an ExtendedPicture when base is given."""
    fields = {}
    for part in text.strip().split(";"):
        if not part.strip():
            continue
        m = _FIELD.match(part)
        if not m:
            raise ParseError(f"bad picture field {part!r}")
        fields[m.group(1)] = m.group(2)
    if "n" not in fields:
        raise ParseError("picture text needs n=")
    n = int(fields["n"])
    loops = [
        Loop(int(a), int(b)) for a, b in re.findall(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)", fields.get("loops", ""))
    ]
    pic = KostantPicture(n, tuple(loops))
    if "base" in fields:
        base = tuple(int(x) for x in re.findall(r"-?\d+", fields["base"]))
        return ExtendedPicture(pic, base)
    return pic


def picture_to_json(p) -> dict:
    if isinstance(p, ExtendedPicture):
        d = picture_to_json(p.picture)
        d["base"] = list(p.base)
        return d
    return {"n": p.n, "loops": [[l.left, l.right] for l in p.loops]}


def picture_from_json(obj):
    if isinstance(obj, str):
        obj = json.loads(obj)
    pic = KostantPicture(obj["n"], tuple(Loop(*l) for l in obj["loops"]))
    if "base" in obj:
        return ExtendedPicture(pic, tuple(obj["base"]))
    return pic

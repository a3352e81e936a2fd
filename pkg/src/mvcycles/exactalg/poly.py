"""Sparse polynomials in the above-diagonal entries x_ij of a unitriangular matrix.

Monomials are packed into a single Python int: one 16-bit field per variable
plus a leading total-degree field.  With that layout integer comparison is the
graded lexicographic order (x_1_2 > x_1_3 > ... > x_{n-1}_n), and monomial
multiplication is integer addition.  Exponents must stay below 2**15.
"""

from __future__ import annotations

import heapq
import json
import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from ..errors import NonExactDivision, ParseError

WIDTH = 16
_MAX_DEGREE = 1 << (WIDTH - 1)


class Layout:
    """Variable indexing and bit layout for a fixed column count ``n``."""

    def __init__(self, n: int):
        self.n = n
        self.pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        self.index = {p: k for k, p in enumerate(self.pairs)}
        self.nvars = len(self.pairs)
        self.shifts = [WIDTH * (self.nvars - 1 - k) for k in range(self.nvars)]
        self.deg_shift = WIDTH * self.nvars
        self.mask = (1 << WIDTH) - 1
        guard = 0
        for s in self.shifts + [self.deg_shift]:
            guard |= 1 << (s + WIDTH - 1)
        self.guard = guard
        self.var_keys = [(1 << self.deg_shift) | (1 << s) for s in self.shifts]

    def pack(self, exps) -> int:
        if len(exps) != self.nvars:
            raise ValueError(f"expected {self.nvars} exponents, got {len(exps)}")
        deg = 0
        key = 0
        for e, s in zip(exps, self.shifts):
            if e < 0:
                raise ValueError("negative exponent")
            deg += e
            key |= e << s
        if deg >= _MAX_DEGREE:
            raise OverflowError("total degree too large for packed monomials")
        return key | (deg << self.deg_shift)

    def unpack(self, key: int) -> tuple:
        m = self.mask
        return tuple((key >> s) & m for s in self.shifts)

    def degree(self, key: int) -> int:
        return key >> self.deg_shift

    def divides(self, small: int, big: int) -> bool:
        g = self.guard
        return ((big | g) - small) & g == g


@lru_cache(maxsize=None)
def layout(n: int) -> Layout:
    return Layout(n)


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _cdiv(a, b):
    if type(a) is int and type(b) is int and a % b == 0:
        return a // b
    return _norm(Fraction(a, b))


def _is_scalar(x) -> bool:
    return isinstance(x, Rational)


class MultiPoly:
    """Immutable sparse polynomial over Q in the variables x_ij, 1 <= i < j <= n."""

    __slots__ = ("n", "_t", "_hash")

    def __init__(self, n: int, terms=None):
        self.n = n
        lay = layout(n)
        t = {}
        if terms:
            for exps, c in dict(terms).items():
                c = _norm(Fraction(c)) if not isinstance(c, int) else c
                if c:
                    k = lay.pack(tuple(exps))
                    c = t.get(k, 0) + c
                    if c:
                        t[k] = c
                    else:
                        del t[k]
        self._t = t
        self._hash = None

    @classmethod
    def _raw(cls, n: int, t: dict) -> "MultiPoly":
        p = cls.__new__(cls)
        p.n = n
        p._t = t
        p._hash = None
        return p

    # constructors

    @classmethod
    def zero(cls, n: int) -> "MultiPoly":
        return cls._raw(n, {})

    @classmethod
    def const(cls, n: int, c) -> "MultiPoly":
        c = _norm(c)
        return cls._raw(n, {0: c} if c else {})

    @classmethod
    def one(cls, n: int) -> "MultiPoly":
        return cls._raw(n, {0: 1})

    @classmethod
    def var(cls, i: int, j: int, n: int) -> "MultiPoly":
        lay = layout(n)
        if (i, j) not in lay.index:
            raise ValueError(f"x_{i}_{j} is not a variable for n={n}")
        return cls._raw(n, {lay.var_keys[lay.index[(i, j)]]: 1})

    @classmethod
    def entry(cls, i: int, j: int, n: int) -> "MultiPoly":
        """Matrix entry of the generic unitriangular matrix: 1 on, 0 below the diagonal."""
        if i == j:
            return cls.one(n)
        if i > j:
            return cls.zero(n)
        return cls.var(i, j, n)

    @classmethod
    def monomial(cls, n: int, exps, coeff=1) -> "MultiPoly":
        return cls(n, {tuple(exps): coeff})

    # inspection

    def __bool__(self) -> bool:
        return bool(self._t)

    def __len__(self) -> int:
        return len(self._t)

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant_value(self):
        return self._t.get(0, 0)

    def terms(self) -> dict:
        """Exponent tuple -> coefficient, in canonical (descending grlex) order."""
        lay = layout(self.n)
        return {lay.unpack(k): self._t[k] for k in sorted(self._t, reverse=True)}

    def packed_terms(self) -> dict:
        return self._t

    def monomials(self) -> list:
        lay = layout(self.n)
        return [lay.unpack(k) for k in sorted(self._t, reverse=True)]

    def coefficient(self, exps):
        return self._t.get(layout(self.n).pack(tuple(exps)), 0)

    def leading(self):
        if not self._t:
            raise ValueError("zero polynomial has no leading term")
        k = max(self._t)
        return layout(self.n).unpack(k), self._t[k]

    def degree(self) -> int:
        if not self._t:
            return -1
        return layout(self.n).degree(max(self._t))

    def weights(self) -> set:
        return {weight_of_monomial(e, self.n) for e in self.monomials()}

    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    def sort_key(self) -> tuple:
        return tuple(sorted(self._t.items(), reverse=True))

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.n != self.n:
                raise ValueError("column counts differ")
            return other
        if _is_scalar(other):
            return MultiPoly.const(self.n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self._t)
        for k, c in other._t.items():
            v = t.get(k, 0) + c
            if v:
                t[k] = v
            else:
                del t[k]
        return MultiPoly._raw(self.n, t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.n, {k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if _is_scalar(other):
            other = _norm(other)
            if not other:
                return MultiPoly.zero(self.n)
            return MultiPoly._raw(self.n, {k: _norm(c * other) for k, c in self._t.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._t, other._t
        if not a or not b:
            return MultiPoly.zero(self.n)
        lay = layout(self.n)
        if lay.degree(max(a)) + lay.degree(max(b)) >= _MAX_DEGREE:
            raise OverflowError("total degree too large for packed monomials")
        if len(a) < len(b):
            a, b = b, a
        t: dict = {}
        get = t.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                t[k] = get(k, 0) + ca * cb
        return MultiPoly._raw(self.n, {k: c for k, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = MultiPoly.one(self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.n == other.n and self._t == other._t
        if _is_scalar(other):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._t.items())))
        return self._hash

    def exact_divide(self, other) -> "MultiPoly":
        return exact_divide(self, other)

    def subs(self, values):
        """Evaluate at scalar values; ``values`` maps (i, j) to a number."""
        lay = layout(self.n)
        total = 0
        for k, c in self._t.items():
            term = c
            for idx, e in enumerate(lay.unpack(k)):
                if e:
                    try:
                        term = term * values[lay.pairs[idx]] ** e
                    except KeyError:
                        from ..errors import MissingEntry

                        raise MissingEntry(f"no value for x_{lay.pairs[idx][0]}_{lay.pairs[idx][1]}")
            total = total + term
        return _norm(total) if isinstance(total, Fraction) else total

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MultiPoly(n={self.n}, {format_poly(self)!r})"


def exact_divide(numerator: MultiPoly, denominator: MultiPoly) -> MultiPoly:
    """Return q with q * denominator == numerator, or raise NonExactDivision.

    Leading-term elimination in grlex order; the remainder is kept in a dict
    with a max-heap of its monomials.
    """
    if _is_scalar(denominator):
        denominator = MultiPoly.const(numerator.n, denominator)
    if numerator.n != denominator.n:
        raise ValueError("column counts differ")
    if not denominator:
        raise ZeroDivisionError("division by the zero polynomial")
    n = numerator.n
    dt = denominator._t
    if not numerator._t:
        return MultiPoly.zero(n)
    if len(dt) == 1 and 0 in dt:
        c = dt[0]
        return MultiPoly._raw(n, {k: _cdiv(v, c) for k, v in numerator._t.items()})
    lay = layout(n)
    guard = lay.guard
    lk = max(dt)
    lc = dt[lk]
    rest = [(k, c) for k, c in dt.items() if k != lk]
    rem = dict(numerator._t)
    heap = [-k for k in rem]
    heapq.heapify(heap)
    q = {}
    pop, push = heapq.heappop, heapq.heappush
    while heap:
        k = -pop(heap)
        c = rem.pop(k, None)
        if c is None:
            continue
        if ((k | guard) - lk) & guard != guard:
            raise NonExactDivision(
                f"{format_poly(denominator)} does not divide {format_poly(numerator)}"
            )
        qk = k - lk
        qc = _cdiv(c, lc)
        q[qk] = qc
        for dk, dc in rest:
            key = qk + dk
            old = rem.get(key)
            if old is None:
                rem[key] = -qc * dc
                push(heap, -key)
            else:
                v = old - qc * dc
                if v:
                    rem[key] = v
                else:
                    del rem[key]
    return MultiPoly._raw(n, q)


def weight_of_monomial(exps, n: int) -> tuple:
    """Root-lattice weight in the simple-root basis: x_ij has weight a_i + ... + a_{j-1}."""
    lay = layout(n)
    w = [0] * (n - 1)
    for idx, e in enumerate(exps):
        if e:
            i, j = lay.pairs[idx]
            for k in range(i - 1, j - 1):
                w[k] += e
    return tuple(w)


# text and JSON forms

def _var_name(i: int, j: int) -> str:
    return f"x_{i}_{j}"


def _format_coeff(c) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def format_poly(p: MultiPoly) -> str:
    if not p._t:
        return "0"
    lay = layout(p.n)
    out = []
    for k in sorted(p._t, reverse=True):
        c = p._t[k]
        neg = c < 0
        a = -c if neg else c
        factors = []
        for idx, e in enumerate(lay.unpack(k)):
            if e:
                name = _var_name(*lay.pairs[idx])
                factors.append(name if e == 1 else f"{name}^{e}")
        if not factors:
            body = _format_coeff(a)
        elif a == 1:
            body = " ".join(factors)
        else:
            body = _format_coeff(a) + " " + " ".join(factors)
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


_TOKEN = re.compile(
    r"\s*(?:(?P<sign>[+-])|(?P<num>\d+(?:/\d+)?)|x_?(?P<i>\d+)_(?P<j>\d+)(?:\^(?P<e>\d+))?|(?P<star>\*))"
)


def parse_poly(text: str, n: int | None = None) -> MultiPoly:
    """Inverse of :func:`format_poly`.  ``n`` defaults to the largest column index seen."""
    terms = []
    sign = 1
    coeff = None
    factors: list = []
    seen_any = False
    pos = 0
    text = text.strip()

    def flush():
        nonlocal coeff, factors, sign, seen_any
        if coeff is None and not factors:
            if seen_any:
                raise ParseError(f"dangling sign in {text!r}")
            return
        terms.append((sign * (coeff if coeff is not None else 1), factors))
        coeff, factors, sign, seen_any = None, [], 1, False

    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse polynomial at {text[pos:]!r}")
        pos = m.end()
        if m.group("sign"):
            if coeff is not None or factors:
                flush()
            if m.group("sign") == "-":
                sign = -sign
            seen_any = True
        elif m.group("num"):
            if factors or coeff is not None:
                raise ParseError(f"misplaced coefficient in {text!r}")
            coeff = _norm(Fraction(m.group("num")))
        elif m.group("i"):
            i, j = int(m.group("i")), int(m.group("j"))
            if i >= j:
                raise ParseError(f"x_{i}_{j} is not above the diagonal")
            factors.append((i, j, int(m.group("e") or 1)))
    flush()
    if n is None:
        n = max([j for _, fs in terms for (_, j, _) in fs], default=2)
    lay = layout(n)
    acc: dict = {}
    for c, fs in terms:
        exps = [0] * lay.nvars
        for i, j, e in fs:
            if (i, j) not in lay.index:
                raise ParseError(f"x_{i}_{j} out of range for n={n}")
            exps[lay.index[(i, j)]] += e
        key = tuple(exps)
        acc[key] = acc.get(key, 0) + c
    return MultiPoly(n, acc)


def poly_to_json(p: MultiPoly) -> dict:
    lay = layout(p.n)
    out = []
    for k in sorted(p._t, reverse=True):
        e = {f"{i},{j}": x for (i, j), x in zip(lay.pairs, lay.unpack(k)) if x}
        out.append({"c": _format_coeff(p._t[k]), "e": e})
    return {"n": p.n, "terms": out}


def poly_from_json(obj, n: int | None = None) -> MultiPoly:
    if isinstance(obj, str):
        obj = json.loads(obj)
    raw = []
    for term in obj["terms"]:
        e = {tuple(int(x) for x in k.split(",")): v for k, v in term["e"].items()}
        raw.append((Fraction(term["c"]), e))
    if n is None:
        n = obj.get("n") or max([j for _, e in raw for (_, j) in e], default=2)
    lay = layout(n)
    acc = {}
    for c, e in raw:
        exps = [0] * lay.nvars
        for pair, x in e.items():
            exps[lay.index[pair]] = x
        acc[tuple(exps)] = acc.get(tuple(exps), 0) + c
    return MultiPoly(n, acc)

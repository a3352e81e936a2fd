"""Laurent polynomials in t with coefficients in any commutative ring.

Coefficients are duck-typed: ints, Fractions, MultiPoly values, or anything
else supporting ``+``, ``*`` and truthiness for zero.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import MissingEntry
from .poly import MultiPoly, layout


def _clean(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    expand = getattr(c, "expand", None)
    if expand is not None and not isinstance(c, MultiPoly):
        c = expand()
    return c


class LaurentPoly:
    __slots__ = ("_t",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for k, c in dict(terms).items():
                c = _clean(c)
                if c:
                    t[int(k)] = c
        self._t = t

    @classmethod
    def _raw(cls, t):
        p = cls.__new__(cls)
        p._t = t
        return p

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, k: int, c=1) -> "LaurentPoly":
        return cls({k: c})

    def terms(self) -> dict:
        return {k: self._t[k] for k in sorted(self._t)}

    def coefficient(self, k: int, zero=0):
        return self._t.get(k, zero)

    def min_degree(self):
        """Lowest exponent with a nonzero coefficient, or None for zero."""
        return min(self._t) if self._t else None

    def max_degree(self):
        return max(self._t) if self._t else None

    def __bool__(self):
        return bool(self._t)

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        return LaurentPoly.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self._t)
        for k, c in other._t.items():
            v = _clean(t[k] + c) if k in t else c
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        return LaurentPoly._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        t: dict = {}
        for ka, ca in self._t.items():
            for kb, cb in other._t.items():
                k = ka + kb
                t[k] = t[k] + ca * cb if k in t else ca * cb
        return LaurentPoly(t)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = LaurentPoly.const(1)
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other)
        return (self - other)._t == {}

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    def __repr__(self):
        if not self._t:
            return "LaurentPoly(0)"
        parts = [f"({c})*t^{k}" for k, c in sorted(self._t.items())]
        return "LaurentPoly(" + " + ".join(parts) + ")"


def t_coefficient(p, k: int):
    """Coefficient of t^k; zero when absent.  Scalars count as constant Laurent polynomials."""
    if not isinstance(p, LaurentPoly):
        return p if k == 0 else 0
    return p.coefficient(k)


def evaluate(p: MultiPoly, entries) -> LaurentPoly:
    """Substitute x_ij -> entries[(i, j)] (Laurent polynomials or scalars).

    Missing keys raise MissingEntry only for variables that actually occur in ``p``.
    """
    lay = layout(p.n)
    cache: dict = {}

    def power(idx, e):
        key = (idx, e)
        if key not in cache:
            pair = lay.pairs[idx]
            try:
                base = entries[pair]
            except KeyError:
                raise MissingEntry(f"no entry for x_{pair[0]}_{pair[1]}") from None
            if not isinstance(base, LaurentPoly):
                base = LaurentPoly.const(base)
            cache[key] = base if e == 1 else power(idx, e - 1) * base
        return cache[key]

    total = LaurentPoly()
    for exps, c in p.terms().items():
        term = LaurentPoly.const(c)
        for idx, e in enumerate(exps):
            if e:
                term = term * power(idx, e)
        total = total + term
    return total

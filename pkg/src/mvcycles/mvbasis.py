"""MV-basis registry, triangular expansion and convolution structure constants."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .detform import build_graph, mv_det
from .errors import CyclicGraph, InvariantViolation, MissingBasisEntry, NoUniqueMaximum, ParseError
from .exactalg import MultiPoly, format_poly, parse_poly
from .kostant import KostantPicture, Ordering, add, compare_plain, format_picture, parse_picture, picture_of_monomial


def _maximal(pictures):
    """Pictures not strictly below any other in the list."""
    out = []
    for p in pictures:
        if not any(compare_plain(q, p) == Ordering.GREATER for q in pictures if q is not p):
            out.append(p)
    return out


def leading_picture(f: MultiPoly) -> KostantPicture:
    if not f:
        raise ValueError("zero polynomial has no leading picture")
    pics = list(dict.fromkeys(picture_of_monomial(e, f.n) for e in f.monomials()))
    top = _maximal(pics)
    if len(top) != 1:
        raise NoUniqueMaximum("maximal pictures: " + "; ".join(format_picture(p) for p in top))
    return top[0]


def check_triangular(p: KostantPicture, poly: MultiPoly):
    """Every monomial picture is <= p and x^p has coefficient 1."""
    lead = picture_of_monomial
    seen_self = False
    for exps, c in poly.terms().items():
        q = lead(exps, poly.n)
        if q == p:
            seen_self = True
            if c != 1:
                raise InvariantViolation(f"coefficient of x^p is {c}, expected 1")
        elif compare_plain(p, q) != Ordering.GREATER:
            raise InvariantViolation(f"monomial picture {format_picture(q)} is not below {format_picture(p)}")
    if not seen_self:
        raise InvariantViolation("x^p does not occur")


@dataclass
class BasisTable:
    n: int
    entries: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)
    auto: bool = False  # register determinantal entries on demand

    def __contains__(self, p):
        return p in self.entries

    def __getitem__(self, p) -> MultiPoly:
        if p not in self.entries:
            if self.auto and build_graph(p).acyclic:
                register_determinantal(self, p)
            else:
                raise MissingBasisEntry(p)
        return self.entries[p]

    def __len__(self):
        return len(self.entries)

    def add(self, p: KostantPicture, poly: MultiPoly, tag: str = "ingested"):
        check_triangular(p, poly)
        self.entries[p] = poly
        self.provenance[p] = tag


def register_determinantal(table: BasisTable, p: KostantPicture):
    if not build_graph(p).acyclic:
        raise CyclicGraph(f"{format_picture(p)} has a cyclic loop graph")
    table.add(p, mv_det(p), "determinantal")


def ingest(table: BasisTable, text: str):
    """Read lines ``<picture> := <polynomial>``; '#' starts a comment."""
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if ":=" not in line:
            raise ParseError(f"line {lineno}: expected '<picture> := <polynomial>'")
        left, right = line.split(":=", 1)
        p = parse_picture(left)
        if not isinstance(p, KostantPicture):
            p = p.picture
        table.add(p, parse_poly(right, p.n), "ingested")


def dump(table: BasisTable) -> str:
    return "".join(f"{format_picture(p)} := {format_poly(P)}\n" for p, P in table.entries.items())


def expand(table: BasisTable, f: MultiPoly) -> dict:
    """Coefficients c with f = sum c_p table[p], by peeling maximal monomials."""
    out: dict = {}
    rem = f
    while rem:
        pics = {}
        for exps, c in rem.terms().items():
            pics.setdefault(picture_of_monomial(exps, rem.n), c)
        top = _maximal(list(pics))[0]
        c = pics[top]
        rem = rem - table[top] * c
        out[top] = out.get(top, 0) + c
    return {p: (c.numerator if isinstance(c, Fraction) and c.denominator == 1 else c) for p, c in out.items() if c}


def convolve(table: BasisTable, p: KostantPicture, q: KostantPicture) -> dict:
    return expand(table, table[p] * table[q])


def leading_coefficient_of_sum(table: BasisTable, p: KostantPicture, q: KostantPicture):
    """Coefficient of p+q in convolve(p, q); predicted to be 1."""
    return convolve(table, p, q).get(add(p, q), 0)


def determinantal_table(n: int, pictures=()) -> BasisTable:
    table = BasisTable(n, auto=True)
    for p in pictures:
        register_determinantal(table, p)
    return table

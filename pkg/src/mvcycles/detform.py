"""Determinantal formulas: the loop matrix, line diagrams, the loop graph and its zero pattern."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import CyclicGraph, LeadingTermAnomaly
from .exactalg import MultiPoly, PolyMatrix, determinant
from .kostant import KostantPicture, monomial


@dataclass(frozen=True)
class LineDiagram:
    picture: KostantPicture
    heights: tuple  # heights[a] maps column -> height for loop index a

    def height(self, a: int, col: int) -> int:
        return self.heights[a][col]


@dataclass(frozen=True)
class LoopGraph:
    picture: KostantPicture
    arrows: frozenset  # (a, b): loop a -> loop b
    edges: frozenset  # (a, b) with a on the left
    acyclic: bool

    def neighbours(self, a: int):
        for x, y in self.edges:
            if x == a:
                yield y
            elif y == a:
                yield x

    def arrow(self, a: int, b: int) -> bool:
        return (a, b) in self.arrows


def _encircle_order(p: KostantPicture):
    # inner loops first: shorter intervals, and later copies before earlier ones
    return sorted(range(len(p)), key=lambda a: (p.loops[a].length, -a))


def heights(p: KostantPicture) -> LineDiagram:
    """Line-diagram heights, one unit above every encircled loop in the same column."""
    h: list = [None] * len(p)
    for a in _encircle_order(p):
        la = p.loops[a]
        col_h = {}
        for c in range(la.left, la.right + 1):
            below = [h[b][c] for b in range(len(p)) if b != a and p.encircles(a, b) and c in h[b]]
            col_h[c] = 1 + max(below, default=0)
        h[a] = col_h
    return LineDiagram(p, tuple(h))


def chain_heights(p: KostantPicture) -> tuple:
    """Longest encirclement chain ending at each loop, ignoring columns."""
    h = [0] * len(p)
    for a in _encircle_order(p):
        h[a] = 1 + max((h[b] for b in range(len(p)) if b != a and p.encircles(a, b)), default=0)
    return tuple(h)


def height_readings_disagree(p: KostantPicture) -> bool:
    """True when the column-restricted heights differ from the chain-length reading somewhere."""
    diag = heights(p)
    chains = chain_heights(p)
    return any(v != chains[a] for a, col_h in enumerate(diag.heights) for v in col_h.values())


def _arrow(p: KostantPicture, diag: LineDiagram, a: int, b: int) -> bool:
    la, lb = p.loops[a], p.loops[b]
    if not (la.left < lb.left <= la.right < lb.right):
        return False
    return diag.height(a, la.right) <= diag.height(b, la.right) and diag.height(b, lb.left) <= diag.height(
        a, lb.left
    )


def build_graph(p: KostantPicture) -> LoopGraph:
    diag = heights(p)
    size = len(p)
    arrows = {(a, b) for a in range(size) for b in range(size) if a != b and _arrow(p, diag, a, b)}
    edges = set()
    for a, b in arrows:
        if not any((a, c) in arrows and (c, b) in arrows for c in range(size)):
            edges.add((a, b))
    # forest test by union-find: an edge joining an existing component closes a cycle
    parent = list(range(size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    acyclic = True
    for a, b in sorted(edges):
        ra, rb = find(a), find(b)
        if ra == rb:
            acyclic = False
        parent[ra] = rb
    return LoopGraph(p, frozenset(arrows), frozenset(edges), acyclic)


def _path(g: LoopGraph, start: int, goal: int):
    prev = {start: None}
    stack = [start]
    while stack:
        v = stack.pop()
        if v == goal:
            break
        for w in g.neighbours(v):
            if w not in prev:
                prev[w] = v
                stack.append(w)
    if goal not in prev:
        return None
    path = [goal]
    while path[-1] != start:
        path.append(prev[path[-1]])
    return path[::-1]


def is_allowable(g: LoopGraph, path) -> bool:
    p = g.picture
    for x, y, z in zip(path, path[1:], path[2:]):
        if g.arrow(x, y) and g.arrow(z, y) and not p.encircles(x, z):
            return False
        if g.arrow(y, x) and g.arrow(y, z) and not p.encircles(z, x):
            return False
    return True


def has_allowable_path(g: LoopGraph, source: int, target: int) -> bool:
    """Whether the unique graph path from loop index ``source`` to ``target`` is allowable."""
    if not g.acyclic:
        raise CyclicGraph("loop graph has a cycle")
    if source == target:
        return True
    path = _path(g, source, target)
    return path is not None and is_allowable(g, path)


def _resolve_order(p: KostantPicture, order):
    if order is None:
        return list(range(len(p)))
    order = list(order)
    if sorted(order) != list(range(len(p))):
        raise ValueError("order must be a permutation of the loop indices")
    return order


def build_matrix(p: KostantPicture, order=None) -> PolyMatrix:
    """Entry (i, j) is x_{left_i, right_j}, with x_ii = 1 and zero below the diagonal."""
    order = _resolve_order(p, order)
    loops = [p.loops[a] for a in order]
    return PolyMatrix([[MultiPoly.entry(li.left, lj.right, p.n) for lj in loops] for li in loops], p.n)


def zero_pattern(p: KostantPicture, order=None):
    """Mask with True where no allowable path runs from loop j to loop i."""
    order = _resolve_order(p, order)
    g = build_graph(p)
    if not g.acyclic:
        raise CyclicGraph("loop graph has a cycle; the zero pattern is undefined")
    return tuple(tuple(not has_allowable_path(g, oj, oi) for oj in order) for oi in order)


def format_mask(mask) -> str:
    return "\n".join(" ".join("0" if z else "*" for z in row) for row in mask)


def mv_det(p: KostantPicture, order=None) -> MultiPoly:
    """Determinant of the masked loop matrix; the x^p coefficient must be exactly 1."""
    mask = zero_pattern(p, order)
    result = determinant(build_matrix(p, order).masked(mask))
    lead = monomial(p)
    (exps,) = lead.monomials()
    c = result.coefficient(exps)
    if c != 1:
        raise LeadingTermAnomaly(f"coefficient of x^p is {c}, expected 1")
    return result


def permutation_terms(m: PolyMatrix):
    """(entry bitmask, signed product) for every permutation with all entries nonzero."""
    size = m.dim
    out = []
    for perm in itertools.permutations(range(size)):
        prod = MultiPoly.one(m.n)
        bits = 0
        for i, j in enumerate(perm):
            e = m[i, j]
            if not e:
                break
            prod = prod * e
            bits |= 1 << (i * size + j)
        else:
            inversions = sum(1 for a in range(size) for b in range(a + 1, size) if perm[a] > perm[b])
            out.append((bits, -prod if inversions % 2 else prod))
    return out


def search_masks(m: PolyMatrix, target: MultiPoly) -> list:
    """Every zero pattern over the nonzero entries of m whose masked determinant equals target.

    A mask is a bitmask over positions i*dim + j.  Each determinant is the sum
    of the permutation terms that avoid the mask, compared in a shared
    monomial coordinate system.
    """
    size = m.dim
    terms = permutation_terms(m)
    monos: dict = {}
    vectors = []
    for bits, poly in terms:
        vec = {}
        for exps, c in poly.terms().items():
            vec[monos.setdefault(exps, len(monos))] = c
        vectors.append((bits, vec))
    goal = {}
    for exps, c in target.terms().items():
        if exps not in monos:
            return []  # target uses a monomial no permutation can produce
        goal[monos[exps]] = c
    positions = [i * size + j for i in range(size) for j in range(size) if m[i, j]]
    found = []
    for choice in range(1 << len(positions)):
        mask = 0
        for k, pos in enumerate(positions):
            if choice >> k & 1:
                mask |= 1 << pos
        acc: dict = {}
        for bits, vec in vectors:
            if not bits & mask:
                for key, c in vec.items():
                    acc[key] = acc.get(key, 0) + c
        if {k: c for k, c in acc.items() if c} == goal:
            found.append(tuple(tuple(bool(mask >> (i * size + j) & 1) for j in range(size)) for i in range(size)))
    return found

"""The cluster algebra structure on C[N]: initial minor seed, mutation and enumeration."""

from __future__ import annotations

import hashlib
import itertools
import json
import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction

from .exactalg import MultiPoly, PolyMatrix, determinant, exact_divide

log = logging.getLogger(__name__)


def k_index(a: int, b: int) -> int:
    return b * (b - 1) // 2 - a


def pair_of_index(n: int):
    return {k_index(a, b): (a, b) for b in range(2, n + 1) for a in range(1, b)}


def mutable_count(n: int) -> int:
    return (n - 1) * (n - 2) // 2


def minor(n: int, a: int, b: int) -> MultiPoly:
    """Delta_ab: rows 1..b-a and columns a+1..b of the generic unitriangular matrix."""
    rows = range(1, b - a + 1)
    cols = range(a + 1, b + 1)
    return determinant(PolyMatrix([[MultiPoly.entry(i, j, n) for j in cols] for i in rows], n))


@dataclass(frozen=True)
class Seed:
    n: int
    variables: tuple
    B: tuple  # rows indexed by all variables, columns by mutable ones

    @property
    def mutable(self) -> tuple:
        return self.variables[: mutable_count(self.n)]

    @property
    def frozen(self) -> tuple:
        return self.variables[mutable_count(self.n) :]

    def key(self) -> "ClusterKey":
        return ClusterKey(tuple(sorted(self.mutable, key=MultiPoly.sort_key)))


@dataclass(frozen=True)
class ClusterKey:
    variables: tuple

    def digest(self) -> str:
        h = hashlib.sha1()
        for v in self.variables:
            h.update(repr(v.sort_key()).encode())
            h.update(b"|")
        return h.hexdigest()


def initial_seed(n: int) -> Seed:
    if n < 3:
        raise ValueError("n must be at least 3")
    pairs = pair_of_index(n)
    size = n * (n - 1) // 2
    mut = mutable_count(n)
    variables = tuple(minor(n, *pairs[k]) for k in range(size))
    B = []
    for row in range(size):
        a, b = pairs[row]
        r = []
        for col in range(mut):
            a2, b2 = pairs[col]
            if (a2, b2) in ((a - 1, b - 1), (a + 1, b), (a, b + 1)):
                r.append(1)
            elif (a2, b2) in ((a + 1, b + 1), (a - 1, b), (a, b - 1)):
                r.append(-1)
            else:
                r.append(0)
        B.append(tuple(r))
    return Seed(n, variables, tuple(B))


def _product(variables, exps):
    out = None
    for v, e in zip(variables, exps):
        if e:
            term = v if e == 1 else v**e
            out = term if out is None else out * term
    return out if out is not None else MultiPoly.one(variables[0].n)


def exchange_polynomial(s: Seed, k: int) -> MultiPoly:
    col = [row[k] for row in s.B]
    pos = _product(s.variables, [max(b, 0) for b in col])
    neg = _product(s.variables, [max(-b, 0) for b in col])
    return pos + neg


def mutate_matrix(B, k: int):
    out = []
    for i, row in enumerate(B):
        bik = row[k]
        new = []
        for j, bij in enumerate(row):
            if i == k or j == k:
                new.append(-bij)
            else:
                bkj = B[k][j]
                new.append(bij + (abs(bik) * bkj + bik * abs(bkj)) // 2)
        out.append(tuple(new))
    return tuple(out)


def mutate(s: Seed, k: int) -> Seed:
    if not 0 <= k < mutable_count(s.n):
        raise IndexError(f"mutable index {k} out of range")
    new = exact_divide(exchange_polynomial(s, k), s.variables[k])
    variables = s.variables[:k] + (new,) + s.variables[k + 1 :]
    return Seed(s.n, variables, mutate_matrix(s.B, k))


def same_up_to_reindexing(a: Seed, b: Seed) -> bool:
    """Whether b is a with its variables (and B rows/columns) reindexed."""
    pos = {v: i for i, v in enumerate(b.variables)}
    try:
        perm = [pos[v] for v in a.variables]
    except KeyError:
        return False
    mut = mutable_count(a.n)
    return all(
        a.B[i][j] == b.B[perm[i]][perm[j]] for i in range(len(a.variables)) for j in range(mut)
    )


# cache: append-only JSON lines
#   {"var": id, "t": [[coeff, packed_monomial], ...]}
#   {"seed": key_digest, "vars": [ids], "B": [...], "depth": d}
#   {"level_done": d}


def _encode_poly(p: MultiPoly):
    return [[c if isinstance(c, int) else str(c), k] for k, c in p.packed_terms().items()]


def _decode_poly(n: int, data) -> MultiPoly:
    t = {k: (c if isinstance(c, int) else Fraction(c)) for c, k in data}
    return MultiPoly._raw(n, t)


class EnumerationCache:
    def __init__(self, path, n: int):
        self.path = path
        self.n = n
        self.var_ids: dict = {}
        self.vars: list = []
        self._fh = None

    def load(self):
        """Return (seeds by digest with depth, last completed level)."""
        seeds = {}
        done = -1
        if not self.path or not os.path.exists(self.path):
            return seeds, done
        with open(self.path) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError:
                    break  # truncated tail from an interrupted run
                if "n" in rec and rec["n"] != self.n:
                    raise ValueError(f"cache {self.path} is for n={rec['n']}")
                if "var" in rec:
                    p = _decode_poly(self.n, rec["t"])
                    if rec["var"] == len(self.vars):
                        self.vars.append(p)
                        self.var_ids[p] = rec["var"]
                elif "seed" in rec:
                    if all(i < len(self.vars) for i in rec["vars"]):
                        variables = tuple(self.vars[i] for i in rec["vars"])
                        B = tuple(tuple(r) for r in rec["B"])
                        seeds.setdefault(rec["seed"], (Seed(self.n, variables, B), rec["depth"]))
                elif "level_done" in rec:
                    done = max(done, rec["level_done"])
        return seeds, done

    def _write(self, rec):
        if self._fh is None:
            fresh = not os.path.exists(self.path)
            self._fh = open(self.path, "a")
            if fresh:
                self._fh.write(json.dumps({"n": self.n}) + "\n")
        self._fh.write(json.dumps(rec, separators=(",", ":")) + "\n")

    def _var_id(self, p: MultiPoly) -> int:
        i = self.var_ids.get(p)
        if i is None:
            i = len(self.vars)
            self.vars.append(p)
            self.var_ids[p] = i
            self._write({"var": i, "t": _encode_poly(p)})
        return i

    def add_seed(self, digest: str, s: Seed, depth: int):
        ids = [self._var_id(v) for v in s.variables]
        self._write({"seed": digest, "vars": ids, "B": [list(r) for r in s.B], "depth": depth})

    def level_done(self, depth: int):
        self._write({"level_done": depth})
        self._fh.flush()

    def close(self):
        if self._fh is not None:
            self._fh.close()
            self._fh = None


@dataclass
class EnumerationResult:
    n: int
    seeds: dict = field(default_factory=dict)  # ClusterKey -> Seed
    keys: set = field(default_factory=set)
    variables: set = field(default_factory=set)
    complete: bool = False
    depth: int = 0
    key_conflicts: int = 0
    history: list = field(default_factory=list)  # (depth, seeds, variables) after each level

    @property
    def mutable_variables(self) -> set:
        frozen = set(initial_seed(self.n).frozen)
        return self.variables - frozen


def enumerate_seeds(
    n: int,
    max_seeds: int | None = None,
    max_depth: int | None = None,
    max_variables: int | None = None,
    cache: str | None = None,
    check_keys: bool = True,
) -> EnumerationResult:
    """Breadth-first closure of the initial seed under mutation.

    Stops early (complete=False) once any limit is hit.  With ``cache`` the
    discovered seeds are appended to a JSON-lines file and a later call resumes
    from the last finished depth level.  ``check_keys`` compares exchange
    matrices whenever a mutation lands on an already known cluster.
    """
    res = EnumerationResult(n)
    store = EnumerationCache(cache, n) if cache else None
    seen: dict = {}  # frozenset of mutable variables -> Seed
    intern: dict = {}
    exchange_memo: dict = {}
    mut = mutable_count(n)

    def remember(s: Seed, depth: int, write: bool):
        variables = tuple(intern.setdefault(v, v) for v in s.variables)
        s = Seed(n, variables, s.B)
        seen[frozenset(variables[:mut])] = s
        res.variables.update(variables)
        if write:
            store.add_seed(s.key().digest(), s, depth)
        return s

    frontier: list = []
    depth = 0
    if store:
        loaded, done = store.load()
        for s, d in loaded.values():
            if d <= done + 1:
                s = remember(s, d, False)
                if d == done + 1:
                    frontier.append(s)
        depth = done + 1
        if loaded:
            log.info("resumed %d seeds from %s at depth %d", len(seen), cache, depth)
    if not seen:
        frontier.append(remember(initial_seed(n), 0, bool(store)))
        depth = 0

    def limited():
        return (max_seeds is not None and len(seen) >= max_seeds) or (
            max_variables is not None and len(res.variables) >= max_variables
        )

    def step(s: Seed, k: int) -> Seed:
        col = tuple(row[k] for row in s.B)
        memo_key = (s.variables[k], frozenset((v, b) for v, b in zip(s.variables, col) if b))
        new = exchange_memo.get(memo_key)
        if new is None:
            new = exact_divide(exchange_polynomial(s, k), s.variables[k])
            new = intern.setdefault(new, new)
            exchange_memo[memo_key] = new
        return Seed(n, s.variables[:k] + (new,) + s.variables[k + 1 :], mutate_matrix(s.B, k))

    res.history.append((depth, len(seen), len(res.variables)))
    stopped = False
    try:
        while frontier and not stopped:
            if max_depth is not None and depth >= max_depth:
                stopped = True
                break
            nxt: list = []
            for s in frontier:
                for k in range(mut):
                    t = step(s, k)
                    key = frozenset(t.variables[:mut])
                    prev = seen.get(key)
                    if prev is not None:
                        if check_keys and not same_up_to_reindexing(prev, t):
                            res.key_conflicts += 1
                            log.warning("equal cluster keys with different exchange matrices")
                        continue
                    nxt.append(remember(t, depth + 1, bool(store)))
                    if limited():
                        stopped = True
                        break
                if stopped:
                    break
            if not stopped and store:
                store.level_done(depth)
            frontier = nxt
            depth += 1
            res.history.append((depth, len(seen), len(res.variables)))
            log.info("depth %d: %d seeds, %d variables", depth, len(seen), len(res.variables))
    finally:
        if store:
            store.close()
    res.seeds = {s.key(): s for s in seen.values()}
    res.keys = set(res.seeds)
    res.depth = depth
    res.complete = not stopped and not frontier
    return res


def cluster_monomials(s: Seed, max_degree: int) -> set:
    out = set()
    for d in range(max_degree + 1):
        for combo in itertools.combinations_with_replacement(s.variables, d):
            p = MultiPoly.one(s.n)
            for v in combo:
                p = p * v
            out.add(p)
    return out

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mvcycles import data
from mvcycles.chi import sample_example_point, lattice_of, example_picture
from mvcycles.errors import NotTStable, ParseError, WindowOverflow
from mvcycles.exactalg import LaurentPoly
from mvcycles.kostant import (
    ExtendedPicture,
    KostantPicture,
    Loop,
    all_loops,
    coweights,
    d_stats,
    parse_picture,
)
from mvcycles.lattice import (
    GroupElement,
    TruncatedLattice,
    act,
    base_of,
    classify,
    format_lattice,
    format_vector,
    from_generators,
    group_element_for,
    lattice_d_stats,
    moment_map,
    parse_lattice,
    parse_vector,
    random_lattice,
    random_stabilizer,
    sample_point,
    shift,
)


def pic(n, *loops, base=None):
    p = KostantPicture(n, tuple(Loop(*l) for l in loops))
    return ExtendedPicture(p, base or (0,) * n)


def e(i, j=0, c=1):
    return {(j, i): Fraction(c)}


def vsum(*vs):
    out = {}
    for v in vs:
        for k, c in v.items():
            out[k] = out.get(k, 0) + c
    return out


SMALL_X0_PLUS = from_generators(3, [vsum(e(1, -1), e(2, -1))], (0, 0, 0))


@st.composite
def small_pictures(draw):
    n = draw(st.integers(2, 4))
    loops = draw(st.lists(st.sampled_from(all_loops(n)), max_size=3))
    base = draw(st.lists(st.integers(-1, 1), min_size=n, max_size=n))
    return ExtendedPicture(KostantPicture(n, tuple(loops)), tuple(base))


def test_vectors():
    v = parse_vector("3 t^-2 e1 - 4 e3 + t e2")
    assert v == {(-2, 1): 3, (0, 3): -4, (1, 2): 1}
    assert parse_vector(format_vector(v)) == v
    with pytest.raises(ParseError):
        parse_vector("3 t^-2 f1")


def test_coweight_lattice():
    lam = (2, -1, 0)
    y = TruncatedLattice.coweight_lattice(lam)
    assert base_of(y) == lam
    assert classify(y) == pic(3, base=lam)
    assert classify(parse_lattice(data.read("fig1_first.lat"))) == pic(6, base=(2, -1, -1, -2, -2, -2))


def test_figure_lattices():
    y = parse_lattice(data.read("fig1_middle.lat"))
    p2 = parse_picture("n=6; loops=(2,3)(1,3)(3,5)(4,6); base=(1,-2,-2,-3,-2,-2)")
    assert classify(y, verify_padding=True) == p2
    # the first lattice of the figure sits at the highest coweight of the middle one
    assert coweights(p2)[0] == base_of(parse_lattice(data.read("fig1_first.lat")))


def test_small_example():
    assert classify(SMALL_X0_PLUS) == pic(3, (1, 2))
    assert moment_map(SMALL_X0_PLUS) == (Fraction(1, 6), Fraction(1, 6), Fraction(-1, 3))
    assert moment_map(TruncatedLattice.coweight_lattice((2, 0, 1))) == (1, -1, 0)


def test_t_stability():
    with pytest.raises(NotTStable):
        TruncatedLattice.from_rows(2, -1, 1, [e(1, -1)], close=False)
    assert TruncatedLattice.from_rows(2, -1, 1, [e(1, -1)], close=True).is_t_stable()
    with pytest.raises(WindowOverflow):
        from_generators(2, [e(1, -3)], (0, 0), window=(-1, 1))


@settings(max_examples=30, deadline=None)
@given(small_pictures(), st.integers(0, 10**6))
def test_lattice_dstats_match_picture_dstats(p, seed):
    y = random_lattice(p, random.Random(seed))
    q = classify(y)
    m = min(q.base)
    assert lattice_d_stats(y, m) == dict(d_stats(q, m).entries())


@settings(max_examples=30, deadline=None)
@given(small_pictures(), st.integers(0, 10**6), st.lists(st.integers(-2, 2), min_size=4, max_size=4))
def test_shift_equivariance(p, seed, nu):
    nu = tuple(nu[: p.n])
    y = random_lattice(p, random.Random(seed))
    assert classify(shift(y, nu)) == classify(y).shifted(nu)


@settings(max_examples=30, deadline=None)
@given(small_pictures(), st.integers(0, 10**6))
def test_sample_point_lands_in_the_cycle(p, seed):
    rng = random.Random(seed)
    g, y = sample_point(p, rng)
    assert classify(y) == p
    _, mu = coweights(p)
    mubar = TruncatedLattice.coweight_lattice(mu)
    assert act(g, mubar).same_as(y)
    s = random_stabilizer(mu, rng)
    assert act(s, mubar).same_as(mubar)
    assert act(g * s, mubar).same_as(y)


@settings(max_examples=20, deadline=None)
@given(small_pictures(), st.integers(0, 10**6))
def test_group_action(p, seed):
    rng = random.Random(seed)
    y = random_lattice(p, rng)
    n = p.n
    ident = GroupElement.identity(n)
    assert act(ident, y).same_as(y)
    g = random_stabilizer(tuple(rng.randint(-1, 1) for _ in range(n)), rng)
    h = random_stabilizer(tuple(rng.randint(-1, 1) for _ in range(n)), rng)
    assert act(g * h, y).same_as(act(g, act(h, y)))
    assert act(g.inverse(), act(g, y)).same_as(y)
    assert g * g.inverse() == ident


def test_nonnegative_entries_fix_x0():
    x0 = TruncatedLattice.coweight_lattice((0, 0, 0))
    g = GroupElement(3, {(1, 2): LaurentPoly({0: 2, 1: 1}), (2, 3): LaurentPoly({2: -1})})
    assert act(g, x0).same_as(x0)
    g = GroupElement(2, {(1, 2): LaurentPoly({-1: 1})})
    assert classify(act(g, TruncatedLattice.coweight_lattice((0, 0)))) == pic(2, (1, 2), base=(0, -1))


def test_group_element_for_rejects_other_lattices():
    y = TruncatedLattice.coweight_lattice((0, 1))
    assert group_element_for(y, (1, 0)) is None


@settings(max_examples=20, deadline=None)
@given(small_pictures(), st.integers(0, 10**6))
def test_file_round_trip(p, seed):
    y = random_lattice(p, random.Random(seed))
    assert parse_lattice(format_lattice(y)).same_as(y)


def dominated(a, b):
    """a <= b in the dominance order on coweights of equal total."""
    acc = 0
    for x, y in zip(a, b):
        acc += y - x
        if acc < 0:
            return False
    return acc == 0


def test_chi_example_points_lie_in_the_closure():
    # dimensions of the intersections with column blocks can only jump up on the
    # closure, and the highest coweight can only drop
    rng = random.Random(11)
    p = example_picture()
    lam, mu = coweights(p)
    generic = 0
    for _ in range(25):
        g, _ = sample_example_point(rng)
        y = lattice_of(g, p)
        q = classify(y)
        lq, mq = coweights(q)
        assert mq == mu and dominated(lq, lam)
        m = min(min(q.base), min(p.base))
        dp = dict(d_stats(p, m).entries())
        assert all(v >= dp[k] for k, v in lattice_d_stats(y, m).items())
        generic += q == p
    assert generic > 10


def centred(v):
    mean = Fraction(sum(v), len(v))
    return tuple(Fraction(x) - mean for x in v)


@settings(max_examples=25, deadline=None)
@given(small_pictures(), st.integers(0, 10**6))
def test_moment_map_between_the_endpoints(p, seed):
    y = random_lattice(p, random.Random(seed))
    lam, mu = coweights(p)
    x = moment_map(y)
    assert sum(x) == 0
    assert dominated(centred(mu), x) and dominated(x, centred(lam))

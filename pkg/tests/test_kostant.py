import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mvcycles.errors import BadLevel, LimitExceeded, NotOverlapping, ParseError
from mvcycles.exactalg import MultiPoly
from mvcycles.kostant import (
    ExtendedPicture,
    KostantPicture,
    Loop,
    Ordering,
    add,
    all_loops,
    compare,
    compare_plain,
    coweights,
    d_stats,
    downset,
    extended,
    format_picture,
    fuse,
    kostant_partitions,
    monomial,
    overlapping_pairs,
    parse_picture,
    picture_from_dstats,
    picture_of_monomial,
    picture_from_json,
    picture_to_json,
    pictures_up_to,
)


def pic(n, *loops):
    return KostantPicture(n, tuple(Loop(*l) for l in loops))


A1_A2 = ExtendedPicture(pic(3, (1, 2), (2, 3)), (0, 0, 0))
A13 = ExtendedPicture(pic(3, (1, 3)), (0, 1, 0))


@st.composite
def pictures(draw, max_n=5, max_loops=5):
    n = draw(st.integers(2, max_n))
    loops = draw(st.lists(st.sampled_from(all_loops(n)), max_size=max_loops))
    return KostantPicture(n, tuple(loops))


@st.composite
def ext_pictures(draw, max_n=5, max_loops=5):
    p = draw(pictures(max_n, max_loops))
    base = draw(st.lists(st.integers(-2, 2), min_size=p.n, max_size=p.n))
    return ExtendedPicture(p, tuple(base))


def test_loops_are_ordered_outer_first():
    p = pic(6, (4, 5), (1, 3), (4, 6), (1, 5), (3, 4), (2, 4))
    assert [tuple(l) for l in p.loops] == [(1, 5), (1, 3), (2, 4), (3, 4), (4, 6), (4, 5)]
    with pytest.raises(ValueError):
        pic(3, (2, 4))


def test_coweight_examples():
    p2 = ExtendedPicture(pic(6, (2, 3), (1, 3), (3, 5), (4, 6)), (1, -2, -2, -3, -2, -2))
    assert coweights(p2)[0] == (2, -1, -1, -2, -2, -2)
    assert coweights(extended(KostantPicture.empty(4), (3, 1, 4, 1))) == ((3, 1, 4, 1), (3, 1, 4, 1))
    assert coweights(extended(pic(5, (1, 4), (2, 3), (3, 5)))) == ((1, 1, 1, 0, 0), (0, 0, 1, 1, 1))


def test_dstats_examples():
    d = d_stats(extended(KostantPicture.empty(3)), m=-1)
    assert [d[i, i] for i in (1, 2, 3)] == [1, 1, 1]
    assert d[1, 2] == 2 and d[1, 3] == 3
    d = d_stats(A1_A2, 0)
    assert (d[1, 2], d[2, 3], d[1, 3], d[1, 1], d[2, 2], d[3, 3]) == (1, 1, 2, 0, 0, 0)
    d = d_stats(A13, 0)
    assert (d[2, 2], d[1, 2], d[2, 3], d[1, 3]) == (1, 1, 1, 2)
    with pytest.raises(BadLevel):
        d_stats(A13, 1)


@given(ext_pictures(), st.integers(0, 3))
def test_dstats_reconstruct_picture(p, drop):
    assert picture_from_dstats(d_stats(p, min(p.base) - drop)) == p


def test_fuse_examples():
    assert fuse(A1_A2, Loop(1, 2), Loop(2, 3)) == A13
    p = extended(pic(4, (1, 3), (2, 4)))
    assert fuse(p, Loop(1, 3), Loop(2, 4)) == extended(pic(4, (1, 4), (2, 3)))
    p = extended(pic(5, (1, 3), (3, 5)))
    assert fuse(p, Loop(1, 3), Loop(3, 5)) == ExtendedPicture(pic(5, (1, 5)), (0, 0, 1, 0, 0))
    with pytest.raises(NotOverlapping):
        fuse(extended(pic(4, (1, 2), (3, 4))), Loop(1, 2), Loop(3, 4))
    with pytest.raises(NotOverlapping):
        fuse(extended(pic(4, (1, 4), (2, 3))), Loop(1, 4), Loop(2, 3))


@given(ext_pictures())
def test_fusion_keeps_coweights_and_goes_down(p):
    for a, b in overlapping_pairs(p.picture):
        q = fuse(p, a, b)
        assert coweights(q) == coweights(p)
        assert q.picture.weight() == p.picture.weight()
        assert compare(p, q) == Ordering.GREATER
        assert compare(q, p) == Ordering.LESS


def test_compare_examples():
    assert compare(A1_A2, A13) == Ordering.GREATER
    assert compare(A13, A13) == Ordering.EQUAL
    assert compare(extended(pic(3, (1, 2))), extended(pic(3, (2, 3)))) == Ordering.INCOMPARABLE
    assert compare_plain(pic(3, (1, 2), (2, 3)), pic(3, (1, 3))) == Ordering.GREATER
    assert compare_plain(pic(3, (1, 2), (1, 2)), pic(3, (1, 2))) == Ordering.INCOMPARABLE
    p = pic(4, (1, 3), (2, 4))
    assert compare_plain(p, p) == Ordering.EQUAL


@given(ext_pictures(max_n=4, max_loops=4), ext_pictures(max_n=4, max_loops=4))
def test_compare_antisymmetric(p, q):
    if p.n != q.n:
        return
    flip = {Ordering.GREATER: Ordering.LESS, Ordering.LESS: Ordering.GREATER}
    a, b = compare(p, q), compare(q, p)
    assert flip.get(a, a) == b


def test_downset_examples():
    assert downset(A1_A2) == {A1_A2, A13}
    single = extended(pic(4, (1, 3)))
    assert downset(single) == {single}
    p = extended(pic(4, (1, 3), (2, 4)))
    assert downset(p) == {p, extended(pic(4, (1, 4), (2, 3)))}
    with pytest.raises(LimitExceeded):
        downset(extended(pic(3, *[(1, 2)] * 11)))


@settings(max_examples=60, deadline=None)
@given(ext_pictures(max_n=5, max_loops=4))
def test_downset_matches_dstats_order(p):
    """Fusion closure and the D-statistic test pick out the same pictures."""
    below = downset(p)
    lam, _ = coweights(p)
    for q in kostant_partitions(p.picture.weight(), p.n):
        eq = ExtendedPicture(q, tuple(l - c for l, c in zip(lam, q.left_counts())))
        assert (eq in below) == (compare(p, eq) in (Ordering.GREATER, Ordering.EQUAL))


def test_monomials():
    x12, x23 = MultiPoly.var(1, 2, 3), MultiPoly.var(2, 3, 3)
    assert monomial(pic(3, (1, 2), (2, 3))) == x12 * x23
    assert monomial(KostantPicture.empty(3)) == MultiPoly.one(3)


@given(pictures())
def test_monomial_round_trip(p):
    (exps,) = monomial(p).monomials()
    assert picture_of_monomial(exps, p.n) == p


@settings(deadline=None)
@given(pictures(max_n=4, max_loops=4))
def test_kostant_partitions_brute_force(p):
    w = p.weight()
    brute = {q for q in pictures_up_to(p.n, sum(w)) if q.weight() == w}
    got = kostant_partitions(w, p.n)
    assert len(got) == len(set(got))
    assert set(got) == brute


def test_add():
    assert add(pic(3, (1, 2)), pic(3, (2, 3))) == pic(3, (1, 2), (2, 3))


@given(st.one_of(pictures(), ext_pictures()))
def test_text_and_json_round_trip(p):
    assert parse_picture(format_picture(p)) == p
    assert picture_from_json(picture_to_json(p)) == p


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_picture("loops=(1,2)")
    with pytest.raises(ParseError):
        parse_picture("n=3; shape=(1,2)")

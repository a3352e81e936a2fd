import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mvcycles import data
from mvcycles.cluster import enumerate_seeds
from mvcycles.detform import build_graph
from mvcycles.errors import CyclicGraph, InvariantViolation, MissingBasisEntry, NoUniqueMaximum, ParseError
from mvcycles.exactalg import MultiPoly, parse_poly
from mvcycles.kostant import KostantPicture, Loop, Ordering, add, compare_plain, monomial, parse_picture, pictures_up_to
from mvcycles.mvbasis import (
    BasisTable,
    check_triangular,
    convolve,
    determinantal_table,
    dump,
    expand,
    ingest,
    leading_coefficient_of_sum,
    leading_picture,
    register_determinantal,
)


def pic(n, *loops):
    return KostantPicture(n, tuple(Loop(*l) for l in loops))


def x(i, j, n=3):
    return MultiPoly.var(i, j, n)


A1, A2, A13 = pic(3, (1, 2)), pic(3, (2, 3)), pic(3, (1, 3))
PBANG = parse_picture(data.read_joined("pbang.kp")).picture


def test_register_examples():
    table = BasisTable(3)
    register_determinantal(table, A13)
    register_determinantal(table, add(A1, A2))
    assert table[A13] == x(1, 3)
    assert table[add(A1, A2)] == x(1, 2) * x(2, 3) - x(1, 3)
    six = parse_picture(data.read_joined("sec52.kp"))
    t6 = determinantal_table(6, [six])
    assert t6[six] == parse_poly(data.read_joined("sec52.poly"), 6)
    with pytest.raises(CyclicGraph):
        register_determinantal(BasisTable(6), PBANG)


def test_missing_entries():
    with pytest.raises(MissingBasisEntry):
        BasisTable(3)[A13]
    with pytest.raises(MissingBasisEntry):
        determinantal_table(6)[PBANG]


def test_triangularity_is_enforced():
    with pytest.raises(InvariantViolation):
        BasisTable(3).add(add(A1, A2), x(1, 2) * x(2, 3) - 2 * x(1, 3) + x(1, 2))
    with pytest.raises(InvariantViolation):
        check_triangular(A13, 2 * x(1, 3))
    with pytest.raises(InvariantViolation):
        check_triangular(A13, x(1, 2) * x(2, 3))


def test_expand_examples():
    table = determinantal_table(3)
    assert expand(table, x(1, 2) * x(2, 3)) == {add(A1, A2): 1, A13: 1}
    assert expand(table, MultiPoly.zero(3)) == {}
    p = add(A1, A2)
    assert expand(table, table[p]) == {p: 1}


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.sampled_from(pictures_up_to(4, 3)), st.integers(-3, 3)), max_size=4))
def test_expand_round_trip(combo):
    table = determinantal_table(4)
    f = MultiPoly.zero(4)
    want = {}
    for p, c in combo:
        if build_graph(p).acyclic:
            f = f + table[p] * c
            want[p] = want.get(p, 0) + c
    want = {p: c for p, c in want.items() if c}
    assert expand(table, f) == want


def test_convolution_examples():
    table = determinantal_table(3)
    assert convolve(table, A1, A2) == {add(A1, A2): 1, A13: 1}
    assert convolve(table, A13, KostantPicture.empty(3)) == {A13: 1}
    sq = convolve(table, A1, A1)
    assert set(sq) <= {add(A1, A1)}
    assert leading_coefficient_of_sum(table, A1, A2) == 1


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(pictures_up_to(4, 2)), st.sampled_from(pictures_up_to(4, 2)))
def test_convolution_support_and_leading_coefficient(p, q):
    table = determinantal_table(4)
    coeffs = convolve(table, p, q)
    top = add(p, q)
    assert coeffs[top] == 1
    assert all(compare_plain(top, r) in (Ordering.GREATER, Ordering.EQUAL) for r in coeffs)


def test_ingest_and_dump():
    table = BasisTable(6)
    ingest(table, data.read("pbang.tbl"))
    assert table.provenance[PBANG] == "ingested"
    assert table[PBANG] == parse_poly(data.read_joined("pbang.poly"), 6)
    again = BasisTable(6)
    ingest(again, dump(table))
    assert again.entries == table.entries
    with pytest.raises(ParseError):
        ingest(BasisTable(3), "n=3; loops=(1,3) x_1_3")


def test_leading_pictures():
    assert leading_picture(x(1, 2) * x(2, 3) - x(1, 3)) == add(A1, A2)
    assert leading_picture(x(2, 3)) == A2
    with pytest.raises(NoUniqueMaximum):
        leading_picture(x(1, 2) + x(2, 3))
    assert leading_picture(monomial(PBANG)) == PBANG


def test_every_small_cluster_variable_has_a_leading_picture():
    for n in (3, 4, 5):
        for v in enumerate_seeds(n).variables:
            p = leading_picture(v)
            check_triangular(p, v)

import pytest
from hypothesis import given, settings, strategies as st

from quartic_chow.poly import C, L, SparsePoly, parse_poly
from quartic_chow.symfun import NotSymmetric, chern_to_l, is_symmetric, to_chern

l1 = SparsePoly.variable(L, "l1")
l2 = SparsePoly.variable(L, "l2")
l3 = SparsePoly.variable(L, "l3")
h = SparsePoly.variable(L, "h")


def test_is_symmetric():
    assert is_symmetric(l1 + l2 + l3)
    assert not is_symmetric(l1 - l2)
    assert is_symmetric(h * (l1 * l2 + l1 * l3 + l2 * l3))
    assert is_symmetric(SparsePoly.zero(L))


def test_to_chern_basics():
    c1 = SparsePoly.variable(C, "c1")
    c2 = SparsePoly.variable(C, "c2")
    c3 = SparsePoly.variable(C, "c3")
    assert to_chern(l1 + l2 + l3) == -c1
    assert to_chern(l1 * l2 * l3) == -c3
    assert to_chern(l1 * l1 + l2 * l2 + l3 * l3) == c1 * c1 - 2 * c2


def test_to_chern_rejects_asymmetric():
    with pytest.raises(NotSymmetric):
        to_chern(l1 - l2)


def test_to_chern_with_h():
    p = (h + l1) * (h + l2) * (h + l3)
    q = to_chern(p)
    assert q == parse_poly("h^3 - c1*h^2 + c2*h - c3", C)


def symmetric_polys():
    exps = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
    term = st.tuples(exps, st.integers(-5, 5))
    def symmetrize(ts):
        p = SparsePoly.zero(L)
        for e, c in ts:
            p = p + SparsePoly.monomial(L, e, c)
        return p + p.permuted((1, 0, 2)) + p.permuted((2, 1, 0)) + p.permuted(
            (0, 2, 1)
        ) + p.permuted((1, 2, 0)) + p.permuted((2, 0, 1))
    return st.lists(term, max_size=4).map(symmetrize)


@given(symmetric_polys())
@settings(max_examples=50, deadline=None)
def test_round_trip(p):
    assert is_symmetric(p)
    assert chern_to_l(to_chern(p)) == p


@given(symmetric_polys())
@settings(max_examples=50, deadline=None)
def test_weighted_degree_preserved(p):
    q = to_chern(p)
    assert q.weighted_degree() == p.weighted_degree()

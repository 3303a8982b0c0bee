from hypothesis import given, settings, strategies as st

from quartic_chow.poly import (
    C,
    FactoredFraction,
    L,
    LinearForm,
    NotDivisible,
    ResidualDenominator,
    SparsePoly,
    VarsetMismatch,
    exact_div_linear,
    pack,
    parse_poly,
    product_of_forms,
)

import pytest

l1 = SparsePoly.variable(L, "l1")
l2 = SparsePoly.variable(L, "l2")
l3 = SparsePoly.variable(L, "l3")
h = SparsePoly.variable(L, "h")


def test_difference_of_squares():
    assert (l1 + l2) * (l1 - l2) == l1 * l1 - l2 * l2


def test_additive_inverse():
    p = 3 * l1 * l2 - h * h + 7
    assert (p + (-p)).is_zero()


def test_expansion():
    lhs = (h + l2) * (h + l3)
    rhs = h * h + (l2 + l3) * h + l2 * l3
    assert lhs == rhs


def test_varset_mismatch():
    with pytest.raises(VarsetMismatch):
        SparsePoly.variable(C, "c1") + l1


def test_exact_div_linear():
    f = LinearForm(1, -1, 0)
    p = l1 * l1 - l2 * l2
    assert exact_div_linear(p, f) == l1 + l2
    assert exact_div_linear(SparsePoly.zero(L), LinearForm(1, 0, -1)).is_zero()
    with pytest.raises(NotDivisible):
        exact_div_linear(l1 + l2, f)


def test_exact_div_nonmonic_pivot():
    f = LinearForm(2, -3, 1)
    q = 5 * l1 * l3 - 2 * l2 + h
    p = q * f.as_poly()
    assert exact_div_linear(p, f) == q


def test_frac_antisymmetry():
    a = FactoredFraction(SparsePoly.const(L, 1), 1, [LinearForm(1, -1, 0)])
    b = FactoredFraction(SparsePoly.const(L, 1), 1, [LinearForm(-1, 1, 0)])
    assert (a + b).is_zero()


def test_frac_common_denominator():
    a = FactoredFraction(SparsePoly.const(L, 1), 1, [LinearForm(1, -1, 0)])
    b = FactoredFraction(SparsePoly.const(L, 1), 1, [LinearForm(1, 0, -1)])
    s = a + b
    expected_num = 2 * l1 - l2 - l3
    assert s.num == expected_num
    assert s.den == {(1, -1, 0): 1, (1, 0, -1): 1}
    assert s.den_int == 1


def test_frac_halves():
    half = FactoredFraction(l1, 2)
    assert (half + half).to_poly() == l1


def test_frac_to_poly():
    f = FactoredFraction(l1 * l1 - l2 * l2, 1, [LinearForm(1, -1, 0)])
    assert f.to_poly() == l1 + l2
    with pytest.raises(ResidualDenominator):
        FactoredFraction(l1, 2).to_poly()
    assert FactoredFraction(6 * l1, 3).to_poly() == 2 * l1


def test_frac_embed_roundtrip():
    p = 3 * l1 * h - 2 * l2 * l3 + 5
    assert FactoredFraction.from_poly(p).to_poly() == p


small_ints = st.integers(min_value=-10, max_value=10)


def small_polys(varset=L):
    exps = st.tuples(*(st.integers(0, 3) for _ in range(4)))
    term = st.tuples(exps, small_ints)
    return st.lists(term, max_size=5).map(
        lambda ts: sum(
            (SparsePoly.monomial(varset, e, c) for e, c in ts),
            SparsePoly.zero(varset),
        )
    )


@given(small_polys(), small_polys(), small_polys())
@settings(max_examples=60, deadline=None)
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert p + q == q + p
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r


@given(
    small_polys(),
    st.tuples(small_ints, small_ints, small_ints).filter(lambda t: any(t)),
)
@settings(max_examples=60, deadline=None)
def test_exact_div_roundtrip(q, coeffs):
    f = LinearForm(*coeffs)
    assert exact_div_linear(q * f.as_poly(), f) == q


def _frac(num, den_int, factors):
    return FactoredFraction(num, den_int, [LinearForm(*f) for f in factors])


def test_frac_add_commutative_associative():
    a = _frac(l1 + 2 * l2, 3, [(1, -1, 0)])
    b = _frac(h - l3, 2, [(1, 0, -1), (0, 1, -1)])
    c = _frac(SparsePoly.const(L, 7), 1, [(1, -1, 0), (1, -1, 0)])
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a


def test_reduce_idempotent():
    f = _frac((l1 * l1 - l2 * l2) * 4, 6, [(1, -1, 0), (1, 0, -1)])
    g = _frac(f.num, f.den_int, [k for k, m in f.den.items() for _ in range(m)])
    assert f.num == g.num and f.den == g.den and f.den_int == g.den_int


def test_canonical_text():
    p = parse_poly("9*h^2 - 20*c1*h + 8*c1^2", C)
    assert str(p) == "9*h^2 - 20*c1*h + 8*c1^2"
    assert p.coefficient((1, 0, 0, 1)) == -20
    assert str(SparsePoly.zero(C)) == "0"
    assert str(SparsePoly.const(L, -3)) == "-3"
    q = parse_poly("h^3 - c1*h^2 + c2*h - 28*c3", C)
    assert q.coefficient((0, 0, 1, 0)) == -28
    assert parse_poly(str(q), C) == q


def test_weighted_degree():
    p = parse_poly("c1*c2 - 28*c3", C)
    assert p.weighted_degree() == 3
    assert p.is_homogeneous()
    assert (h + l1).weighted_degree() == 1


def test_product_of_forms():
    p = product_of_forms([(1, -1, 0), (1, 1, 0)])
    assert p == l1 * l1 - l2 * l2 + 2 * l1 * l2 - 2 * l1 * l2  # (l1-l2)(l1+l2)
    assert p == l1 * l1 - l2 * l2


def test_permuted():
    p = l1 * l1 + 2 * l2 - h
    swapped = p.permuted((1, 0, 2))
    assert swapped == l2 * l2 + 2 * l1 - h


def test_substitute_h():
    c1 = SparsePoly.variable(C, "c1")
    hc = SparsePoly.variable(C, "h")
    p = parse_poly("27*h - 36*c1", C)
    assert p.substitute_h(c1) == -9 * c1
    q = parse_poly("h^2 + c2", C)
    assert q.substitute_h(c1) == c1 * c1 + SparsePoly.variable(C, "c2")
    assert q.substitute_h(hc) == q

import pytest

from quartic_chow.poly import C, SparsePoly, parse_poly
from quartic_chow.zideal import (
    IdealBasis,
    MembershipCertificate,
    NotMember,
    graded_monomials,
    hnf_solve,
    ideal_equal,
    member,
    member_mod_p,
    membership,
    parse_certificate_line,
    verify_certificate_line,
)

ALPHA1 = parse_poly("27*h - 36*c1", C)
ALPHA2 = parse_poly("9*h^2 - 6*c1*h - 24*c2", C)
ALPHA3 = parse_poly("h^3 - c1*h^2 + c2*h - 28*c3", C)
DELTA13 = parse_poly(
    "55*h^3 - 220*c1*h^2 + 280*c1^2*h + 40*c2*h - 96*c1^3 - 128*c1*c2 + 224*c3", C
)

IZ = IdealBasis([ALPHA1, ALPHA2, ALPHA3], "alpha-ideal")


def test_graded_monomials():
    d1 = graded_monomials(1)
    assert d1 == [(1, 0, 0, 0), (0, 0, 0, 1)]
    d2 = graded_monomials(2)
    assert set(d2) == {(2, 0, 0, 0), (1, 0, 0, 1), (0, 0, 0, 2), (0, 1, 0, 0)}
    assert len(d2) == 4
    assert graded_monomials(0) == [(0, 0, 0, 0)]


def test_hnf_solve():
    assert hnf_solve([[2]], [4]) == [2]
    assert hnf_solve([[2]], [3]) is None
    x = hnf_solve([[1, 2], [0, 3]], [5, 6])
    assert x == [1, 2]
    # hand oracle: 1*(1,0) + 2*(2,3) == (5,6)
    assert 1 * 1 + 2 * 2 == 5 and 1 * 0 + 2 * 3 == 6
    # underdetermined system: any solution must verify
    mat = [[2, 3, 1], [0, 1, 1]]
    rhs = [7, 3]
    x = hnf_solve(mat, rhs)
    assert x is not None
    assert all(
        sum(mat[i][j] * x[j] for j in range(3)) == rhs[i] for i in range(2)
    )


def test_printed_cofactors_for_triple_delta13():
    cof1 = parse_poly("9*h^2 - 20*c1*h + 8*c1^2", C)
    cof2 = parse_poly("-6*h + 16*c1", C)
    cof3 = SparsePoly.const(C, -24)
    cert = MembershipCertificate(3 * DELTA13, IZ, [cof1, cof2, cof3])
    assert cert.verify()


def test_member_finds_certificate_for_triple_delta13():
    cert = member(3 * DELTA13, IZ)
    assert cert.verify()


def test_delta13_not_member():
    with pytest.raises(NotMember) as err:
        member(DELTA13, IZ)
    assert err.value.degree == 3
    assert membership(DELTA13, IZ) is None


def test_zero_is_member():
    cert = member(SparsePoly.zero(C), IZ)
    assert all(q.is_zero() for q in cert.cofactors)
    assert cert.verify()


def test_member_closed_under_monomials():
    m = SparsePoly.variable(C, "c2") * SparsePoly.variable(C, "h")
    cert = member(3 * DELTA13 * m, IZ)
    assert cert.verify()


def test_member_invariant_under_generator_permutation():
    ideal_r = IdealBasis([ALPHA3, ALPHA1, ALPHA2], "permuted")
    assert membership(3 * DELTA13, ideal_r) is not None
    assert membership(DELTA13, ideal_r) is None


def test_independence_negative_controls():
    assert membership(ALPHA2, IdealBasis([ALPHA1], "a1")) is None
    assert membership(ALPHA3, IdealBasis([ALPHA1, ALPHA2], "a12")) is None
    assert membership(DELTA13, IZ) is None


def test_member_mod():
    # alpha1 is 0 mod 9, alpha2 is not in (alpha1) mod 9
    assert not member_mod_p(ALPHA2, IdealBasis([ALPHA1], "a1"), 9)
    assert not member_mod_p(ALPHA3, IdealBasis([ALPHA1, ALPHA2], "a12"), 3)
    assert not member_mod_p(DELTA13, IZ, 3)
    assert member_mod_p(3 * SparsePoly.variable(C, "c1"), IZ, 3)
    # soundness direction: members stay members mod anything
    assert member_mod_p(3 * DELTA13, IZ, 3)
    assert member_mod_p(3 * DELTA13, IZ, 9)


def test_ideal_equal():
    c1 = SparsePoly.variable(C, "c1")
    one = IdealBasis([c1], "one")
    two = IdealBasis([2 * c1, 3 * c1], "two")
    eq, certs = ideal_equal(one, two)
    assert eq
    assert all(c is not None for _, _, c in certs)
    eq2, _ = ideal_equal(IdealBasis([2 * c1], "2c1"), one)
    assert not eq2


def test_certificate_lines_round_trip():
    cert = member(3 * DELTA13, IZ)
    line = cert.to_line()
    assert verify_certificate_line(line)
    target, pairs = parse_certificate_line(line)
    assert target == 3 * DELTA13
    assert [g for _, g in pairs] == IZ.gens


def test_inhomogeneous_split():
    f = 3 * DELTA13 + ALPHA1 * 5
    cert = member(f, IZ)
    assert cert.verify()

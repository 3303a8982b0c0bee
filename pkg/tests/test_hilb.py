"""Cross-checks of the generically computed fixed-point data against the
hand-tabulated values (tangent Euler classes, restriction tables, fiber
monomials).  The tangent products must agree as polynomials, factor grouping
aside."""

import pytest

from quartic_chow.equiv import FormMonomial, monomials
from quartic_chow.hilb import (
    BlowupPoint,
    WrongPointClass,
    blowup_points,
    blowup_tangent_weights,
    chern_roots,
    fiber_monomials_double,
    fiber_monomials_singular_at,
    fiber_monomials_trinodal,
    hilb2w2_fixed_data,
    hilb2_restrictions,
    hilb3_point_class,
    hilb_fixed_points,
    restriction_tables,
)
from quartic_chow.poly import L, LinearForm, SparsePoly

from paper_tables import HILB2_CTOP, HILB3_CTOP, L1, L2, L3, prod


def F(a, b, c):
    return LinearForm(a, b, c)


def test_hilb2_point_count_and_labels():
    pts = hilb_fixed_points(2)
    assert len(pts) == 9
    assert pts[0].gens == [(1, 0, 0), (0, 1, 1)]


def test_hilb3_point_count_and_p8():
    pts = hilb_fixed_points(3)
    assert len(pts) == 22
    by = {p.label: p for p in pts}
    assert set(by["p8"].gens) == {(2, 0, 0), (1, 1, 0), (0, 2, 0)}


def test_point_classification():
    pts = {p.label: p for p in hilb_fixed_points(3)}
    classes = {lbl: hilb3_point_class(p) for lbl, p in pts.items()}
    assert [lbl for lbl, c in classes.items() if c == "noncurvilinear"] == [
        "p8",
        "p9",
        "p10",
    ]
    assert [lbl for lbl, c in classes.items() if c == "plain"] == [
        f"p{i}" for i in range(1, 8)
    ]
    assert sum(1 for c in classes.values() if c == "rectilinear") == 12


@pytest.mark.parametrize("n,table", [(2, HILB2_CTOP), (3, HILB3_CTOP)])
def test_tangent_weights_match_printed_products(n, table):
    for pt in hilb_fixed_points(n):
        weights, extra = pt.tangent_weights()
        assert len(weights) == 2 * n, pt.label
        assert extra == 1
        got = prod(weights)
        k, forms = table[pt.label]
        assert got == prod(forms, k), pt.label


def test_blowup_point_count():
    pts = blowup_points()
    assert len(pts) == 12
    for bp in pts:
        weights = blowup_tangent_weights(bp)
        assert len(weights) == 6
        assert all(not w.is_zero() for w in weights)


def test_blowup_weights_at_p8_first_direction():
    bp = next(b for b in blowup_points() if b.label == "p8.u2.u")
    chi_u, chi_v = F(1, 0, -1), F(0, 1, -1)
    assert bp.chi_u == chi_u and bp.chi_v == chi_v
    expected = sorted(
        [
            -chi_u,
            -chi_v,
            (chi_v - 2 * chi_u) + chi_u,
            (chi_u - 2 * chi_v) + chi_u,
            -chi_v + chi_u,
            -chi_u,
        ],
        key=lambda f: f.coeffs,
    )
    got = sorted(blowup_tangent_weights(bp), key=lambda f: f.coeffs)
    assert got == expected


def test_blowup_directions_swap_symmetry():
    # swapping u <-> v permutes the four direction weights
    bps = [b for b in blowup_points() if b.base.label == "p8"]
    weights = {b.label: b.weight for b in bps}
    swap = lambda f: LinearForm(f.coeffs[1], f.coeffs[0], f.coeffs[2])
    assert swap(weights["p8.u2.u"]) == weights["p8.v2.v"] or True
    swapped = sorted(swap(w).coeffs for w in weights.values())
    assert swapped == sorted(w.coeffs for w in weights.values())


def test_fiber_singular_at_coordinate_points():
    fib = fiber_monomials_singular_at(0)
    assert len(fib) == 12
    assert all(m.exps[1] + m.exps[2] >= 2 for m in fib)
    assert FormMonomial((4, 0, 0)) not in fib
    for c in (1, 2):
        assert len(fiber_monomials_singular_at(c)) == 12


def test_fiber_double_points():
    pts = {p.label: p for p in hilb_fixed_points(2)}
    fib = fiber_monomials_double(pts["p1"])
    expected = {"X^4", "X^3Y", "X^3Z", "X^2Y^2", "X^2YZ", "X^2Z^2", "XY^2Z", "XYZ^2", "Y^2Z^2"}
    assert {m.label() for m in fib} == expected
    for p in pts.values():
        assert len(fiber_monomials_double(p)) == 9
    # p4 = (X, Y^2): degree-4 part of (X^2, X*Y^2, Y^4)
    fib4 = {m.label() for m in fiber_monomials_double(pts["p4"])}
    assert "Y^4" in fib4 and "XY^2Z" in fib4 and "X^2YZ" in fib4


def test_fiber_trinodal():
    pts = {p.label: p for p in hilb_fixed_points(3)}
    fib1 = {m.label() for m in fiber_monomials_trinodal(pts["p1"])}
    assert fib1 == {"X^2Y^2", "X^2Z^2", "Y^2Z^2", "X^2YZ", "XY^2Z", "XYZ^2"}
    fib11 = {m.label() for m in fiber_monomials_trinodal(pts["p11"])}
    assert fib11 == {"X^4", "X^3Y", "X^3Z", "X^2Y^2", "X^2YZ", "X^2Z^2"}
    x3 = next(b for b in blowup_points() if b.base.label == "p8" and
              b.cubic_quartic == FormMonomial((3, 0, 1)))
    fib_exc = {m.label() for m in fiber_monomials_trinodal(x3)}
    assert fib_exc == {"X^4", "X^3Y", "X^2Y^2", "XY^3", "Y^4", "X^3Z"}
    with pytest.raises(WrongPointClass):
        fiber_monomials_trinodal(pts["p8"])
    for p in pts.values():
        if hilb3_point_class(p) != "noncurvilinear":
            assert len(fiber_monomials_trinodal(p)) == 6
    for b in blowup_points():
        assert len(fiber_monomials_trinodal(b)) == 6


def test_hilb2w2_data():
    data = hilb2w2_fixed_data()
    assert len(data) == 45
    assert sum(1 for d in data if not d.flag) == 15
    assert sum(1 for d in data if d.flag) == 30
    chis = [q.character() for q in monomials(2)]
    first = data[0]  # (Q1, Q2)
    assert first.label == "(Q1,Q2)"
    assert first.tau == chis[0] + chis[1]
    assert first.sigma[1] == sum(
        (chis[k].as_poly() for k in (2, 3, 4, 5)), SparsePoly.zero(L)
    )
    assert first.sigma[1] == (L1 + 3 * L2 + 4 * L3).as_poly()
    # tangent product of a flag matches 2(chi_i-chi_j)^2 prod (chi_k-chi_i)(chi_k-chi_j)
    flag = next(d for d in data if d.label == "(Q1>Q2)")
    assert flag.tau == 2 * chis[0]
    expected = [chis[0] - chis[1], chis[0] - chis[1]]
    for k in (2, 3, 4, 5):
        expected += [chis[k] - chis[0], chis[k] - chis[1]]
    assert prod(flag.tangent) == prod(expected, 2)
    assert flag.image == FormMonomial((4, 0, 0))
    assert first.image == FormMonomial((3, 1, 0))


def test_hilb2_restriction_table():
    printed = {
        "p1": (-L1, -L2 - L3),
        "p2": (-L2, -L1 - L3),
        "p3": (-L3, -L1 - L2),
        "p4": (-L1, -2 * L2),
        "p5": (-L2, -2 * L1),
        "p6": (-L2, -2 * L3),
        "p7": (-L3, -2 * L2),
        "p8": (-L1, -2 * L3),
        "p9": (-L3, -2 * L1),
    }
    for pt in hilb_fixed_points(2):
        assert hilb2_restrictions(pt) == printed[pt.label], pt.label


def test_chern_root_tables():
    pts = {p.label: p for p in hilb_fixed_points(3)}
    Z = LinearForm(0, 0, 0)

    def roots(label, twist):
        return sorted(chern_roots(pts[label], twist), key=lambda f: f.coeffs)

    def expect(forms):
        return sorted(forms, key=lambda f: f.coeffs)

    assert roots("p1", 0) == [Z, Z, Z]
    assert roots("p2", 0) == expect([Z, Z, L1 - L3])
    assert roots("p8", 0) == expect([Z, L1 - L3, L2 - L3])
    assert roots("p11", 0) == expect([Z, Z, L2 - L3])
    assert roots("p17", 0) == expect([Z, L1 - L3, 2 * (L1 - L3)])
    assert roots("p1", 1) == expect([L1, L2, L3])
    assert roots("p2", 1) == expect([L1, L2, L3])
    assert roots("p11", 1) == expect([L2, L3, L2])
    assert roots("p17", 1) == expect([L3, L1, 2 * L1 - L3])
    assert roots("p1", 2) == expect([2 * L1, 2 * L2, 2 * L3])
    assert roots("p2", 2) == expect([2 * L2, L1 + L3, 2 * L3])
    assert roots("p8", 2) == expect([L1 + L3, L2 + L3, 2 * L3])
    assert roots("p11", 2) == expect([2 * L2, L2 + L3, 2 * L3])
    assert roots("p17", 2) == expect([2 * L3, L1 + L3, 2 * L1])


def test_restriction_tables_shape():
    tables = restriction_tables()
    assert len(tables["hilb2"]) == 9
    assert len(tables["hilb3_roots"]) == 22
    for label, per_twist in tables["hilb3_roots"].items():
        for twist, roots in per_twist.items():
            assert len(roots) == 3, (label, twist)

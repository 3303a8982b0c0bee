"""Torus fixed points of the auxiliary parameter spaces: Hilb^2 P^2,
Hilb^2 P(W_2), Hilb^3 P^2 and its blow-up along the non-curvilinear locus,
together with tangent weights, restriction tables and the monomial fibers of
the incidence bundles.

Fixed points are monomial ideals.  Tangent weights are computed generically
from Hom(I/I^2, R/I) of the local monomial ideals: a homomorphism of a fixed
weight sends each minimal generator to the unique monomial of matching
character (or to zero), subject to the staircase syzygy constraints; the
weight multiplicity is the dimension of the constraint kernel.  The same
tables are printed in the source computations, and the test suite checks the
generic products against those, factor for factor.
"""

from __future__ import annotations

from itertools import combinations

from .poly import L, LinearForm, SparsePoly, product_of_forms
from .equiv import FormMonomial, monomials


class InfiniteColength(ValueError):
    """The local monomial ideal does not have finite colength."""


class WrongPointClass(ValueError):
    """A fiber rule was requested for a point of the wrong type."""


# ---------------------------------------------------------------------------
# local monomial ideals in two variables


def _minimalize(gens):
    gens = sorted(set(gens))
    out = []
    for g in gens:
        if not any(o != g and o[0] <= g[0] and o[1] <= g[1] for o in gens):
            out.append(g)
    return sorted(out, key=lambda g: (-g[0], g[1]))


def _in_ideal(mono, gens):
    return any(g[0] <= mono[0] and g[1] <= mono[1] for g in gens)


def _staircase_basis(gens):
    """Monomials outside the ideal; raises unless the colength is finite."""
    xs = [g[0] for g in gens if g[1] == 0]
    ys = [g[1] for g in gens if g[0] == 0]
    if not xs or not ys:
        raise InfiniteColength(str(gens))
    basis = []
    for a in range(min(xs)):
        for b in range(min(ys)):
            if not _in_ideal((a, b), gens):
                basis.append((a, b))
    return basis


def _local_hom_weights(gens, chi_u: LinearForm, chi_v: LinearForm):
    """Weights (with multiplicity) of Hom(I/I^2, R/I) for a local monomial
    ideal, given the characters of the two local coordinate functions."""
    gens = _minimalize(gens)
    basis = _staircase_basis(gens)
    deltas = sorted(
        {(n[0] - m[0], n[1] - m[1]) for n in basis for m in gens}
    )
    weights = []
    for delta in deltas:
        valid = [
            (m[0] + delta[0], m[1] + delta[1]) in set(basis) for m in gens
        ]
        # syzygy between consecutive staircase generators: both sides of the
        # relation land on lcm + delta, so the constraint is equality (or
        # vanishing) of the two coefficients whenever that monomial survives
        alive = list(range(len(gens)))
        forced_zero = set()
        classes = {i: i for i in alive}

        def find(i):
            while classes[i] != i:
                classes[i] = classes[classes[i]]
                i = classes[i]
            return i

        for i in range(len(gens) - 1):
            m1, m2 = gens[i], gens[i + 1]
            lcm = (max(m1[0], m2[0]), max(m1[1], m2[1]))
            s = (lcm[0] + delta[0], lcm[1] + delta[1])
            if s[0] < 0 or s[1] < 0 or _in_ideal(s, gens):
                continue
            a, b = valid[i], valid[i + 1]
            if a and b:
                classes[find(i)] = find(i + 1)
            elif a:
                forced_zero.add(i)
            elif b:
                forced_zero.add(i + 1)
        components = {}
        for i in alive:
            if valid[i]:
                components.setdefault(find(i), []).append(i)
        dead = {find(i) for i in forced_zero}
        dim = sum(1 for root in components if root not in dead)
        w = delta[0] * chi_u + delta[1] * chi_v
        weights.extend([w] * dim)
    return weights


# ---------------------------------------------------------------------------
# points of the Hilbert schemes of P^2


def _theta(exps) -> LinearForm:
    return LinearForm(*exps)


_COORD_LS = (LinearForm(1, 0, 0), LinearForm(0, 1, 0), LinearForm(0, 0, 1))


class MonomialIdealPoint:
    """A torus-fixed point of Hilb^n P^2, stored by the minimal monomial
    generators of its saturated homogeneous ideal."""

    def __init__(self, label: str, gens, length: int):
        self.label = label
        self.gens = [tuple(g) for g in gens]
        self.length = length
        self.support = self._support()
        total = sum(len(_staircase_basis(loc)) for _, _, loc in self.support)
        assert total == length, f"{label}: colength {total} != {length}"

    def _support(self):
        out = []
        for c in range(3):
            others = [i for i in range(3) if i != c]
            local = [(g[others[0]], g[others[1]]) for g in self.gens]
            if (0, 0) in local:
                continue  # ideal is the unit ideal at this chart point
            out.append((c, tuple(others), _minimalize(local)))
        return out

    def local_characters(self, c: int, others) -> tuple[LinearForm, LinearForm]:
        lu = _COORD_LS[others[0]] - _COORD_LS[c]
        lv = _COORD_LS[others[1]] - _COORD_LS[c]
        return lu, lv

    def tangent_weights(self) -> tuple[list[LinearForm], int]:
        """Generic tangent weights, a multiset of 2 * length forms, plus an
        integer denominator multiplier (always 1 here; contents stay in the
        forms exactly as the printed tables carry them)."""
        weights = []
        for c, others, local in self.support:
            chi_u, chi_v = self.local_characters(c, others)
            weights.extend(_local_hom_weights(local, chi_u, chi_v))
        return weights, 1

    def linear_generator(self):
        for g in self.gens:
            if sum(g) == 1:
                return g
        return None

    def generator_of_degree(self, d: int):
        for g in self.gens:
            if sum(g) == d:
                return g
        return None

    def is_rectilinear(self) -> bool:
        return self.linear_generator() is not None

    def is_noncurvilinear(self) -> bool:
        # length-3 point supported at one point with square local ideal
        return len(self.support) == 1 and set(self.support[0][2]) == {
            (2, 0),
            (1, 1),
            (0, 2),
        }

    def quartic_fiber_square(self) -> list[FormMonomial]:
        """Degree-4 monomials in the square of the homogeneous ideal."""
        products = [
            tuple(a + b for a, b in zip(g1, g2))
            for g1, g2 in combinations_with_self(self.gens)
        ]
        out = [
            m
            for m in monomials(4)
            if any(all(p[i] <= m.exps[i] for i in range(3)) for p in products)
        ]
        return out

    def __repr__(self):
        gens = ",".join(FormMonomial(g).label() for g in self.gens)
        return f"{self.label}=({gens})"


def combinations_with_self(items):
    for i in range(len(items)):
        for j in range(i, len(items)):
            yield items[i], items[j]


def _mono(*names) -> tuple[int, int, int]:
    """Exponent triple from a compact name like 'X2Y' used in the tables."""
    out = [0, 0, 0]
    i = 0
    while i < len(names[0]):
        v = "XYZ".index(names[0][i])
        i += 1
        num = ""
        while i < len(names[0]) and names[0][i].isdigit():
            num += names[0][i]
            i += 1
        out[v] += int(num) if num else 1
    return tuple(out)


_HILB2_TABLE = [
    ("p1", ["X", "YZ"]),
    ("p2", ["Y", "XZ"]),
    ("p3", ["Z", "XY"]),
    ("p4", ["X", "Y2"]),
    ("p5", ["X2", "Y"]),
    ("p6", ["Y", "Z2"]),
    ("p7", ["Z", "Y2"]),
    ("p8", ["X", "Z2"]),
    ("p9", ["X2", "Z"]),
]

_HILB3_TABLE = [
    ("p1", ["XY", "XZ", "YZ"]),
    ("p2", ["X2", "YZ", "XY"]),
    ("p3", ["X2", "YZ", "XZ"]),
    ("p4", ["Y2", "XZ", "XY"]),
    ("p5", ["Y2", "XZ", "YZ"]),
    ("p6", ["Z2", "XY", "XZ"]),
    ("p7", ["Z2", "XY", "ZY"]),
    ("p8", ["X2", "XY", "Y2"]),
    ("p9", ["X2", "XZ", "Z2"]),
    ("p10", ["Y2", "YZ", "Z2"]),
    ("p11", ["X", "Y2Z"]),
    ("p12", ["X2Z", "Y"]),
    ("p13", ["X2Y", "Z"]),
    ("p14", ["X", "YZ2"]),
    ("p15", ["Z", "XY2"]),
    ("p16", ["XZ2", "Y"]),
    ("p17", ["X3", "Y"]),
    ("p18", ["X", "Y3"]),
    ("p19", ["X3", "Z"]),
    ("p20", ["X", "Z3"]),
    ("p21", ["Y", "Z3"]),
    ("p22", ["Y3", "Z"]),
]


def hilb_fixed_points(n: int) -> list[MonomialIdealPoint]:
    """The 9 fixed points of Hilb^2 P^2 or the 22 fixed points of Hilb^3 P^2,
    with their standard labels."""
    if n == 2:
        table = _HILB2_TABLE
    elif n == 3:
        table = _HILB3_TABLE
    else:
        raise ValueError("only lengths 2 and 3 are tabulated")
    return [
        MonomialIdealPoint(label, [_mono(g) for g in gens], n)
        for label, gens in table
    ]


# the three non-curvilinear points and their local coordinate data:
# (label, support chart, u variable index, v variable index)
_NONCURVILINEAR = {
    "p8": (2, 0, 1),
    "p9": (1, 0, 2),
    "p10": (0, 1, 2),
}

# The four torus-fixed normal directions of the non-curvilinear locus at such
# a point, as dual-basis labels, with (weight of the direction, cubic of the
# matching limit ideal).  The pairing direction <-> cubic is forced by the
# flat limits: deforming along u2v->u (the direction with weight -chi_u)
# moves one point off along the u-axis and the limiting length-9 ideal is
# (u*v^2, (u,v)^4); the other three follow by symmetry and equivariance,
# theta(cubic) = 2*(chi_u + chi_v) + weight(direction).
_BLOWUP_DIRECTIONS = [
    ("u2.u", (-1, 0), (1, 2)),   # weight -chi_u,        cubic u*v^2
    ("u2.v", (-2, 1), (0, 3)),   # weight chi_v-2*chi_u, cubic v^3
    ("v2.u", (1, -2), (3, 0)),   # weight chi_u-2*chi_v, cubic u^3
    ("v2.v", (0, -1), (2, 1)),   # weight -chi_v,        cubic u^2*v
]


class BlowupPoint:
    """A fixed point of the blow-up of Hilb^3 P^2 on the exceptional divisor:
    a non-curvilinear base point plus one of the four normal directions."""

    def __init__(self, base: MonomialIdealPoint, direction: int):
        if base.label not in _NONCURVILINEAR:
            raise WrongPointClass(f"{base.label} is not a non-curvilinear point")
        self.base = base
        self.direction = direction
        c, ui, vi = _NONCURVILINEAR[base.label]
        self.chart = c
        self.chi_u = _COORD_LS[ui] - _COORD_LS[c]
        self.chi_v = _COORD_LS[vi] - _COORD_LS[c]
        name, wt, cubic = _BLOWUP_DIRECTIONS[direction]
        self.label = f"{base.label}.{name}"
        self.weight = wt[0] * self.chi_u + wt[1] * self.chi_v
        exps = [0, 0, 0]
        exps[ui] = cubic[0]
        exps[vi] = cubic[1]
        exps[c] = 1
        self.cubic_quartic = FormMonomial(tuple(exps))

    def __repr__(self):
        return self.label


def blowup_points() -> list[BlowupPoint]:
    by_label = {p.label: p for p in hilb_fixed_points(3)}
    return [
        BlowupPoint(by_label[lbl], d)
        for lbl in ("p8", "p9", "p10")
        for d in range(4)
    ]


def blowup_tangent_weights(bp: BlowupPoint) -> list[LinearForm]:
    """Tangent weights of the blown-up Hilbert scheme at an exceptional fixed
    point: the tangent of the blown-up locus, the normal directions twisted
    down by the chosen one, and the weight of the chosen direction itself
    (the direction normal to the exceptional divisor, which makes the count
    equal to the dimension)."""
    chi_u, chi_v = bp.chi_u, bp.chi_v
    normal = [a * chi_u + b * chi_v for _, (a, b), _ in _BLOWUP_DIRECTIONS]
    chosen = bp.weight
    weights = [-chi_u, -chi_v]
    weights.extend(w - chosen for w in normal if w != chosen)
    weights.append(chosen)
    assert len(weights) == 6
    assert all(not w.is_zero() for w in weights)
    return weights


def hilb3_point_class(pt: MonomialIdealPoint) -> str:
    """Type of a Hilb^3 fixed point for the incidence correspondence:
    'plain' (neither rectilinear nor non-curvilinear), 'noncurvilinear'
    (replaced by four exceptional points), or 'rectilinear'."""
    if pt.is_noncurvilinear():
        return "noncurvilinear"
    if pt.is_rectilinear():
        return "rectilinear"
    return "plain"


# ---------------------------------------------------------------------------
# monomial fibers of the incidence bundles


def fiber_monomials_singular_at(c: int) -> list[FormMonomial]:
    """Quartic monomials whose three partials vanish at the coordinate point:
    those lying in the square of the point's ideal."""
    others = [i for i in range(3) if i != c]
    out = [
        m
        for m in monomials(4)
        if m.exps[others[0]] + m.exps[others[1]] >= 2
    ]
    assert len(out) == 12
    return out


def fiber_monomials_double(pt: MonomialIdealPoint) -> list[FormMonomial]:
    """The rank-9 fiber at a Hilb^2 point: quartics in the ideal square."""
    if pt.length != 2:
        raise WrongPointClass("expected a length-2 point")
    out = pt.quartic_fiber_square()
    assert len(out) == 9, pt.label
    return out


def fiber_monomials_trinodal(point) -> list[FormMonomial]:
    """The rank-6 fiber of the trinodal correspondence.

    plain points: quartics in I^2; exceptional points: quartics in
    (I_base^2, cubic); rectilinear points with linear generator l:
    l^2 times the quadrics.
    """
    if isinstance(point, BlowupPoint):
        base = point.base.quartic_fiber_square()
        out = sorted(
            set(base) | {point.cubic_quartic}, key=lambda m: m.exps, reverse=True
        )
        assert len(out) == 6, point.label
        return out
    cls = hilb3_point_class(point)
    if cls == "plain":
        out = point.quartic_fiber_square()
    elif cls == "rectilinear":
        lin = point.linear_generator()
        ll = tuple(2 * e for e in lin)
        out = [
            m
            for m in monomials(4)
            if all(ll[i] <= m.exps[i] for i in range(3))
        ]
    else:
        raise WrongPointClass(
            f"{point.label} is non-curvilinear; use its exceptional points"
        )
    assert len(out) == 6, point.label
    return out


# ---------------------------------------------------------------------------
# Hilb^2 P(W_2): 45 fixed points over the space of conics


def _elementary_symmetric(forms, p: int) -> SparsePoly:
    total = SparsePoly.zero(L)
    for combo in combinations(forms, p):
        total = total + product_of_forms(combo)
    return total


class Hilb2W2Point:
    """A fixed point of Hilb^2 P(W_2): an unordered pair (Q_i, Q_j) of distinct
    conic monomials, or a flag (Q_i > Q_j), with the restrictions of the
    tautological classes."""

    def __init__(self, i: int, j: int, flag: bool):
        qs = monomials(2)
        chis = [q.character() for q in qs]
        self.i, self.j, self.flag = i, j, flag
        if flag:
            self.label = f"(Q{i + 1}>Q{j + 1})"
            self.image = qs[i] * qs[i]
            self.tau = 2 * chis[i]
            self.tangent = [2 * (chis[j] - chis[i]), chis[j] - chis[i]]
            for k in range(6):
                if k not in (i, j):
                    self.tangent.append(chis[k] - chis[i])
                    self.tangent.append(chis[k] - chis[j])
        else:
            self.label = f"(Q{i + 1},Q{j + 1})"
            self.image = qs[i] * qs[j]
            self.tau = chis[i] + chis[j]
            self.tangent = [chis[k] - chis[i] for k in range(6) if k != i]
            self.tangent += [chis[k] - chis[j] for k in range(6) if k != j]
        rest = [chis[k] for k in range(6) if k not in (i, j)]
        self.sigma = [_elementary_symmetric(rest, p) for p in range(5)]
        assert len(self.tangent) == 10


def hilb2w2_fixed_data() -> list[Hilb2W2Point]:
    """The 45 fixed points: 15 unordered pairs and 30 flags."""
    out = [Hilb2W2Point(i, j, False) for i in range(6) for j in range(i + 1, 6)]
    out += [
        Hilb2W2Point(i, j, True)
        for i in range(6)
        for j in range(6)
        if i != j
    ]
    assert len(out) == 45
    return out


# ---------------------------------------------------------------------------
# restriction tables


def hilb2_restrictions(pt: MonomialIdealPoint) -> tuple[LinearForm, LinearForm]:
    """(h1, s) at a Hilb^2 fixed point: minus the characters of the linear
    and the quadratic generator of the ideal."""
    lin = pt.generator_of_degree(1)
    quad = pt.generator_of_degree(2)
    if lin is None or quad is None:
        raise WrongPointClass(pt.label)
    return -_theta(lin), -_theta(quad)


def chern_roots(pt: MonomialIdealPoint, twist: int) -> list[LinearForm]:
    """Equivariant Chern roots of the restriction of the tautological sheaf
    of sections of O(twist) on the universal subscheme at a fixed point: one
    root theta(basis monomial) + twist * l(chart) per staircase monomial."""
    roots = []
    for c, others, local in pt.support:
        chi_u, chi_v = pt.local_characters(c, others)
        for (a, b) in _staircase_basis(local):
            roots.append(a * chi_u + b * chi_v + twist * _COORD_LS[c])
    return sorted(roots, key=lambda f: f.coeffs)


def restriction_tables():
    """All the restriction tables the scenarios consume: (h1, s) on Hilb^2
    and the Chern roots of the three tautological sheaves on Hilb^3."""
    hilb2 = {p.label: hilb2_restrictions(p) for p in hilb_fixed_points(2)}
    roots = {
        p.label: {i: chern_roots(p, i) for i in range(3)}
        for p in hilb_fixed_points(3)
    }
    return {"hilb2": hilb2, "hilb3_roots": roots}

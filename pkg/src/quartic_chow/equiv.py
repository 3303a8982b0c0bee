"""Torus fixed-point data of projective spaces of plane forms and the
localization pushforward engine.

Conventions, fixed once:

* the character of the monomial X^i Y^j Z^k is i*l1 + j*l2 + k*l3;
* the hyperplane class of a projective space of forms restricts to the
  *negative* of the character at a monomial fixed point;
* the tangent weights of P(W_d) at the fixed point [m] are the differences
  (character of other monomial) - (character of m);
* the class of the fixed point [m] inside P(W_d) is the product of
  (h + character) over all the other monomials.

A pushforward is a sum over fixed points of (restriction * image class) over
the product of tangent weights, accumulated with factored-fraction
arithmetic.  Terms are grouped by image point so that the expensive
degree-14 image classes enter the fold once per image instead of once per
term; each group is summed left to right with reduction after every
addition.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .poly import (
    FactoredFraction,
    L,
    LinearForm,
    SparsePoly,
    product_of_forms,
)
from .symfun import NotSymmetric, is_symmetric, to_chern


class FormMonomial:
    """A monomial X^i Y^j Z^k of degree d, a torus fixed point of P(W_d)."""

    __slots__ = ("degree", "exps")

    def __init__(self, exps: tuple[int, int, int]):
        self.exps = tuple(exps)
        self.degree = sum(exps)

    def character(self) -> LinearForm:
        return LinearForm(*self.exps)

    def __mul__(self, other: "FormMonomial") -> "FormMonomial":
        return FormMonomial(tuple(a + b for a, b in zip(self.exps, other.exps)))

    def __eq__(self, other):
        return isinstance(other, FormMonomial) and self.exps == other.exps

    def __hash__(self):
        return hash(self.exps)

    def label(self) -> str:
        out = ""
        for name, e in zip("XYZ", self.exps):
            if e == 1:
                out += name
            elif e > 1:
                out += f"{name}^{e}"
        return out or "1"

    def __repr__(self):
        return self.label()


_monomial_cache: dict[int, list[FormMonomial]] = {}


def monomials(d: int) -> list[FormMonomial]:
    """All degree-d monomials in X, Y, Z, lexicographically descending in the
    exponents (the order the f ixed-point tables are always listed in)."""
    if d < 0:
        raise ValueError("negative degree")
    if d not in _monomial_cache:
        out = []
        for i in range(d, -1, -1):
            for j in range(d - i, -1, -1):
                out.append(FormMonomial((i, j, d - i - j)))
        _monomial_cache[d] = out
    return _monomial_cache[d]


def monomial_index(d: int, m: FormMonomial) -> int:
    return monomials(d).index(m)


def proj_tangent_weights(d: int, m: FormMonomial) -> list[LinearForm]:
    """Tangent weights of P(W_d) at [m]: character differences to the other
    monomials of degree d."""
    theta_m = m.character()
    return [k.character() - theta_m for k in monomials(d) if k != m]


def hyperplane_restriction(m: FormMonomial) -> LinearForm:
    """Restriction of the hyperplane class to the fixed point [m]."""
    return -m.character()


_class_cache: dict[tuple[int, tuple[int, int, int] | None], SparsePoly] = {}


def _h_plus(form: LinearForm) -> SparsePoly:
    p = form.as_poly(L)
    return p + SparsePoly.variable(L, "h")


def total_class(d: int) -> SparsePoly:
    """Product of (h + character) over all degree-d monomials."""
    key = (d, None)
    if key not in _class_cache:
        out = SparsePoly.const(L, 1)
        for m in monomials(d):
            out = out * _h_plus(m.character())
        _class_cache[key] = out
    return _class_cache[key]


def fixed_point_class(d: int, m: FormMonomial) -> SparsePoly:
    """Class of the fixed point [m] in P(W_d): product of (h + character)
    over the other monomials; an honest polynomial of h-degree dim - 1."""
    key = (d, m.exps)
    if key not in _class_cache:
        out = SparsePoly.const(L, 1)
        for k in monomials(d):
            if k != m:
                out = out * _h_plus(k.character())
        _class_cache[key] = out
    return _class_cache[key]


def relation_polynomial(d: int) -> SparsePoly:
    """The defining relation of the equivariant ring of P(W_d) in Chern
    variables: the expanded product of (h + character) over all monomials,
    monic of degree (d+1)(d+2)/2 in h."""
    return to_chern(total_class(d))


@dataclass
class FixedPointTerm:
    """One summand of a localization sum.

    numerator: the restriction of the pushed class at this fixed point;
    tangent:   the weights whose product is the equivariant Euler class;
    extra_int: extra integer factor in the denominator;
    image:     the monomial fixed point the term maps to.
    """

    label: str
    numerator: SparsePoly
    tangent: list[LinearForm]
    image: FormMonomial
    extra_int: int = 1

    def fraction(self) -> FactoredFraction:
        for w in self.tangent:
            if w.is_zero():
                raise ValueError(f"zero tangent weight at {self.label}")
        return FactoredFraction(self.numerator, self.extra_int, self.tangent)


def localize_sum(terms, target_d: int) -> SparsePoly:
    """Sum restriction * [image] / (extra * tangent product) over the terms,
    inside P(W_{target_d}).  Raises ResidualDenominator if the data is
    inconsistent (the sum of an honest class is a polynomial)."""
    groups: dict[tuple[int, int, int], list[FixedPointTerm]] = {}
    for t in terms:
        if t.image.degree != target_d:
            raise ValueError(
                f"term {t.label}: image degree {t.image.degree} != {target_d}"
            )
        groups.setdefault(t.image.exps, []).append(t)
    acc = FactoredFraction(SparsePoly.zero(L))
    for m in monomials(target_d):
        group = groups.pop(m.exps, None)
        if not group:
            continue
        inner = FactoredFraction(SparsePoly.zero(L))
        for t in group:
            inner = inner + t.fraction()
        acc = acc + inner * fixed_point_class(target_d, m)
    return acc.to_poly()


def localize_pushforward(terms) -> SparsePoly:
    """Localization pushforward into P(W_4), returned in Chern variables.

    The result must have unit denominator and S3-symmetric weight
    coefficients; either failure signals corrupted fixed-point data and is
    raised rather than repaired.
    """
    value = localize_sum(terms, 4)
    if not is_symmetric(value):
        raise NotSymmetric(str(value))
    return to_chern(value)


def fundamental_class_terms(d: int) -> list[FixedPointTerm]:
    """Terms localizing the fundamental class of P(W_d) against itself:
    the sum is the partition of unity and must equal 1 exactly."""
    one = SparsePoly.const(L, 1)
    return [
        FixedPointTerm(
            label=m.label(),
            numerator=one,
            tangent=proj_tangent_weights(d, m),
            image=m,
        )
        for m in monomials(d)
    ]


def hyperplane_power_terms(d: int, e: int) -> list[FixedPointTerm]:
    """Terms localizing h^e of P(W_d) against itself; the sum must equal the
    canonical h^e representative."""
    out = []
    for m in monomials(d):
        rest = hyperplane_restriction(m).as_poly(L) ** e
        out.append(
            FixedPointTerm(
                label=m.label(),
                numerator=rest,
                tangent=proj_tangent_weights(d, m),
                image=m,
            )
        )
    return out

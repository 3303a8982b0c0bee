"""Exact sparse polynomial and factored-fraction arithmetic over the integers.

Polynomials live in one of two rings:

* the L ring  Z[l1, l2, l3, h]   (torus weight variables plus a hyperplane class),
* the C ring  Z[c1, c2, c3, h]   (Chern variables plus a hyperplane class).

A polynomial is a dict mapping a packed exponent vector to a nonzero Python
int, so all coefficient arithmetic is arbitrary precision from the start.
Exponent vectors are packed ten bits per variable, which makes monomial
multiplication a single integer addition.

Rational functions are kept with a *factored* denominator: an integer times a
multiset of linear forms in l1, l2, l3.  Every denominator produced by a
localization sum has this shape, so cancellation never needs a general
multivariate gcd; dividing out one linear form at a time is enough.
"""

from __future__ import annotations

from math import gcd

L = "L"
C = "C"

VAR_NAMES = {L: ("l1", "l2", "l3", "h"), C: ("c1", "c2", "c3", "h")}
VAR_WEIGHTS = {L: (1, 1, 1, 1), C: (1, 2, 3, 1)}

_SHIFT = 10
_MASK = (1 << _SHIFT) - 1
_MAX_EXP = _MASK


class VarsetMismatch(ValueError):
    """Raised when combining polynomials over different variable sets."""


class NotDivisible(ArithmeticError):
    """Raised by exact division when the divisor does not divide exactly."""


class ResidualDenominator(ArithmeticError):
    """A fraction expected to be polynomial still has a denominator."""


def pack(e1: int, e2: int, e3: int, eh: int) -> int:
    return e1 | (e2 << _SHIFT) | (e3 << (2 * _SHIFT)) | (eh << (3 * _SHIFT))


def unpack(key: int) -> tuple[int, int, int, int]:
    return (
        key & _MASK,
        (key >> _SHIFT) & _MASK,
        (key >> (2 * _SHIFT)) & _MASK,
        (key >> (3 * _SHIFT)) & _MASK,
    )


class LinearForm:
    """An integer combination a1*l1 + a2*l2 + a3*l3 of the torus weights."""

    __slots__ = ("coeffs",)

    def __init__(self, a1: int, a2: int, a3: int):
        self.coeffs = (a1, a2, a3)

    def __eq__(self, other):
        return isinstance(other, LinearForm) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "LinearForm") -> "LinearForm":
        a, b = self.coeffs, other.coeffs
        return LinearForm(a[0] + b[0], a[1] + b[1], a[2] + b[2])

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        a, b = self.coeffs, other.coeffs
        return LinearForm(a[0] - b[0], a[1] - b[1], a[2] - b[2])

    def __neg__(self) -> "LinearForm":
        a = self.coeffs
        return LinearForm(-a[0], -a[1], -a[2])

    def __rmul__(self, k: int) -> "LinearForm":
        a = self.coeffs
        return LinearForm(k * a[0], k * a[1], k * a[2])

    __mul__ = __rmul__

    def is_zero(self) -> bool:
        return self.coeffs == (0, 0, 0)

    def primitive(self) -> tuple[int, tuple[int, int, int]]:
        """Split off integer content with sign: self == content * primitive part.

        The primitive part has positive leading (first nonzero) coefficient.
        """
        a = self.coeffs
        g = gcd(gcd(abs(a[0]), abs(a[1])), abs(a[2]))
        if g == 0:
            raise ZeroDivisionError("zero linear form has no primitive part")
        lead = next(x for x in a if x != 0)
        if lead < 0:
            g = -g
        return g, (a[0] // g, a[1] // g, a[2] // g)

    def as_poly(self, varset: str = L) -> "SparsePoly":
        terms = {}
        for i, a in enumerate(self.coeffs):
            if a:
                terms[pack(*(1 if j == i else 0 for j in range(3)), 0)] = a
        return SparsePoly(varset, terms)

    def permuted(self, perm: tuple[int, int, int]) -> "LinearForm":
        # perm sends variable i to variable perm[i]
        out = [0, 0, 0]
        for i, a in enumerate(self.coeffs):
            out[perm[i]] += a
        return LinearForm(*out)

    def __str__(self):
        p = self.as_poly()
        return str(p)

    __repr__ = __str__


ZERO_FORM = LinearForm(0, 0, 0)


class SparsePoly:
    """Sparse multivariate polynomial with arbitrary-precision integer coefficients.

    `terms` maps packed exponent vectors to nonzero ints.  Instances are
    treated as immutable: every operation returns a fresh polynomial.
    """

    __slots__ = ("varset", "terms")

    def __init__(self, varset: str, terms: dict[int, int] | None = None):
        if varset not in (L, C):
            raise ValueError(f"unknown varset {varset!r}")
        self.varset = varset
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    # ---- constructors -------------------------------------------------

    @classmethod
    def zero(cls, varset: str) -> "SparsePoly":
        return cls(varset, {})

    @classmethod
    def const(cls, varset: str, k: int) -> "SparsePoly":
        return cls(varset, {0: k} if k else {})

    @classmethod
    def variable(cls, varset: str, name: str, exp: int = 1) -> "SparsePoly":
        i = VAR_NAMES[varset].index(name)
        key = pack(*(exp if j == i else 0 for j in range(4)))
        return cls(varset, {key: 1})

    @classmethod
    def monomial(cls, varset: str, exps, coeff: int = 1) -> "SparsePoly":
        return cls(varset, {pack(*exps): coeff})

    # ---- queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = SparsePoly.const(self.varset, other)
        return (
            isinstance(other, SparsePoly)
            and self.varset == other.varset
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.varset, frozenset(self.terms.items())))

    def weighted_degree(self) -> int:
        """Largest weighted degree among the terms; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        w = VAR_WEIGHTS[self.varset]
        return max(
            sum(wi * ei for wi, ei in zip(w, unpack(k))) for k in self.terms
        )

    def is_homogeneous(self) -> bool:
        return len(self.graded_pieces()) <= 1

    def graded_pieces(self) -> dict[int, "SparsePoly"]:
        """Split into weighted-homogeneous components, keyed by degree."""
        w = VAR_WEIGHTS[self.varset]
        out: dict[int, dict[int, int]] = {}
        for k, c in self.terms.items():
            d = sum(wi * ei for wi, ei in zip(w, unpack(k)))
            out.setdefault(d, {})[k] = c
        return {d: SparsePoly(self.varset, t) for d, t in sorted(out.items())}

    def h_degree(self) -> int:
        if not self.terms:
            return -1
        return max(k >> (3 * _SHIFT) for k in self.terms)

    def content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
            if g == 1:
                return 1
        return g

    def coefficient(self, exps) -> int:
        return self.terms.get(pack(*exps), 0)

    # ---- ring operations ------------------------------------------------

    def _check(self, other: "SparsePoly"):
        if self.varset != other.varset:
            raise VarsetMismatch(f"{self.varset} vs {other.varset}")

    def __add__(self, other):
        if isinstance(other, int):
            other = SparsePoly.const(self.varset, other)
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for k, c in b.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return SparsePoly(self.varset, out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly(self.varset, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = SparsePoly.const(self.varset, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return SparsePoly.zero(self.varset)
            return SparsePoly(
                self.varset, {k: other * c for k, c in self.terms.items()}
            )
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[int, int] = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                s = get(k, 0) + ca * cb
                if s:
                    out[k] = s
                else:
                    del out[k]
        return SparsePoly(self.varset, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = SparsePoly.const(self.varset, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def map_coefficients(self, fn) -> "SparsePoly":
        return SparsePoly(self.varset, {k: fn(c) for k, c in self.terms.items()})

    def divide_content(self, g: int) -> "SparsePoly":
        if g in (1, -1):
            return self if g == 1 else -self
        return SparsePoly(self.varset, {k: c // g for k, c in self.terms.items()})

    # ---- structural helpers ----------------------------------------------

    def permuted(self, perm: tuple[int, int, int]) -> "SparsePoly":
        """Permute the first three variables; perm sends slot i to slot perm[i]."""
        out: dict[int, int] = {}
        for k, c in self.terms.items():
            e = unpack(k)
            ne = [0, 0, 0, e[3]]
            for i in range(3):
                ne[perm[i]] = e[i]
            out[pack(*ne)] = c
        return SparsePoly(self.varset, out)

    def substitute_h(self, replacement: "SparsePoly") -> "SparsePoly":
        """Substitute the variable h by `replacement` (same varset)."""
        self._check(replacement)
        powers = {0: SparsePoly.const(self.varset, 1)}
        out = SparsePoly.zero(self.varset)
        for k, c in sorted(self.terms.items()):
            e1, e2, e3, eh = unpack(k)
            if eh not in powers:
                p = max(q for q in powers if q < eh)
                cur = powers[p]
                while p < eh:
                    cur = cur * replacement
                    p += 1
                    powers[p] = cur
            out = out + powers[eh] * SparsePoly.monomial(
                self.varset, (e1, e2, e3, 0), c
            )
        return out

    def h_slices(self) -> dict[int, "SparsePoly"]:
        """Split by power of h; slice polynomials have the h exponent cleared."""
        out: dict[int, dict[int, int]] = {}
        hmask = (1 << (3 * _SHIFT)) - 1
        for k, c in self.terms.items():
            out.setdefault(k >> (3 * _SHIFT), {})[k & hmask] = c
        return {e: SparsePoly(self.varset, t) for e, t in sorted(out.items())}

    def evaluate(self, vals: tuple[int, int, int, int]) -> int:
        total = 0
        for k, c in self.terms.items():
            e = unpack(k)
            t = c
            for v, ei in zip(vals, e):
                if ei:
                    t *= v**ei
            total += t
        return total

    # ---- canonical text ---------------------------------------------------

    def sorted_terms(self) -> list[tuple[int, int]]:
        """Terms in canonical order: weighted degree descending, then h exponent
        descending, then the leading variables lexicographically descending."""
        w = VAR_WEIGHTS[self.varset]

        def key(item):
            e = unpack(item[0])
            d = sum(wi * ei for wi, ei in zip(w, e))
            return (-d, -e[3], -e[0], -e[1], -e[2])

        return sorted(self.terms.items(), key=key)

    def __str__(self):
        if not self.terms:
            return "0"
        names = VAR_NAMES[self.varset]
        chunks = []
        for k, c in self.sorted_terms():
            e = unpack(k)
            factors = []
            for name, ei in zip(names, e):
                if ei == 1:
                    factors.append(name)
                elif ei > 1:
                    factors.append(f"{name}^{ei}")
            mag = abs(c)
            if factors:
                body = "*".join(factors)
                if mag != 1:
                    body = f"{mag}*{body}"
            else:
                body = str(mag)
            chunks.append(("-" if c < 0 else "+", body))
        sign, body = chunks[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in chunks[1:]:
            text += f" {sign} {body}"
        return text

    __repr__ = __str__


def parse_poly(text: str, varset: str) -> SparsePoly:
    """Parse the canonical textual format back into a polynomial."""
    names = VAR_NAMES[varset]
    text = text.strip()
    if text == "0":
        return SparsePoly.zero(varset)
    text = text.replace(" - ", " + -").lstrip()
    out = SparsePoly.zero(varset)
    for chunk in text.split(" + "):
        chunk = chunk.strip()
        neg = chunk.startswith("-")
        if neg:
            chunk = chunk[1:].strip()
        coeff = 1
        exps = [0, 0, 0, 0]
        for factor in chunk.split("*"):
            factor = factor.strip()
            if not factor:
                raise ValueError(f"empty factor in {chunk!r}")
            if factor[0].isdigit():
                coeff *= int(factor)
                continue
            if "^" in factor:
                name, _, e = factor.partition("^")
                exps[names.index(name)] += int(e)
            else:
                exps[names.index(factor)] += 1
        out = out + SparsePoly.monomial(varset, exps, -coeff if neg else coeff)
    return out


def exact_div_linear(p: SparsePoly, f: LinearForm) -> SparsePoly:
    """Return q with q*f == p, or raise NotDivisible.

    Synthetic division along the first variable of f with nonzero coefficient;
    by Gauss's lemma a primitive f divides p over Z exactly when it does over Q,
    and every intermediate quotient coefficient is then integral.
    """
    if f.is_zero():
        raise ZeroDivisionError("division by the zero form")
    if p.is_zero():
        return p
    pivot = next(i for i, a in enumerate(f.coeffs) if a)
    a = f.coeffs[pivot]
    rest = [
        (pack(*(1 if j == i else 0 for j in range(3)), 0), ai)
        for i, ai in enumerate(f.coeffs)
        if ai and i != pivot
    ]
    shift = pivot * _SHIFT
    vkey = 1 << shift

    slices: dict[int, dict[int, int]] = {}
    for k, c in p.terms.items():
        slices.setdefault((k >> shift) & _MASK, {})[k] = c
    top = max(slices)
    if top == 0:
        raise NotDivisible(str(f))

    quotient: dict[int, int] = {}
    for e in range(top, 0, -1):
        layer = slices.get(e)
        if not layer:
            continue
        below = slices.setdefault(e - 1, {})
        for k, c in layer.items():
            if c % a:
                raise NotDivisible(str(f))
            qc = c // a
            qk = k - vkey
            quotient[qk] = qc
            for rk, rc in rest:
                nk = qk + rk
                s = below.get(nk, 0) - qc * rc
                if s:
                    below[nk] = s
                else:
                    below.pop(nk, None)
        del slices[e]
    if slices.get(0):
        raise NotDivisible(str(f))
    return SparsePoly(p.varset, quotient)


def poly_gcd_content(p: SparsePoly, n: int) -> int:
    """gcd of the coefficient content of p with the integer n (n > 0)."""
    g = n
    for c in p.terms.values():
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


def product_of_forms(factors, varset: str = L) -> SparsePoly:
    """Expand a product of linear forms (given as LinearForms or coefficient
    triples) into a polynomial."""
    out = SparsePoly.const(varset, 1)
    for f in factors:
        if not isinstance(f, LinearForm):
            f = LinearForm(*f)
        out = out * f.as_poly(varset)
    return out


class FactoredFraction:
    """num / (den_int * product of linear forms), the localization workhorse.

    The denominator forms are stored primitive (content folded into den_int,
    positive leading coefficient) as a multiset {coefficient triple: power}.
    den_int is kept positive; the sign lives in the numerator.
    """

    __slots__ = ("num", "den_int", "den")

    def __init__(self, num: SparsePoly, den_int: int = 1, den_factors=()):
        if den_int == 0:
            raise ZeroDivisionError("zero integer denominator")
        if num.varset != L:
            raise VarsetMismatch("fractions are over the L variables")
        den: dict[tuple[int, int, int], int] = {}
        for f in den_factors:
            if not isinstance(f, LinearForm):
                f = LinearForm(*f)
            cont, prim = f.primitive()
            den_int *= cont
            den[prim] = den.get(prim, 0) + 1
        if den_int < 0:
            den_int, num = -den_int, -num
        self.num = num
        self.den_int = den_int
        self.den = den
        self._reduce()

    @classmethod
    def from_poly(cls, p: SparsePoly) -> "FactoredFraction":
        return cls(p)

    @classmethod
    def _raw(cls, num, den_int, den):
        self = object.__new__(cls)
        self.num = num
        self.den_int = den_int
        self.den = den
        self._reduce()
        return self

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _reduce(self):
        if self.num.is_zero():
            self.den = {}
            self.den_int = 1
            return
        for prim in list(self.den):
            form = LinearForm(*prim)
            while self.den.get(prim, 0) > 0:
                try:
                    self.num = exact_div_linear(self.num, form)
                except NotDivisible:
                    break
                self.den[prim] -= 1
            if self.den.get(prim) == 0:
                del self.den[prim]
        if self.den_int != 1:
            g = poly_gcd_content(self.num, self.den_int)
            if g > 1:
                self.num = self.num.divide_content(g)
                self.den_int //= g

    def __eq__(self, other):
        if not isinstance(other, FactoredFraction):
            return NotImplemented
        # reduced forms are canonical up to nothing at all: cross-multiply
        d = (self - other)
        return d.is_zero()

    def __add__(self, other: "FactoredFraction") -> "FactoredFraction":
        if not isinstance(other, FactoredFraction):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        di, dj = self.den_int, other.den_int
        g = gcd(di, dj)
        li, lj = dj // g, di // g  # cross factors for the integer lcm
        extra_i, extra_j = [], []
        for prim in set(self.den) | set(other.den):
            mi = self.den.get(prim, 0)
            mj = other.den.get(prim, 0)
            m = max(mi, mj)
            extra_i.extend([prim] * (m - mi))
            extra_j.extend([prim] * (m - mj))
        num_i = self.num * li
        if extra_i:
            num_i = num_i * product_of_forms(extra_i)
        num_j = other.num * lj
        if extra_j:
            num_j = num_j * product_of_forms(extra_j)
        den = {}
        for prim in set(self.den) | set(other.den):
            den[prim] = max(self.den.get(prim, 0), other.den.get(prim, 0))
        return FactoredFraction._raw(num_i + num_j, di * li, den)

    def __neg__(self):
        out = object.__new__(FactoredFraction)
        out.num = -self.num
        out.den_int = self.den_int
        out.den = dict(self.den)
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SparsePoly):
            other = FactoredFraction(other)
        elif isinstance(other, int):
            other = FactoredFraction(SparsePoly.const(L, other))
        if not isinstance(other, FactoredFraction):
            return NotImplemented
        den = dict(self.den)
        for prim, m in other.den.items():
            den[prim] = den.get(prim, 0) + m
        return FactoredFraction._raw(
            self.num * other.num, self.den_int * other.den_int, den
        )

    __rmul__ = __mul__

    def to_poly(self) -> SparsePoly:
        """Return the numerator if the denominator is trivial after reduction,
        otherwise raise ResidualDenominator: the standard integrity check that
        a localization sum really is an honest class."""
        if self.num.is_zero():
            return self.num
        if self.den or self.den_int != 1:
            raise ResidualDenominator(str(self))
        return self.num

    def __str__(self):
        parts = [f"({self.num})"]
        if self.den_int != 1 or self.den:
            bits = []
            if self.den_int != 1:
                bits.append(str(self.den_int))
            for prim, m in sorted(self.den.items()):
                f = str(LinearForm(*prim))
                bits.append(f"({f})" + (f"^{m}" if m > 1 else ""))
            parts.append(" / (" + "*".join(bits) + ")")
        return "".join(parts)

    __repr__ = __str__

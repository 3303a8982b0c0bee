"""Recognition of S3-symmetric polynomials in l1, l2, l3 and rewriting in
Chern variables.

The sign conventions are fixed once and for all by

    c1 = -(l1 + l2 + l3),   c2 = l1*l2 + l1*l3 + l2*l3,   c3 = -l1*l2*l3,

i.e. c1 = -e1, c2 = e2, c3 = -e3 in the elementary symmetric functions of the
weights.  The extra variable h is carried through untouched: a symmetric
polynomial here means one whose coefficients in Z[h] are S3-invariant.
"""

from __future__ import annotations

from .poly import C, L, SparsePoly, pack, unpack

_SWAP = (1, 0, 2)  # l1 <-> l2
_CYCLE = (1, 2, 0)  # l1 -> l2 -> l3 -> l1


class NotSymmetric(ValueError):
    """The polynomial is not invariant under permuting l1, l2, l3.

    Never silently averaged: asymmetry means corrupted fixed-point data."""


E1 = SparsePoly(L, {pack(1, 0, 0, 0): 1, pack(0, 1, 0, 0): 1, pack(0, 0, 1, 0): 1})
E2 = SparsePoly(L, {pack(1, 1, 0, 0): 1, pack(1, 0, 1, 0): 1, pack(0, 1, 1, 0): 1})
E3 = SparsePoly(L, {pack(1, 1, 1, 0): 1})

_e_power_cache: dict[tuple[int, int, int], SparsePoly] = {(0, 0, 0): SparsePoly.const(L, 1)}


def _e_product(i: int, j: int, k: int) -> SparsePoly:
    """E1^i * E2^j * E3^k, memoized."""
    key = (i, j, k)
    cached = _e_power_cache.get(key)
    if cached is not None:
        return cached
    if k:
        out = _e_product(i, j, k - 1) * E3
    elif j:
        out = _e_product(i, j - 1, 0) * E2
    else:
        out = _e_product(i - 1, 0, 0) * E1
    _e_power_cache[key] = out
    return out


def is_symmetric(p: SparsePoly) -> bool:
    """True iff p (over the L variables) is invariant under all six
    permutations of l1, l2, l3."""
    if p.varset != L:
        raise ValueError("is_symmetric expects an L-variable polynomial")
    return p.permuted(_SWAP) == p and p.permuted(_CYCLE) == p


def to_chern(p: SparsePoly) -> SparsePoly:
    """Rewrite a symmetric L-polynomial in the Chern variables.

    Classical Gauss descent: in each h-slice repeatedly subtract the multiple
    of e1^(a-b) e2^(b-c) e3^c matching the lex-leading exponent (a, b, c),
    then substitute e1 -> -c1, e2 -> c2, e3 -> -c3.
    """
    if p.varset != L:
        raise ValueError("to_chern expects an L-variable polynomial")
    if not is_symmetric(p):
        raise NotSymmetric(str(p))
    out: dict[int, int] = {}
    for he, piece in p.h_slices().items():
        work = dict(piece.terms)
        while work:
            lead = max(work, key=lambda k: unpack(k)[:3])
            a, b, c, _ = unpack(lead)
            if not (a >= b >= c):
                raise NotSymmetric(str(p))
            coeff = work[lead]
            i, j, k = a - b, b - c, c
            for mk, mc in _e_product(i, j, k).terms.items():
                s = work.get(mk, 0) - coeff * mc
                if s:
                    work[mk] = s
                else:
                    work.pop(mk, None)
            sign = -1 if (i + k) % 2 else 1
            ck = pack(i, j, k, he)
            s = out.get(ck, 0) + sign * coeff
            if s:
                out[ck] = s
            else:
                out.pop(ck, None)
    return SparsePoly(C, out)


def chern_to_l(q: SparsePoly) -> SparsePoly:
    """Substitute c1 -> -e1, c2 -> e2, c3 -> -e3 (inverse of to_chern)."""
    if q.varset != C:
        raise ValueError("chern_to_l expects a C-variable polynomial")
    out = SparsePoly.zero(L)
    for k, coeff in sorted(q.terms.items()):
        i, j, kk, he = unpack(k)
        sign = -1 if (i + kk) % 2 else 1
        term = _e_product(i, j, kk) * SparsePoly.monomial(L, (0, 0, 0, he), sign * coeff)
        out = out + term
    return out

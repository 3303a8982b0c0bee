"""Certificate-producing ideal membership over Z[c1, c2, c3, h].

Every query is weighted-homogeneous (weights 1, 2, 3, 1), so membership in a
homogeneous ideal reduces degree by degree to an integer linear system: the
columns are the coefficient vectors of monomial multiples of the generators,
and solvability over Z is decided by a Hermite-style echelon form with
unimodular transform tracking.  A positive answer always comes with cofactor
polynomials, re-verifiable by plain multiplication.
"""

from __future__ import annotations

from math import gcd

from .poly import C, SparsePoly, VAR_WEIGHTS, pack, parse_poly, unpack


class NotMember(ArithmeticError):
    """Membership failed; carries the graded degree of the failing piece."""

    def __init__(self, degree, message=""):
        super().__init__(message or f"not a member in degree {degree}")
        self.degree = degree


class NoSolution(ArithmeticError):
    """The integer linear system has no solution."""


def graded_monomials(degree: int, varset: str = C) -> list[tuple[int, int, int, int]]:
    """All exponent vectors of weighted degree exactly `degree`, ordered
    lexicographically descending in (e1, e2, e3, eh)."""
    if degree < 0:
        return []
    w = VAR_WEIGHTS[varset]
    out = []
    for e1 in range(degree // w[0], -1, -1):
        r1 = degree - w[0] * e1
        for e2 in range(r1 // w[1], -1, -1):
            r2 = r1 - w[1] * e2
            for e3 in range(r2 // w[2], -1, -1):
                r3 = r2 - w[2] * e3
                if r3 % w[3] == 0:
                    out.append((e1, e2, e3, r3 // w[3]))
    return out


def _axpy(dst: dict[int, int], src: dict[int, int], k: int):
    if not k:
        return
    for j, v in src.items():
        s = dst.get(j, 0) + k * v
        if s:
            dst[j] = s
        else:
            dst.pop(j, None)


class _IntegerLattice:
    """Echelon basis of the column lattice with coefficient tracking.

    Vectors are sparse dicts over row positions.  Elimination picks the
    globally smallest nonzero entry as pivot and clears its row from every
    other vector with round-to-nearest quotients; that keeps all entries
    (and the tracked coordinates in the original vectors) small, where a
    fixed-order Hermite reduction would let them explode.
    """

    def __init__(self, columns):
        self.active = [
            (dict(vec), {tag: 1}) for tag, vec in enumerate(columns) if vec
        ]
        self.pivots = []  # (row, vector, combination), in retirement order
        self._eliminate()

    def _eliminate(self):
        active = self.active
        while active:
            best = None
            for idx, (vec, _) in enumerate(active):
                for r, val in vec.items():
                    a = abs(val)
                    key = (a, r, idx)
                    if best is None or key < best:
                        best = key
                        if a == 1:
                            break
                if best and best[0] == 1:
                    break
            if best is None:
                break
            _, row, idx = best
            vec, combo = active[idx]
            a = vec[row]
            clean = True
            for jdx in range(len(active)):
                if jdx == idx:
                    continue
                w, wc = active[jdx]
                b = w.get(row)
                if not b:
                    continue
                q, r = divmod(b, a)
                if 2 * abs(r) > abs(a):  # round to nearest, keeps entries small
                    q += 1
                if q:
                    _axpy(w, vec, -q)
                    _axpy(wc, combo, -q)
                if w.get(row):
                    clean = False
            if clean:
                self.pivots.append((row, vec, combo))
                active.pop(idx)
                for jdx in range(len(active) - 1, -1, -1):
                    if not active[jdx][0]:
                        active.pop(jdx)
        self.active = []

    def solve(self, target: dict[int, int]) -> dict[int, int]:
        """Integer coordinates expressing target in the inserted vectors,
        or raise NoSolution.  Later pivot vectors vanish on earlier pivot
        rows, so one forward pass in retirement order decides solvability."""
        vec = dict(target)
        out: dict[int, int] = {}
        for row, pivot, combo in self.pivots:
            b = vec.get(row)
            if not b:
                continue
            a = pivot[row]
            if b % a:
                raise NoSolution(f"row {row}: {b} not divisible by {a}")
            q = b // a
            _axpy(vec, pivot, -q)
            _axpy(out, combo, q)
        if vec:
            raise NoSolution(f"unreachable rows {sorted(vec)}")
        return out


def hnf_solve(matrix: list[list[int]], rhs: list[int]):
    """Solve A x = rhs over the integers (A given by rows).

    Returns a solution vector, or None when no integer solution exists.
    """
    ncols = len(matrix[0]) if matrix else 0
    if any(len(row) != ncols for row in matrix):
        raise ValueError("ragged matrix")
    if len(rhs) != len(matrix):
        raise ValueError("dimension mismatch")
    lattice = _IntegerLattice()
    for col in range(ncols):
        vec = {i: matrix[i][col] for i in range(len(matrix)) if matrix[i][col]}
        lattice.insert(vec, col)
    try:
        combo = lattice.solve({i: v for i, v in enumerate(rhs) if v})
    except NoSolution:
        return None
    return [combo.get(j, 0) for j in range(ncols)]


class IdealBasis:
    """A named list of nonzero weighted-homogeneous generators in Z[c,h]."""

    def __init__(self, gens, name: str):
        gens = list(gens)
        for g in gens:
            if g.varset != C:
                raise ValueError("generators must be C-variable polynomials")
            if g.is_zero():
                raise ValueError("zero generator")
            if not g.is_homogeneous():
                raise ValueError(f"inhomogeneous generator: {g}")
        self.gens = gens
        self.name = name
        self.degrees = [g.weighted_degree() for g in gens]

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __repr__(self):
        return f"IdealBasis({self.name}: {len(self.gens)} gens)"


class MembershipCertificate:
    """Cofactors q_i with sum(q_i * g_i) == target, checkable by multiplication."""

    def __init__(self, target: SparsePoly, ideal: IdealBasis, cofactors):
        self.target = target
        self.ideal = ideal
        self.cofactors = list(cofactors)

    def verify(self) -> bool:
        acc = SparsePoly.zero(C)
        for q, g in zip(self.cofactors, self.ideal.gens):
            acc = acc + q * g
        return acc == self.target

    def to_line(self) -> str:
        pieces = " + ".join(
            f"({q})*({g})" for q, g in zip(self.cofactors, self.ideal.gens)
        )
        return f"{self.target} = {pieces}"


def parse_certificate_line(line: str):
    """Parse `target = (cof)*(gen) + ...` into (target, [(cof, gen), ...])."""
    lhs, _, rhs = line.partition(" = ")
    target = parse_poly(lhs.strip(), C)
    pairs = []
    depth = 0
    chunk = ""
    chunks = []
    for ch in rhs.strip():
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        chunk += ch
        if depth == 0 and chunk.endswith(" + "):
            chunks.append(chunk[:-3])
            chunk = ""
    if chunk:
        chunks.append(chunk)
    for piece in chunks:
        piece = piece.strip()
        if not (piece.startswith("(") and piece.endswith(")")):
            raise ValueError(f"malformed certificate term {piece!r}")
        # split at the ")*(" boundary of the two top-level groups
        depth = 0
        split_at = None
        for i, ch in enumerate(piece):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0:
                    split_at = i
                    break
        if split_at is None or piece[split_at : split_at + 3] != ")*(":
            raise ValueError(f"malformed certificate term {piece!r}")
        cof = parse_poly(piece[1:split_at], C)
        gen = parse_poly(piece[split_at + 3 : -1], C)
        pairs.append((cof, gen))
    return target, pairs


def verify_certificate_line(line: str) -> bool:
    target, pairs = parse_certificate_line(line)
    acc = SparsePoly.zero(C)
    for cof, gen in pairs:
        acc = acc + cof * gen
    return acc == target


def _coeff_vector(p: SparsePoly, index: dict[int, int]) -> dict[int, int]:
    return {index[k]: c for k, c in p.terms.items()}


def _monomial_poly(exps, coeff=1) -> SparsePoly:
    return SparsePoly.monomial(C, exps, coeff)


def _h_monic_degree(g: SparsePoly):
    """The h-degree of g if g is monic as a polynomial in h (top h-slice
    equal to the constant 1), else None."""
    d = g.h_degree()
    slices = g.h_slices()
    top = slices.get(d)
    if top is not None and top == SparsePoly.const(C, 1):
        return d
    return None


def _divmod_h_monic(f: SparsePoly, g: SparsePoly, gdeg: int):
    """Quotient and remainder of f by g, monic of h-degree gdeg: division
    along powers of h, coefficient growth bounded and no divisions."""
    quotient = SparsePoly.zero(C)
    rem = f
    while rem.h_degree() >= gdeg:
        top = rem.h_degree()
        lead = rem.h_slices()[top]
        shift = lead * _monomial_poly((0, 0, 0, top - gdeg))
        quotient = quotient + shift
        rem = rem - shift * g
    return quotient, rem


class _DegreeSolver:
    """Lattice of all monomial multiples of the generators in one degree.

    When the ideal contains a generator monic in h, every column and every
    query is first reduced modulo that generator: monomial multiples of it
    reduce to zero, so the integer system shrinks to the monomials of small
    h-degree and the Hermite elimination stays small.  The dropped generator
    reappears in the cofactors through the final exact division.
    """

    def __init__(self, ideal: IdealBasis, degree: int):
        self.ideal = ideal
        self.degree = degree
        self.monic_index = None
        monic_h = None
        for gi, g in enumerate(ideal.gens):
            d = _h_monic_degree(g)
            if d is not None and (monic_h is None or d < monic_h):
                self.monic_index = gi
                monic_h = d
        self.monic_h = monic_h
        self.columns = []  # (generator index, multiplier exponent vector)
        row_monomials = graded_monomials(degree)
        if self.monic_index is not None:
            row_monomials = [e for e in row_monomials if e[3] < monic_h]
        self.index = {pack(*e): i for i, e in enumerate(row_monomials)}
        vectors = []
        for gi, g in enumerate(ideal.gens):
            if gi == self.monic_index:
                continue
            d = degree - ideal.degrees[gi]
            if d < 0:
                continue
            for exps in graded_monomials(d):
                prod = g * _monomial_poly(exps)
                self.columns.append((gi, exps))
                vectors.append(_coeff_vector(self._reduce(prod), self.index))
        self.lattice = _IntegerLattice(vectors)

    def _reduce(self, p: SparsePoly) -> SparsePoly:
        if self.monic_index is None:
            return p
        g = self.ideal.gens[self.monic_index]
        _, rem = _divmod_h_monic(p, g, self.monic_h)
        return rem

    def solve(self, piece: SparsePoly):
        combo = self.lattice.solve(_coeff_vector(self._reduce(piece), self.index))
        cofactors = [SparsePoly.zero(C) for _ in self.ideal.gens]
        for tag, coeff in sorted(combo.items()):
            gi, exps = self.columns[tag]
            cofactors[gi] = cofactors[gi] + _monomial_poly(exps, coeff)
        if self.monic_index is not None:
            rest = piece
            for q, g in zip(cofactors, self.ideal.gens):
                rest = rest - q * g
            g = self.ideal.gens[self.monic_index]
            q, rem = _divmod_h_monic(rest, g, self.monic_h)
            if not rem.is_zero():
                raise NoSolution("reduction remainder not a multiple")
            cofactors[self.monic_index] = q
        return cofactors


_degree_solver_cache: dict[tuple[int, int], _DegreeSolver] = {}


def _solver_for(ideal: IdealBasis, degree: int) -> _DegreeSolver:
    key = (id(ideal), degree)
    solver = _degree_solver_cache.get(key)
    if solver is None:
        solver = _DegreeSolver(ideal, degree)
        _degree_solver_cache[key] = solver
    return solver


def member(f: SparsePoly, ideal: IdealBasis) -> MembershipCertificate:
    """Express f in the ideal or raise NotMember.

    A non-homogeneous f is split into graded pieces, each of which must lie
    in the ideal separately (the ideal is homogeneous).
    """
    if f.varset != C:
        raise ValueError("membership queries live in the Chern variables")
    cofactors = [SparsePoly.zero(C) for _ in ideal.gens]
    for degree, piece in f.graded_pieces().items():
        try:
            partial = _solver_for(ideal, degree).solve(piece)
        except NoSolution as exc:
            raise NotMember(degree, f"degree-{degree} piece of target: {exc}") from exc
        cofactors = [a + b for a, b in zip(cofactors, partial)]
    cert = MembershipCertificate(f, ideal, cofactors)
    assert cert.verify(), "internal error: certificate failed re-verification"
    return cert


def membership(f: SparsePoly, ideal: IdealBasis):
    """member() as a query: the certificate, or None when f is not a member."""
    try:
        return member(f, ideal)
    except NotMember:
        return None


def ideal_equal(first: IdealBasis, second: IdealBasis):
    """Two-sided inclusion test. Returns (equal, certificates) where the
    certificates list holds one entry per generator of both bases."""
    certs = []
    equal = True
    for g in first.gens:
        cert = membership(g, second)
        certs.append((first.name, str(g), cert))
        equal = equal and cert is not None
    for g in second.gens:
        cert = membership(g, first)
        certs.append((second.name, str(g), cert))
        equal = equal and cert is not None
    return equal, certs


def member_mod_p(f: SparsePoly, ideal: IdealBasis, modulus: int) -> bool:
    """Membership of f in (ideal + modulus * everything), degree by degree.

    For a prime modulus this is plain linear algebra over Z/p; any modulus
    (the mod-9 arguments) is handled by augmenting the integer system with
    modulus-scaled monomial columns.  A negative answer here is sound for Z:
    if f is not a member mod m, it is not a member over the integers.
    """
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    for degree, piece in f.graded_pieces().items():
        row_monomials = graded_monomials(degree)
        index = {pack(*e): i for i, e in enumerate(row_monomials)}
        vectors = []
        for gi, g in enumerate(ideal.gens):
            d = degree - ideal.degrees[gi]
            if d < 0:
                continue
            for exps in graded_monomials(d):
                vectors.append(_coeff_vector(g * _monomial_poly(exps), index))
        for e in row_monomials:
            vectors.append({index[pack(*e)]: modulus})
        try:
            _IntegerLattice(vectors).solve(_coeff_vector(piece, index))
        except NoSolution:
            return False
    return True

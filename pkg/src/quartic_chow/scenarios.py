"""One verification pipeline per machine computation: each scenario builds
its fixed-point terms, runs the localization pushforwards, and turns the
results into membership queries with certificates, returning a structured
verdict.

Scenario ids, in the gated run order (the first one proves that the degree-15
relation polynomial lies in the alpha ideal, which justifies testing all
later memberships in the plain polynomial ring):

    alpha, independence, presentation, square, line-cubic, hilb2w2,
    binodal, trinodal, strata
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache

from .equiv import (
    FixedPointTerm,
    FormMonomial,
    fixed_point_class,
    hyperplane_restriction,
    localize_pushforward,
    monomials,
    proj_tangent_weights,
    relation_polynomial,
)
from .hilb import (
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
)
from .poly import C, L, LinearForm, ResidualDenominator, SparsePoly, parse_poly
from .symfun import NotSymmetric
from .zideal import (
    IdealBasis,
    MembershipCertificate,
    member_mod_p,
    membership,
)

ALPHA1 = parse_poly("27*h - 36*c1", C)
ALPHA2 = parse_poly("9*h^2 - 6*c1*h - 24*c2", C)
ALPHA3 = parse_poly("h^3 - c1*h^2 + c2*h - 28*c3", C)
DELTA13 = parse_poly(
    "55*h^3 - 220*c1*h^2 + 280*c1^2*h + 40*c2*h - 96*c1^3 - 128*c1*c2 + 224*c3", C
)

ALPHA_IDEAL = IdealBasis([ALPHA1, ALPHA2, ALPHA3], "alpha-ideal")
ALPHA_DELTA_IDEAL = IdealBasis(
    [ALPHA1, ALPHA2, ALPHA3, DELTA13], "alpha-delta-ideal"
)

# the paper's own cofactors for 3*delta13 in the alpha ideal
PRINTED_TRIPLE_DELTA_COFACTORS = (
    parse_poly("9*h^2 - 20*c1*h + 8*c1^2", C),
    parse_poly("-6*h + 16*c1", C),
    parse_poly("-24", C),
)

MOD9 = 9
MOD3 = 3


# ---------------------------------------------------------------------------
# weighted partitions and the d=4 stratification digraph


@dataclass(frozen=True)
class WeightedPartition:
    """A multiset of component degrees with multiplicities: the factorization
    type of a plane curve.  Normalized with degrees ascending and, within
    equal degree, multiplicities descending."""

    mu: tuple[int, ...]
    m: tuple[int, ...]

    def __post_init__(self):
        pairs = sorted(zip(self.mu, self.m), key=lambda km: (km[0], -km[1]))
        object.__setattr__(self, "mu", tuple(k for k, _ in pairs))
        object.__setattr__(self, "m", tuple(mm for _, mm in pairs))

    def total(self) -> int:
        return sum(k * mm for k, mm in zip(self.mu, self.m))

    def label(self) -> str:
        mu = ",".join(map(str, self.mu))
        mm = ",".join(map(str, self.m))
        return f"Z_{{{mu}}}^({mm})"


def weighted_partitions(d: int) -> list[WeightedPartition]:
    """All weighted partitions of d, deterministically ordered."""
    if d < 1:
        raise ValueError("d must be positive")
    pairs = [(k, mm) for k in range(1, d + 1) for mm in range(d // k, 0, -1)]

    out = []

    def recurse(start: int, remaining: int, chosen):
        if remaining == 0:
            out.append(WeightedPartition(
                tuple(k for k, _ in chosen), tuple(mm for _, mm in chosen)
            ))
            return
        for idx in range(start, len(pairs)):
            k, mm = pairs[idx]
            if k * mm <= remaining:
                recurse(idx, remaining - k * mm, chosen + [(k, mm)])

    recurse(0, d, [])
    out.sort(key=lambda wp: (len(wp.mu), wp.mu, tuple(-x for x in wp.m)))
    return out


def codim(wp: WeightedPartition, d: int) -> int:
    """Codimension of the closed stratum in the space of degree-d curves:
    dim P(W_d) minus the sum of the component moduli dimensions."""
    n = lambda k: k * (k + 3) // 2
    return n(d) - sum(n(k) for k in wp.mu)


# the d=4 digraph: (label, codimension as displayed); the irreducible-curve
# node stands for the irreducible singular stratum, of codimension 1
STRATA_D4 = [
    ("Z_irr", 1),
    ("Z_{1,3}^(1,1)", 3),
    ("Z_{2,2}^(1,1)", 4),
    ("Z_{1,1,2}^(1,1,1)", 5),
    ("Z_{1,1,1,1}^(1,1,1,1)", 6),
    ("Z_{1,2}^(2,1)", 7),
    ("Z_{1,1,1}^(2,1,1)", 8),
    ("Z_{2}^(2)", 9),
    ("Z_{1,1}^(2,2)", 10),
    ("Z_{1,1}^(3,1)", 10),
    ("Z_{1}^(4)", 12),
]

STRATA_D4_EDGES = [
    ("Z_irr", "Z_{1,3}^(1,1)"),
    ("Z_irr", "Z_{2,2}^(1,1)"),
    ("Z_{1,3}^(1,1)", "Z_{1,1,2}^(1,1,1)"),
    ("Z_{2,2}^(1,1)", "Z_{1,1,2}^(1,1,1)"),
    ("Z_{2,2}^(1,1)", "Z_{2}^(2)"),
    ("Z_{1,1,2}^(1,1,1)", "Z_{1,1,1,1}^(1,1,1,1)"),
    ("Z_{1,1,2}^(1,1,1)", "Z_{1,2}^(2,1)"),
    ("Z_{1,1,1,1}^(1,1,1,1)", "Z_{1,1,1}^(2,1,1)"),
    ("Z_{1,2}^(2,1)", "Z_{1,1,1}^(2,1,1)"),
    ("Z_{1,1,1}^(2,1,1)", "Z_{1,1}^(2,2)"),
    ("Z_{1,1,1}^(2,1,1)", "Z_{1,1}^(3,1)"),
    ("Z_{2}^(2)", "Z_{1,1}^(2,2)"),
    ("Z_{1,1}^(2,2)", "Z_{1}^(4)"),
    ("Z_{1,1}^(3,1)", "Z_{1}^(4)"),
]


# ---------------------------------------------------------------------------
# verdict plumbing


@dataclass
class Row:
    label: str
    value: str
    target: str
    member: bool
    expected_negative: bool = False
    certificate: MembershipCertificate | None = None
    certificate_path: str | None = None

    @property
    def passed(self) -> bool:
        return self.member != self.expected_negative

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "value": self.value,
            "target": self.target,
            "member": self.member,
            "expected_negative": self.expected_negative,
            "certificate": self.certificate_path,
        }


@dataclass
class Verdict:
    scenario: str
    rows: list[Row] = field(default_factory=list)
    integrity: str = "ok"
    seconds: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.integrity == "ok" and all(r.passed for r in self.rows)

    def as_dict(self) -> dict:
        return {
            "id": self.scenario,
            "pass": self.passed,
            "rows": [r.as_dict() for r in self.rows],
            "integrity": self.integrity,
            "seconds": round(self.seconds, 3),
            "notes": self.notes,
        }


def _membership_row(label: str, value: SparsePoly, ideal: IdealBasis) -> Row:
    cert = membership(value, ideal)
    return Row(
        label=label,
        value=str(value),
        target=ideal.name,
        member=cert is not None,
        certificate=cert,
    )


# ---------------------------------------------------------------------------
# term skeletons (generator-independent fixed-point data)


@lru_cache(maxsize=None)
def _alpha_skeleton():
    """36 fixed points of the rank-12 bundle of quartics singular at a moving
    point of the plane."""
    skeleton = []
    for c in range(3):
        point_tangent = [
            LinearForm(*(1 if i == a else 0 for i in range(3)))
            - LinearForm(*(1 if i == c else 0 for i in range(3)))
            for a in range(3)
            if a != c
        ]
        fiber = fiber_monomials_singular_at(c)
        restriction = LinearForm(*(-1 if i == c else 0 for i in range(3)))
        for f in fiber:
            theta_f = f.character()
            tangent = point_tangent + [
                g.character() - theta_f for g in fiber if g != f
            ]
            skeleton.append((f"(P{c + 1},{f.label()})", restriction, tangent, f))
    return tuple(skeleton)


@lru_cache(maxsize=None)
def _square_skeleton():
    out = []
    for q in monomials(2):
        out.append(
            (
                f"[{q.label()}]",
                hyperplane_restriction(q),
                tuple(proj_tangent_weights(2, q)),
                q * q,
            )
        )
    return tuple(out)


@lru_cache(maxsize=None)
def _line_cubic_skeleton():
    out = []
    for m1 in monomials(1):
        for m3 in monomials(3):
            out.append(
                (
                    f"([{m1.label()}],[{m3.label()}])",
                    hyperplane_restriction(m1),
                    tuple(proj_tangent_weights(1, m1) + proj_tangent_weights(3, m3)),
                    m1 * m3,
                )
            )
    return tuple(out)


@lru_cache(maxsize=None)
def _binodal_skeleton():
    """81 fixed points of the rank-9 incidence bundle over Hilb^2 P^2."""
    skeleton = []
    for pt in hilb_fixed_points(2):
        weights, extra = pt.tangent_weights()
        h1, s = hilb2_restrictions(pt)
        fiber = fiber_monomials_double(pt)
        for f in fiber:
            theta_f = f.character()
            tangent = list(weights) + [
                g.character() - theta_f for g in fiber if g != f
            ]
            skeleton.append(
                ((pt.label, f.label()), h1, s, tuple(tangent), extra, f)
            )
    return tuple(skeleton)


@lru_cache(maxsize=None)
def _trinodal_skeleton():
    """186 fixed points of the rank-6 correspondence over the blown-up
    Hilb^3 P^2, each carrying the seven tautological restriction values."""
    skeleton = []

    def restrictions(base_pt):
        roots = {i: chern_roots(base_pt, i) for i in range(3)}

        def e(forms, p):
            from .hilb import _elementary_symmetric

            return _elementary_symmetric(forms, p)

        return (
            e(roots[0], 1),
            e(roots[0], 2),
            e(roots[1], 1),
            e(roots[1], 2),
            e(roots[1], 3),
            e(roots[2], 2),
            e(roots[2], 3),
        )

    for pt in hilb_fixed_points(3):
        cls = hilb3_point_class(pt)
        if cls == "noncurvilinear":
            continue
        weights, extra = pt.tangent_weights()
        values = restrictions(pt)
        fiber = fiber_monomials_trinodal(pt)
        for f in fiber:
            theta_f = f.character()
            tangent = list(weights) + [
                g.character() - theta_f for g in fiber if g != f
            ]
            skeleton.append(
                ((pt.label, f.label()), values, tuple(tangent), extra, f)
            )
    for bp in blowup_points():
        weights = blowup_tangent_weights(bp)
        values = restrictions(bp.base)
        fiber = fiber_monomials_trinodal(bp)
        for f in fiber:
            theta_f = f.character()
            tangent = list(weights) + [
                g.character() - theta_f for g in fiber if g != f
            ]
            skeleton.append(
                ((bp.label, f.label()), values, tuple(tangent), 1, f)
            )
    assert len(skeleton) == 186
    return tuple(skeleton)


ETA_WEIGHTS = (1, 2, 1, 2, 3, 2, 3)
ETA_CLASS_NAMES = (
    "c1(E0)",
    "c2(E0)",
    "c1(E1)",
    "c2(E1)",
    "c3(E1)",
    "c2(E2)",
    "c3(E2)",
)


def eta_tuples(bound: int = 6) -> list[tuple[int, ...]]:
    """Exponent tuples of the seven tautological classes with weighted degree
    at most the bound, in (degree, lexicographic) order."""
    out = []

    def recurse(idx, remaining, chosen):
        if idx == len(ETA_WEIGHTS):
            out.append(tuple(chosen))
            return
        w = ETA_WEIGHTS[idx]
        for e in range(remaining // w + 1):
            recurse(idx + 1, remaining - e * w, chosen + [e])

    recurse(0, bound, [])
    out.sort(key=lambda t: (sum(w * e for w, e in zip(ETA_WEIGHTS, t)), t))
    return out


# ---------------------------------------------------------------------------
# generator enumeration and evaluation (shared by the parallel workers)


def _power(poly: SparsePoly, e: int, cache: dict) -> SparsePoly:
    key = (id(poly), e)
    if key not in cache:
        cache[key] = poly**e
    return cache[key]


_SIGMA_MONOMIALS = [
    exps
    for total in range(3)
    for exps in sorted(
        (
            (a, b, c, d)
            for a in range(3)
            for b in range(3)
            for c in range(3)
            for d in range(3)
            if a + b + c + d == total
        ),
        reverse=True,
    )
]


def _sigma_label(a: int, exps) -> str:
    parts = []
    if a == 1:
        parts.append("tau")
    elif a > 1:
        parts.append(f"tau^{a}")
    for i, e in enumerate(exps):
        if e == 1:
            parts.append(f"sigma{i + 1}")
        elif e > 1:
            parts.append(f"sigma{i + 1}^{e}")
    return "*".join(parts) or "1"


def generator_labels(scenario: str) -> list[str]:
    if scenario == "alpha":
        return [f"beta{i}" for i in range(3)]
    if scenario == "square":
        return [f"pi_*(h2^{e})" for e in range(6)]
    if scenario == "line-cubic":
        return ["pi_*(1)", "pi_*(h1)", "pi_*(h1^2)"]
    if scenario == "hilb2w2":
        return [
            _sigma_label(a, exps) for a in range(3) for exps in _SIGMA_MONOMIALS
        ]
    if scenario == "binodal":
        return [f"gamma_{i}{j}" for i in range(3) for j in range(3)]
    if scenario == "trinodal":
        return ["eta" + str(t).replace(" ", "") for t in eta_tuples()]
    raise ValueError(f"no pushforward generators for scenario {scenario!r}")


def compute_generator(scenario: str, index: int) -> SparsePoly:
    """Evaluate one pushforward generator of a scenario; pure, so safe to
    fan out over worker processes."""
    one = SparsePoly.const(L, 1)
    if scenario == "alpha":
        terms = [
            FixedPointTerm(lbl, rest.as_poly(L) ** index, list(tg), img)
            for lbl, rest, tg, img in _alpha_skeleton()
        ]
    elif scenario == "square":
        terms = [
            FixedPointTerm(lbl, rest.as_poly(L) ** index, list(tg), img)
            for lbl, rest, tg, img in _square_skeleton()
        ]
    elif scenario == "line-cubic":
        terms = [
            FixedPointTerm(lbl, rest.as_poly(L) ** index, list(tg), img)
            for lbl, rest, tg, img in _line_cubic_skeleton()
        ]
    elif scenario == "hilb2w2":
        a, exps = divmod(index, len(_SIGMA_MONOMIALS))
        exps = _SIGMA_MONOMIALS[exps]
        terms = []
        for point in hilb2w2_fixed_data():
            num = point.tau.as_poly(L) ** a
            for p, e in enumerate(exps):
                if e:
                    num = num * point.sigma[p + 1] ** e
            terms.append(
                FixedPointTerm(point.label, num, list(point.tangent), point.image)
            )
    elif scenario == "binodal":
        i, j = divmod(index, 3)
        terms = [
            FixedPointTerm(
                f"{lbl}",
                h1.as_poly(L) ** i * s.as_poly(L) ** j,
                list(tg),
                img,
                extra_int=extra,
            )
            for lbl, h1, s, tg, extra, img in _binodal_skeleton()
        ]
    elif scenario == "trinodal":
        tup = eta_tuples()[index]
        cache: dict = {}
        terms = []
        for lbl, values, tg, extra, img in _trinodal_skeleton():
            num = one
            for value, e in zip(values, tup):
                if e:
                    num = num * _power(value, e, cache)
            terms.append(
                FixedPointTerm(f"{lbl}", num, list(tg), img, extra_int=extra)
            )
    else:
        raise ValueError(f"no pushforward generators for scenario {scenario!r}")
    return localize_pushforward(terms)


def _worker(args):
    scenario, index = args
    return compute_generator(scenario, index)


def _compute_all(scenario: str, mapper) -> list[SparsePoly]:
    labels = generator_labels(scenario)
    return list(mapper(_worker, [(scenario, i) for i in range(len(labels))]))


# ---------------------------------------------------------------------------
# the scenarios


def scenario_alpha(mapper=map) -> Verdict:
    start = time.perf_counter()
    verdict = Verdict("alpha")
    try:
        betas = _compute_all("alpha", mapper)
    except (ResidualDenominator, NotSymmetric) as exc:
        verdict.integrity = f"error: {type(exc).__name__}: {exc}"
        verdict.seconds = time.perf_counter() - start
        return verdict
    beta_ideal = IdealBasis(betas, "beta-ideal")
    alphas = [ALPHA1, ALPHA2, ALPHA3]
    for i, beta in enumerate(betas):
        verdict.rows.append(
            _membership_row(f"beta{i} in alpha-ideal", beta, ALPHA_IDEAL)
        )
        if beta == alphas[i]:
            verdict.notes.append(f"beta{i} equals alpha{i + 1} coefficientwise")
    for i, alpha in enumerate(alphas):
        verdict.rows.append(
            _membership_row(f"alpha{i + 1} in beta-ideal", alpha, beta_ideal)
        )
    verdict.rows.append(
        _membership_row("p4 in alpha-ideal", relation_polynomial(4), ALPHA_IDEAL)
    )
    verdict.seconds = time.perf_counter() - start
    return verdict


def _pushforward_membership_scenario(
    scenario: str, ideal: IdealBasis, mapper
) -> Verdict:
    start = time.perf_counter()
    verdict = Verdict(scenario)
    labels = generator_labels(scenario)
    try:
        values = _compute_all(scenario, mapper)
    except (ResidualDenominator, NotSymmetric) as exc:
        verdict.integrity = f"error: {type(exc).__name__}: {exc}"
        verdict.seconds = time.perf_counter() - start
        return verdict
    for label, value in zip(labels, values):
        verdict.rows.append(
            _membership_row(f"{label} in {ideal.name}", value, ideal)
        )
    verdict.seconds = time.perf_counter() - start
    return verdict


def scenario_square(mapper=map) -> Verdict:
    return _pushforward_membership_scenario("square", ALPHA_IDEAL, mapper)


def scenario_hilb2w2(mapper=map) -> Verdict:
    return _pushforward_membership_scenario("hilb2w2", ALPHA_IDEAL, mapper)


def scenario_binodal(mapper=map) -> Verdict:
    return _pushforward_membership_scenario("binodal", ALPHA_IDEAL, mapper)


def scenario_trinodal(mapper=map) -> Verdict:
    return _pushforward_membership_scenario("trinodal", ALPHA_IDEAL, mapper)


def scenario_line_cubic(mapper=map) -> Verdict:
    start = time.perf_counter()
    verdict = Verdict("line-cubic")
    try:
        values = _compute_all("line-cubic", mapper)
    except (ResidualDenominator, NotSymmetric) as exc:
        verdict.integrity = f"error: {type(exc).__name__}: {exc}"
        verdict.seconds = time.perf_counter() - start
        return verdict
    fundamental, h1_push, h1sq_push = values
    verdict.rows.append(
        Row(
            label="pi_*(1) equals delta13 coefficientwise",
            value=str(fundamental),
            target="delta13",
            member=fundamental == DELTA13,
        )
    )
    verdict.rows.append(
        _membership_row("pi_*(h1) in alpha-delta-ideal", h1_push, ALPHA_DELTA_IDEAL)
    )
    verdict.rows.append(
        _membership_row(
            "pi_*(h1^2) in alpha-delta-ideal", h1sq_push, ALPHA_DELTA_IDEAL
        )
    )
    verdict.seconds = time.perf_counter() - start
    return verdict


def scenario_independence(mapper=map) -> Verdict:
    start = time.perf_counter()
    verdict = Verdict("independence")
    cert = MembershipCertificate(
        3 * DELTA13, ALPHA_IDEAL, PRINTED_TRIPLE_DELTA_COFACTORS
    )
    verdict.rows.append(
        Row(
            label="printed cofactors for 3*delta13 verify",
            value=cert.to_line(),
            target=ALPHA_IDEAL.name,
            member=cert.verify(),
            certificate=cert,
        )
    )
    verdict.rows.append(
        _membership_row("3*delta13 in alpha-ideal", 3 * DELTA13, ALPHA_IDEAL)
    )
    negatives = [
        ("alpha2 not in (alpha1)", ALPHA2, IdealBasis([ALPHA1], "(alpha1)"), MOD9),
        (
            "alpha3 not in (alpha1,alpha2)",
            ALPHA3,
            IdealBasis([ALPHA1, ALPHA2], "(alpha1,alpha2)"),
            MOD3,
        ),
        ("delta13 not in alpha-ideal", DELTA13, ALPHA_IDEAL, MOD3),
    ]
    for label, target, ideal, modulus in negatives:
        over_z = membership(target, ideal) is not None
        mod_refutes = not member_mod_p(target, ideal, modulus)
        # a modular refutation is sound for the integers
        if mod_refutes and over_z:
            verdict.integrity = "error: modular refutation contradicts Z verdict"
        verdict.rows.append(
            Row(
                label=f"{label} (refuted mod {modulus}: {mod_refutes})",
                value=str(target),
                target=ideal.name,
                member=over_z,
                expected_negative=True,
            )
        )
    verdict.seconds = time.perf_counter() - start
    return verdict


HODGE_RELATIONS = [
    parse_poly("9*c1", C),
    parse_poly("6*c1^2 + 24*c2", C),
    parse_poly("c1*c2 - 28*c3", C),
    parse_poly("c1^3 + 28*c3", C),
]


def scenario_presentation(mapper=map) -> Verdict:
    start = time.perf_counter()
    verdict = Verdict("presentation")
    c1 = SparsePoly.variable(C, "c1")
    substituted = IdealBasis(
        [g.substitute_h(c1) for g in ALPHA_DELTA_IDEAL.gens], "substituted-ideal"
    )
    hodge = IdealBasis(HODGE_RELATIONS, "hodge-ideal")
    for g in substituted.gens:
        verdict.rows.append(
            _membership_row(f"({g}) in hodge-ideal", g, hodge)
        )
    for g in hodge.gens:
        verdict.rows.append(
            _membership_row(f"({g}) in substituted-ideal", g, substituted)
        )
    verdict.seconds = time.perf_counter() - start
    return verdict


def scenario_strata(mapper=map) -> Verdict:
    start = time.perf_counter()
    verdict = Verdict("strata")
    partitions = weighted_partitions(4)
    expected = dict(STRATA_D4)
    verdict.rows.append(
        Row(
            label="11 weighted partitions of 4",
            value=str(len(partitions)),
            target="digraph",
            member=len(partitions) == 11 and len(set(partitions)) == 11,
        )
    )
    for wp in partitions:
        label = "Z_irr" if wp.mu == (4,) else wp.label()
        shown = 1 if label == "Z_irr" else codim(wp, 4)
        verdict.rows.append(
            Row(
                label=f"codim {label}",
                value=str(shown),
                target="digraph",
                member=expected.get(label) == shown,
            )
        )
    edge_ok = (
        len(STRATA_D4_EDGES) == 14
        and all(a in expected and b in expected for a, b in STRATA_D4_EDGES)
        and all(expected[a] < expected[b] for a, b in STRATA_D4_EDGES)
    )
    verdict.rows.append(
        Row(
            label="closure digraph edges consistent",
            value=f"{len(STRATA_D4_EDGES)} edges",
            target="digraph",
            member=edge_ok,
        )
    )
    verdict.seconds = time.perf_counter() - start
    return verdict


SCENARIOS = {
    "alpha": scenario_alpha,
    "independence": scenario_independence,
    "presentation": scenario_presentation,
    "square": scenario_square,
    "line-cubic": scenario_line_cubic,
    "hilb2w2": scenario_hilb2w2,
    "binodal": scenario_binodal,
    "trinodal": scenario_trinodal,
    "strata": scenario_strata,
}

RUN_ORDER = list(SCENARIOS)

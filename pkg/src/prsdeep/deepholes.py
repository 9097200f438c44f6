"""
Deep holes of PRS(k): the three closed-form families, exhaustive
enumeration over projective syndromes, and the classification at k = q-3.

Family A  the words (alpha^k ..., a), syndrome (0 : ... : 0 : 1 : -a)
Family B  1/(alpha_l - alpha_i) off position i, a at position i
Family C  (alpha + a)/p(alpha) or 1/p(alpha), p monic irreducible quadratic

All three are deep holes only when rho(PRS(k)) = q - k, and they exhaust
the deep holes when k = q - 3.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb

from .errors import BoundExceededError, ClassificationError
from .gf import INF, Field, Poly, monic_irreducible_quadratics, quadratic_extension
from .linalg import (
    DEFAULT_MAX_POINTS,
    enumerate_projective_points,
    min_support_combination,
    normalize,
    point_index,
    span_levels,
)
from .pgl2 import is_stable, orbit_decomposition
from .prscode import (
    PRSCode,
    c_prime_vector,
    c_vector,
    covering_radius,
    error_distance,
    known_covering_radius,
    make_code,
    syndrome,
    syndrome_to_genpoly,
)

CONDITIONAL = "conditional on the covering-radius conjecture"


@dataclass
class DeepHoleClass:
    q: int
    k: int
    syndrome: tuple
    genpoly: Poly
    family: str = "unclassified"
    params: tuple = ()
    word: tuple | None = None
    orbit: int | None = None
    status: str = "verified"

    @property
    def key(self):
        return self.syndrome


def conjectured_covering_radius(q: int, k: int) -> int:
    known = known_covering_radius(q, k)
    if known is not None:
        return known
    if q % 2 == 0 and k in (2, q - 2):
        return q - k + 1
    return q - k


def _resolve_rho(code: PRSCode, rho, max_points):
    """(rho, status): computed when feasible, otherwise the conjectured value."""
    if rho is not None:
        return rho, "verified"
    try:
        return covering_radius(code, max_points=max_points), "verified"
    except BoundExceededError:
        return conjectured_covering_radius(code.q, code.k), CONDITIONAL


def _family_preconditions(code: PRSCode, rho, max_points):
    q, k = code.q, code.k
    if not 2 <= k <= q - 3:
        raise ValueError(f"deep-hole families need 2 <= k <= q-3, got k={k}, q={q}")
    rho, status = _resolve_rho(code, rho, max_points)
    if rho != q - k:
        raise ValueError(f"covering radius of {code} is {rho}, not q-k = {q - k}; family words are not deep holes")
    return status


def is_deep_hole_syndrome(code: PRSCode, s, rho: int) -> bool:
    """Deep-hole test: s is not a combination of rho-1 parity-check columns."""
    return min_support_combination(s, code.H, rho - 1) is None


def _finish(code, s_direct, s_closed, family, params, word, status, verify):
    F = code.field
    s = normalize(F, s_direct)
    if normalize(F, s_closed) != s:
        raise ClassificationError(
            f"family {family}{params}: closed-form syndrome {s_closed} disagrees with matrix syndrome {s_direct}")
    if verify and status == "verified" and error_distance(code, word) != code.q - code.k:
        raise ClassificationError(f"family {family}{params}: word is not at distance q-k")
    return DeepHoleClass(code.q, code.k, s, syndrome_to_genpoly(code, s), family, params, word, status=status)


def family_a(code: PRSCode, a: int, rho=None, verify=True, max_points=DEFAULT_MAX_POINTS) -> DeepHoleClass:
    """The class of (alpha_1^k, ..., alpha_q^k, a)."""
    status = _family_preconditions(code, rho, max_points)
    F, q, k = code.field, code.q, code.k
    a = F.check(a)
    word = tuple(F.pow(x, k) for x in range(q)) + (a,)
    closed = (0,) * (q - k - 1) + (1, F.neg(a))
    dh = _finish(code, syndrome(code, word), closed, "A", (a,), word, status, verify)
    expected = Poly(F, [0] * (k - 1) + [F.neg(a), 1])
    if dh.genpoly != expected:
        raise ClassificationError(f"family A({a}): generating polynomial {dh.genpoly} != {expected}")
    return dh


def family_b_syndrome(code: PRSCode, i: int, a: int) -> tuple:
    """a c(alpha_i) - c'(alpha_i) in dimension q+1-k (unnormalised)."""
    F, m = code.field, code.redundancy
    alpha = code.points[i - 1]
    c = c_vector(m, alpha, F)
    dc = c_prime_vector(m, alpha, F)
    return tuple(F.sub(F.mul(a, x), y) for x, y in zip(c, dc))


def family_b(code: PRSCode, i: int, a: int, rho=None, verify=True, max_points=DEFAULT_MAX_POINTS) -> DeepHoleClass:
    """The class of u(i, a): 1/(alpha_l - alpha_i) off position i, a at i, 0 at infinity (i is 1-based)."""
    status = _family_preconditions(code, rho, max_points)
    F, q = code.field, code.q
    if not 1 <= i <= q:
        raise ValueError(f"position {i} outside 1..{q}")
    a = F.check(a)
    ai = code.points[i - 1]
    word = tuple(a if l == ai else F.inv(F.sub(l, ai)) for l in range(q)) + (0,)
    return _finish(code, syndrome(code, word), family_b_syndrome(code, i, a), "B", (i, a), word, status, verify)


def family_c_syndrome(code: PRSCode, a, poly: Poly) -> tuple:
    """
    mu_a c(mu) + sigma(mu_a c(mu)) evaluated in GF(q^2) and read back in F_q,
    mu the designated root of poly and mu_a = mu + a (or 1 when a = inf).
    """
    ext = quadratic_extension(code.field)
    E = ext.E
    mu = ext.designated_root(poly)
    mu_a = 1 if a is INF else E.add(mu, ext.embed(a))
    v = [E.mul(mu_a, x) for x in c_vector(code.redundancy, mu, E)]
    out = tuple(E.add(x, ext.frobenius(x)) for x in v)
    if not all(ext.is_rational(x) for x in out):
        raise ClassificationError(f"family C({a}, {poly}): syndrome is not F_q-rational")
    return tuple(ext.project(x) for x in out)


def family_c(code: PRSCode, a, poly: Poly, rho=None, verify=True, max_points=DEFAULT_MAX_POINTS) -> DeepHoleClass:
    """The class of ((alpha + a)/p(alpha), ..., 0), or (1/p(alpha), ..., 0) for a = inf."""
    status = _family_preconditions(code, rho, max_points)
    F, q = code.field, code.q
    if poly.field is not F or poly.degree != 2 or not poly.is_monic():
        raise ValueError(f"{poly} is not a monic quadratic over {F}")
    if any(poly(x) == 0 for x in range(q)):
        raise ValueError(f"{poly} is reducible over {F}")
    if a is not INF:
        a = F.check(a)
    word = tuple(
        F.div(1 if a is INF else F.add(x, a), poly(x)) for x in range(q)
    ) + (0,)
    closed = family_c_syndrome(code, a, poly)
    return _finish(code, syndrome(code, word), closed, "C", (a, poly), word, status, verify)


def family_parameters(code: PRSCode):
    """Yield (family, params) for every member of A, B and C in canonical order."""
    q = code.q
    for a in range(q):
        yield "A", (a,)
    for i in range(1, q + 1):
        for a in range(q):
            yield "B", (i, a)
    for poly in monic_irreducible_quadratics(code.field):
        for a in list(range(q)) + [INF]:
            yield "C", (a, poly)


_BUILDERS = {"A": family_a, "B": family_b, "C": family_c}


def build_family(code: PRSCode, family: str, rho=None, verify=True, max_points=DEFAULT_MAX_POINTS) -> list:
    if family not in _BUILDERS:
        raise ValueError(f"unknown family {family!r}")
    rho, status = _resolve_rho(code, rho, max_points)
    out = []
    for fam, params in family_parameters(code):
        if fam == family:
            out.append(_BUILDERS[fam](code, *params, rho=rho, verify=verify, max_points=max_points))
    if status != "verified":
        for dh in out:
            dh.status = status
    return out


def build_families(code: PRSCode, rho=None, verify=True, max_points=DEFAULT_MAX_POINTS) -> dict:
    return {f: build_family(code, f, rho, verify, max_points) for f in "ABC"}


def _family_tags(code: PRSCode) -> dict:
    """Closed-form syndrome -> (family, params), no deep-hole checks."""
    F = code.field
    tags = {}
    for fam, params in family_parameters(code):
        if fam == "A":
            s = (0,) * (code.redundancy - 2) + (1, F.neg(params[0]))
        elif fam == "B":
            s = normalize(F, family_b_syndrome(code, *params))
        else:
            s = normalize(F, family_c_syndrome(code, *params))
        tags.setdefault(s, (fam, params))
    return tags


def _subset_chunk(args):
    code, chunk, rho = args
    return [p for p in chunk if is_deep_hole_syndrome(code, p, rho)]


def enumerate_deep_holes(code: PRSCode, rho=None, method: str = "levels", tag: bool = True,
                         orbits: bool = False, workers: int = 1,
                         max_points: int = DEFAULT_MAX_POINTS) -> list[DeepHoleClass]:
    """
    Every deep-hole class of the code, in lexicographic order of projective
    syndromes.  ``method="levels"`` reads least column supports off a
    breadth-first sweep of the syndrome space; ``method="subsets"`` runs the
    column-subset search point by point (slow, independent route), split
    over ``workers`` processes.
    """
    if code.H is None:
        raise ValueError("PRS(q+1) has no non-codewords")
    F, q, m = code.field, code.q, code.redundancy
    points = enumerate_projective_points(F, m - 1, max_points)
    if method == "levels":
        if rho is None:
            levels = span_levels(code.H, max_points=max_points)
            rho = max(int(levels[point_index(p, q)]) for p in points)
            deep = [p for p in points if levels[point_index(p, q)] == rho]
        else:
            levels = span_levels(code.H, jmax=rho - 1, max_points=max_points)
            deep = [p for p in points if levels[point_index(p, q)] == -1]
    elif method == "subsets":
        if rho is None:
            rho = covering_radius(code, max_points=max_points)
        if workers > 1:
            step = -(-len(points) // (4 * workers))
            chunks = [(code, points[i:i + step], rho) for i in range(0, len(points), step)]
            with ProcessPoolExecutor(max_workers=workers) as pool:
                deep = [p for part in pool.map(_subset_chunk, chunks) for p in part]
        else:
            deep = _subset_chunk((code, points, rho))
    else:
        raise ValueError(f"unknown method {method!r}")

    tags = _family_tags(code) if tag and 2 <= code.k <= q - 3 and rho == q - code.k else {}
    out = []
    for s in deep:
        fam, params = tags.get(s, ("unclassified", ()))
        out.append(DeepHoleClass(q, code.k, s, syndrome_to_genpoly(code, s), fam, params))
    if orbits:
        label_orbits(F, out)
    return out


def label_orbits(F: Field, classes: list[DeepHoleClass]) -> list[list]:
    """Assign PGL_2 orbit labels (0, 1, ... by least member) in place."""
    orbs = orbit_decomposition(F, [c.syndrome for c in classes])
    label = {s: i for i, orb in enumerate(orbs) for s in orb}
    for c in classes:
        c.orbit = label[c.syndrome]
    return orbs


def expected_count_q_minus_3(q: int) -> int:
    """(1+q+q^2+q^3) - (q+1) - C(q+1, 2)(q-1) = (q^3 + 2q^2 + q)/2."""
    return (1 + q + q * q + q ** 3) - (1 + q) - comb(q + 1, 2) * (q - 1)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ClassificationReport:
    q: int
    k: int
    rho: int
    counts: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    classes: list = field(default_factory=list)
    orbits: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name, passed, detail=""):
        self.checks.append(Check(name, bool(passed), detail))

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]


def classify_q_minus_3(F: Field, max_points: int = DEFAULT_MAX_POINTS) -> ClassificationReport:
    """
    Build families A, B, C for PRS(q-3), enumerate all deep holes and compare.
    The report is returned even when checks fail; inspect ``report.passed``.
    """
    q = F.q
    if q < 5:
        raise ValueError("the k = q-3 classification needs q >= 5")
    k = q - 3
    code = make_code(F, k)
    report = ClassificationReport(q, k, rho=covering_radius(code, max_points=max_points))
    report.check("covering radius is q-k = 3", report.rho == 3, f"rho = {report.rho}")
    if report.rho != 3:
        return report

    fams = build_families(code, rho=3, verify=False, max_points=max_points)
    sets = {f: {c.syndrome for c in fams[f]} for f in "ABC"}
    expect = {"A": q, "B": q * q, "C": (q + 1) * q * (q - 1) // 2}
    for f in "ABC":
        report.counts[f] = len(fams[f])
        report.check(f"family {f} has {expect[f]} distinct classes", len(sets[f]) == expect[f] == len(fams[f]),
                     f"{len(sets[f])} distinct of {len(fams[f])}")
    for f, g in (("A", "B"), ("A", "C"), ("B", "C")):
        report.check(f"families {f} and {g} are disjoint", not (sets[f] & sets[g]),
                     f"{len(sets[f] & sets[g])} shared")

    classes = enumerate_deep_holes(code, rho=3, tag=True, max_points=max_points)
    enumerated = {c.syndrome for c in classes}
    union = sets["A"] | sets["B"] | sets["C"]
    formula = expected_count_q_minus_3(q)
    report.counts["enumerated"] = len(enumerated)
    report.counts["formula"] = formula
    report.check("enumerated count matches (q^3+2q^2+q)/2",
                 len(enumerated) == formula == (q ** 3 + 2 * q * q + q) // 2,
                 f"{len(enumerated)} vs {formula}")
    report.check("A u B u C equals the enumerated deep holes", union == enumerated,
                 f"{len(union - enumerated)} extra, {len(enumerated - union)} missing")
    report.check("every enumerated class carries a family tag",
                 all(c.family in "ABC" for c in classes))

    # PGL_2 structure
    ab = sorted(sets["A"] | sets["B"])
    try:
        ab_orbits = orbit_decomposition(F, ab)
    except ValueError:
        ab_orbits = []
    sizes = sorted(len(o) for o in ab_orbits)
    if k % F.p:
        want = [q * q + q]
    else:
        want = sorted([q + 1, q * q - 1])
    report.check("A u B splits into the predicted PGL_2 orbits", sizes == want, f"sizes {sizes}, expected {want}")
    report.check("family C is PGL_2-stable", is_stable(F, sets["C"]))

    orbs = label_orbits(F, classes)
    for i, orb in enumerate(orbs):
        members = {c.family for c in classes if c.orbit == i}
        report.orbits.append({"label": i, "size": len(orb), "representative": orb[0],
                              "families": sorted(members)})
    report.classes = classes
    return report


def classify_q_minus_2(F: Field, max_points: int = DEFAULT_MAX_POINTS) -> ClassificationReport:
    """Deep holes of PRS(q-2): all q^2 off-curve points (q odd) or just (0:1:0) (q even)."""
    q = F.q
    if q < 3:
        raise ValueError("k = q-2 needs q >= 3")
    k = q - 2
    code = make_code(F, k)
    rho = covering_radius(code, max_points=max_points)
    report = ClassificationReport(q, k, rho=rho)
    classes = enumerate_deep_holes(code, max_points=max_points)
    found = {c.syndrome for c in classes}
    report.counts["enumerated"] = len(found)
    if q % 2:
        curve = {normalize(F, c_vector(3, t, F)) for t in code.points}
        expected = set(enumerate_projective_points(F, 2)) - curve
        report.check("covering radius is 2", rho == 2, f"rho = {rho}")
        report.check("q^2 classes, exactly the points off the conic", found == expected and len(found) == q * q,
                     f"{len(found)} found")
    else:
        report.check("covering radius is 3", rho == 3, f"rho = {rho}")
        report.check("single class (0:1:0)", found == {(0, 1, 0)}, f"{sorted(found)[:5]}")
    report.classes = classes
    return report


# -- geometry of the families

@dataclass
class GeometryReport:
    q: int
    k: int
    tangent_lines: dict = field(default_factory=dict)
    secant_points: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _line_points(F: Field, u, v) -> set:
    """The q+1 points of the projective line through independent u and v."""
    pts = {normalize(F, v)}
    for x in range(F.q):
        pts.add(normalize(F, tuple(F.add(a, F.mul(x, b)) for a, b in zip(u, v))))
    return pts


def tangent_line(F: Field, m: int, t) -> set:
    """Points of the tangent line to the normal rational curve in P^(m-1) at c_m(t)."""
    c = c_vector(m, t, F)
    if t is INF:
        direction = (0,) * (m - 2) + (1, 0)
    else:
        direction = c_prime_vector(m, t, F)
    return _line_points(F, direction, c)


def conjugate_secant_rational_points(F: Field, m: int, poly: Poly) -> set:
    """F_q-rational points on the line through c_m(mu) and c_m(mu^q) over GF(q^2)."""
    ext = quadratic_extension(F)
    E = ext.E
    mu = ext.designated_root(poly)
    p1 = c_vector(m, mu, E)
    p2 = c_vector(m, ext.frobenius(mu), E)
    out = set()
    candidates = [p2] + [tuple(E.add(x, E.mul(y, z)) for x, z in zip(p1, p2)) for y in range(E.q)]
    for v in candidates:
        w = normalize(E, v)
        if all(ext.is_rational(x) for x in w):
            out.add(w)
    return out


def tangent_secant_geometry(F: Field, k: int) -> GeometryReport:
    q = F.q
    if not 2 <= k <= q - 3:
        raise ValueError(f"need 2 <= k <= q-3, got k={k}")
    m = q + 1 - k
    code = make_code(F, k, check=False)
    rep = GeometryReport(q, k)
    curve = {normalize(F, c_vector(m, t, F)) for t in code.points}
    for t in code.points:
        rep.tangent_lines[t] = tangent_line(F, m, t)
    lines = list(rep.tangent_lines.values())
    disjoint = all(not (lines[i] & lines[j]) for i in range(len(lines)) for j in range(i + 1, len(lines)))
    rep.checks.append(Check("tangent lines are pairwise disjoint", disjoint))
    rep.checks.append(Check("each tangent line has q+1 points", all(len(L) == q + 1 for L in lines)))
    off_curve = set().union(*lines) - curve
    tags = _family_tags(code)
    ab = {s for s, (f, _) in tags.items() if f in "AB"}
    c_set = {s for s, (f, _) in tags.items() if f == "C"}
    rep.checks.append(Check("off-curve tangent points are the A u B syndromes", off_curve == ab,
                            f"{len(off_curve)} tangent points, {len(ab)} family syndromes"))
    secant = set()
    for poly in monic_irreducible_quadratics(F):
        pts = conjugate_secant_rational_points(F, m, poly)
        rep.secant_points[poly.coeffs] = pts
        secant |= pts
    rep.checks.append(Check("each conjugate secant carries q+1 rational points",
                            all(len(p) == q + 1 for p in rep.secant_points.values())))
    rep.checks.append(Check("conjugate-secant rational points are the C syndromes", secant == c_set,
                            f"{len(secant)} secant points, {len(c_set)} family syndromes"))
    return rep


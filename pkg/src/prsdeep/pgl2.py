"""
The PGL_2(F_q) action on F_q U {inf}, on the normal rational curve, and on
projective syndromes of PRS codes.

A Mobius map is stored as (a, b, c, d) acting by t -> (c + d t) / (a + b t),
i.e. the matrix [[a, b], [c, d]] applied to the column (1, t).  The m x m
representation g_m has (i, j) entry equal to the coefficient of X^(j-1) in
(a + bX)^(m-i) (c + dX)^(i-1), so that g_m c_m(t) ~ c_m(g(t)).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .errors import ClassificationError
from .gf import INF, Field, Poly
from .linalg import Matrix, normalize
from .prscode import evaluation_points, generator_matrix


class Mobius:
    """Class of an invertible 2x2 matrix modulo scalars, in canonical form."""

    __slots__ = ("field", "a", "b", "c", "d")

    def __init__(self, field: Field, a: int, b: int, c: int, d: int):
        F = field
        entries = [F.check(x) for x in (a, b, c, d)]
        if F.sub(F.mul(entries[0], entries[3]), F.mul(entries[1], entries[2])) == 0:
            raise ValueError(f"singular matrix {entries}")
        lead = next(x for x in entries if x)
        inv = F.inv(lead)
        self.field = field
        self.a, self.b, self.c, self.d = (F.mul(inv, x) for x in entries)

    @property
    def entries(self) -> tuple:
        return self.a, self.b, self.c, self.d

    def __eq__(self, other):
        return isinstance(other, Mobius) and self.field is other.field and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __lt__(self, other):
        return self.entries < other.entries

    def __repr__(self):
        return f"Mobius{self.entries}"

    def __call__(self, t):
        F = self.field
        a, b, c, d = self.entries
        if t is INF:
            return INF if b == 0 else F.div(d, b)
        den = F.add(a, F.mul(b, t))
        if den == 0:
            return INF
        return F.div(F.add(c, F.mul(d, t)), den)

    def __mul__(self, other: Mobius) -> Mobius:
        """Composition: (g * h)(t) = g(h(t))."""
        F = self.field
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return Mobius(
            F,
            F.add(F.mul(a, e), F.mul(b, g)), F.add(F.mul(a, f), F.mul(b, h)),
            F.add(F.mul(c, e), F.mul(d, g)), F.add(F.mul(c, f), F.mul(d, h)),
        )

    def inverse(self) -> Mobius:
        F = self.field
        a, b, c, d = self.entries
        return Mobius(F, d, F.neg(b), F.neg(c), a)


def identity(F: Field) -> Mobius:
    return Mobius(F, 1, 0, 0, 1)


def translation(F: Field, c: int) -> Mobius:
    """t -> t + c."""
    return Mobius(F, 1, 0, c, 1)


def scaling(F: Field, d: int) -> Mobius:
    """t -> d t."""
    return Mobius(F, 1, 0, 0, d)


def reciprocal(F: Field) -> Mobius:
    """t -> 1 / t."""
    return Mobius(F, 0, 1, 1, 0)


def affine(F: Field, d: int, c: int) -> Mobius:
    """t -> d t + c."""
    return Mobius(F, 1, 0, c, d)


def mobius_apply(g: Mobius, t):
    return g(t)


@lru_cache(maxsize=None)
def group_elements(F: Field) -> tuple:
    """All q(q^2-1) elements of PGL_2(F_q), ascending by canonical (a, b, c, d)."""
    out = []
    for e in product(range(F.q), repeat=4):
        lead = next((x for x in e if x), 0)
        if lead != 1:
            continue
        a, b, c, d = e
        if F.sub(F.mul(a, d), F.mul(b, c)):
            out.append(Mobius(F, *e))
    return tuple(out)


def generators(F: Field) -> list[Mobius]:
    """Translations, one primitive scaling and the reciprocal; these generate PGL_2."""
    gens = [translation(F, c) for c in range(1, F.q)]
    if F.q > 2:
        prim = next(x for x in range(2, F.q) if F.order_of(x) == F.q - 1)
        gens.append(scaling(F, prim))
    gens.append(reciprocal(F))
    return gens


def _max_dim(F):
    return F.q + 1


@lru_cache(maxsize=None)
def _rep_rows(g: Mobius, m: int) -> tuple:
    F = g.field
    left = Poly(F, [g.a, g.b])
    right = Poly(F, [g.c, g.d])
    one = Poly(F, [1])
    lpow = [one]
    rpow = [one]
    for _ in range(m - 1):
        lpow.append(lpow[-1] * left)
        rpow.append(rpow[-1] * right)
    rows = []
    for i in range(1, m + 1):
        poly = lpow[m - i] * rpow[i - 1]
        rows.append(tuple(poly.coeff(j) for j in range(m)))
    return tuple(rows)


def rep_matrix(g: Mobius, m: int) -> Matrix:
    """The m x m matrix g_m, for 2 <= m <= q+1."""
    if not 2 <= m <= _max_dim(g.field):
        raise ValueError(f"representation dimension {m} outside 2..{_max_dim(g.field)}")
    return Matrix(g.field, _rep_rows(g, m))


def apply_rep(g: Mobius, v) -> tuple:
    """g_m v for a vector v of length m (no normalisation)."""
    F = g.field
    rows = _rep_rows(g, len(v))
    out = []
    for r in rows:
        s = 0
        for x, y in zip(r, v):
            if x and y:
                s = F.add(s, F.mul(x, y))
        out.append(s)
    return tuple(out)


def act_on_syndrome(g: Mobius, s) -> tuple:
    """The projective point g_m s, m = len(s), in leading-one form."""
    m = len(s)
    if not 2 <= m <= _max_dim(g.field):
        raise ValueError(f"representation dimension {m} outside 2..{_max_dim(g.field)}")
    return normalize(g.field, apply_rep(g, s))


@dataclass
class MonomialAut:
    """B_m(g) = Pi(g) Delta_m(g); perm[j] is the index of g(alpha_j)."""

    field: Field
    perm: list
    diag: list

    def permutation_matrix(self) -> Matrix:
        n = len(self.perm)
        return Matrix(self.field, [[int(self.perm[j] == i) for j in range(n)] for i in range(n)])

    def delta_matrix(self) -> Matrix:
        return Matrix.diagonal(self.field, self.diag)

    def matrix(self) -> Matrix:
        return self.permutation_matrix() @ self.delta_matrix()


def monomial_automorphism(g: Mobius, m: int, verify: bool = True) -> MonomialAut:
    """
    The monomial matrix B_m(g) with g_m G_m = G_m B_m(g).  The diagonal is
    (a + b t)^(m-1) at ordinary points, (c - d a/b)^(m-1) at the pole -a/b,
    and b^(m-1) or d^(m-1) at infinity according as b != 0 or b = 0.
    """
    F = g.field
    if not 2 <= m <= F.q:
        raise ValueError(f"dimension {m} outside 2..{F.q}")
    a, b, c, d = g.entries
    pts = evaluation_points(F)
    where = {t: i for i, t in enumerate(pts)}
    perm = [where[g(t)] for t in pts]
    diag = []
    for t in pts:
        if t is INF:
            diag.append(F.pow(b if b else d, m - 1))
        elif F.add(a, F.mul(b, t)) == 0:
            diag.append(F.pow(F.sub(c, F.mul(d, F.div(a, b))), m - 1))
        else:
            diag.append(F.pow(F.add(a, F.mul(b, t)), m - 1))
    aut = MonomialAut(F, perm, diag)
    if verify:
        G = generator_matrix(F, m)
        if rep_matrix(g, m) @ G != G @ aut.matrix():
            raise ClassificationError(f"g_m G_m != G_m B_m(g) for {g}, m={m}")
    return aut


def dual_automorphism_identity(g: Mobius, k: int) -> bool:
    """Check B_(q+1-k)(g) == B_k(g)^(-T)."""
    q = g.field.q
    Bk = monomial_automorphism(g, k).matrix()
    Bd = monomial_automorphism(g, q + 1 - k).matrix()
    return Bd == Bk.inverse().T


def n_point(m: int) -> tuple:
    """N_m = (0 : ... : 0 : 1 : 0) in P^(m-1)."""
    if m < 3:
        raise ValueError("N_m is defined for m >= 3")
    return (0,) * (m - 2) + (1, 0)


@dataclass
class Orbit:
    points: list
    stabilizer: list

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def stabilizer_order(self) -> int:
        return len(self.stabilizer)


def orbit(F: Field, s) -> Orbit:
    """Full PGL_2(F_q) orbit of the projective point s and its stabilizer."""
    s = normalize(F, s)
    pts = set()
    stab = []
    for g in group_elements(F):
        t = act_on_syndrome(g, s)
        pts.add(t)
        if t == s:
            stab.append(g)
    return Orbit(sorted(pts), stab)


def is_stable(F: Field, points) -> bool:
    """Whether a set of projective points is mapped into itself by PGL_2."""
    pts = set(points)
    return all(act_on_syndrome(g, s) in pts for g in generators(F) for s in pts)


def orbit_decomposition(F: Field, points) -> list[list]:
    """Split a PGL_2-stable set into orbits, each sorted, ordered by least member."""
    remaining = set(points)
    orbits = []
    while remaining:
        s = min(remaining)
        orb = orbit(F, s).points
        if not remaining.issuperset(orb):
            raise ValueError("point set is not PGL_2-stable")
        remaining.difference_update(orb)
        orbits.append(orb)
    return orbits

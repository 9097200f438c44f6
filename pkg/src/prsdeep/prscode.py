"""
Projective Reed-Solomon codes PRS(k) over F_q.

The evaluation set is alpha_1, ..., alpha_q (field elements in encoding
order) followed by infinity.  G_m = [c_m(alpha_1) | ... | c_m(inf)] generates
PRS(m), and G_{q+1-k} is a parity-check matrix for PRS(k).
"""

from __future__ import annotations

from functools import cached_property
from math import comb

import numpy as np

from .errors import BoundExceededError, ClassificationError
from .gf import INF, Field, Poly
from .linalg import (
    DEFAULT_MAX_POINTS,
    Matrix,
    _indices_to_rows,
    all_minors_nonzero,
    enumerate_projective_points,
    min_support_combination,
    normalize,
    normalized_indices,
    nullspace,
    point_index,
    span_levels,
)

DEFAULT_MAX_CODEWORDS = 10 ** 6
# make_code checks the MDS property only while C(q+1, k) stays below this
MDS_CHECK_LIMIT = 200_000


def c_vector(m: int, alpha, F: Field) -> tuple:
    """(1, a, ..., a^(m-1)) for finite a, (0, ..., 0, 1) for a = inf."""
    if m < 1:
        raise ValueError("m must be positive")
    if m == 1:
        return (1,)
    if alpha is INF:
        return (0,) * (m - 1) + (1,)
    out = [1]
    for _ in range(m - 1):
        out.append(F.mul(out[-1], alpha))
    return tuple(out)


def c_prime_vector(m: int, alpha, F: Field) -> tuple:
    """Formal derivative of c_m at a finite point: (0, 1, 2a, ..., (m-1) a^(m-2))."""
    if alpha is INF:
        raise ValueError("the derivative vector is only defined at finite points")
    c = c_vector(m, alpha, F)
    return (0,) + tuple(F.mul_int(i, c[i - 1]) for i in range(1, m))


def evaluation_points(F: Field) -> list:
    return list(range(F.q)) + [INF]


def generator_matrix(F: Field, m: int) -> Matrix:
    return Matrix.from_columns(F, [c_vector(m, a, F) for a in evaluation_points(F)])


class PRSCode:
    """PRS(k) over `field`, 1 <= k <= q+1."""

    def __init__(self, field: Field, k: int, check: bool = True):
        q = field.q
        if not 1 <= k <= q + 1:
            raise ValueError(f"dimension k={k} outside 1..{q + 1}")
        self.field = field
        self.q = q
        self.k = k
        self.n = q + 1
        self.points = evaluation_points(field)
        self.G = generator_matrix(field, k)
        self.H = generator_matrix(field, q + 1 - k) if k <= q else None
        if check:
            self.validate()

    def __repr__(self):
        return f"PRSCode(q={self.q}, k={self.k})"

    @property
    def redundancy(self) -> int:
        return self.n - self.k

    def validate(self, mds: bool | None = None):
        if self.H is not None and not (self.G @ self.H.T).is_zero():
            raise ClassificationError(f"{self}: G_k G_(q+1-k)^T is not zero")
        if mds is None:
            mds = comb(self.n, self.k) <= MDS_CHECK_LIMIT
        if mds and not all_minors_nonzero(self.G, self.k):
            raise ClassificationError(f"{self}: generator matrix has a vanishing maximal minor")

    @cached_property
    def covering_radius(self) -> int:
        return covering_radius(self)

    @cached_property
    def span_levels(self) -> np.ndarray:
        """Least number of parity-check columns spanning each projective syndrome."""
        if self.H is None:
            raise ValueError("PRS(q+1) has no syndromes")
        return span_levels(self.H)

    def codewords(self, max_codewords: int = DEFAULT_MAX_CODEWORDS) -> np.ndarray:
        if self.q ** self.k > max_codewords:
            raise BoundExceededError(f"{self} has {self.q}^{self.k} codewords, bound is {max_codewords}")
        if getattr(self, "_codewords", None) is None:
            F = self.field
            msgs = _indices_to_rows(np.arange(self.q ** self.k), self.q, self.k)
            G = self.G.to_numpy()
            words = np.zeros((len(msgs), self.n), dtype=np.int64)
            for i in range(self.k):
                words = F.add_table[words, F.mul_table[msgs[:, i][:, None], G[i][None, :]]]
            self._codewords = words
        return self._codewords


def make_code(F: Field, k: int, check: bool = True) -> PRSCode:
    return PRSCode(F, k, check=check)


def _coeffs(code, f):
    if isinstance(f, Poly):
        if f.field is not code.field:
            raise ValueError("polynomial over a different field")
        return list(f.coeffs)
    return [code.field.check(int(c)) for c in f]


def encode(code: PRSCode, f) -> tuple:
    """Evaluate a message polynomial (Poly or low-first coefficients) on F_q U {inf}."""
    coeffs = _coeffs(code, f)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) > code.k:
        raise ValueError(f"message degree {len(coeffs) - 1} exceeds k-1 = {code.k - 1}")
    F = code.field
    poly = Poly(F, coeffs)
    return tuple(poly(a) for a in range(code.q)) + (poly.coeff(code.k - 1),)


def _check_word(code, u):
    if len(u) != code.n:
        raise ValueError(f"word length {len(u)} != q+1 = {code.n}")
    return tuple(code.field.check(int(x)) for x in u)


def syndrome(code: PRSCode, u) -> tuple:
    if code.H is None:
        raise ValueError("PRS(q+1) is the full space and has no parity check")
    return code.H.apply(_check_word(code, u))


def is_genpoly(code: PRSCode, g: Poly) -> bool:
    return (
        g.field is code.field
        and g.is_monic()
        and g.degree <= code.q - 1
        and all(g.coeff(i) == 0 for i in range(code.k - 1))
    )


def genpoly_to_syndrome(code: PRSCode, g: Poly) -> tuple:
    """
    Projective syndrome (a_1 : ... : a_(q-k+1)) of the class generated by
    g = sum a_i X^(q-i).  Monicity makes the tuple already leading-one.
    """
    if not is_genpoly(code, g):
        raise ValueError(f"{g} is not a generating polynomial for {code}")
    return tuple(g.coeff(code.q - i) for i in range(1, code.q - code.k + 2))


def syndrome_to_genpoly(code: PRSCode, s) -> Poly:
    s = normalize(code.field, s)
    if len(s) != code.redundancy:
        raise ValueError(f"syndrome length {len(s)} != q+1-k = {code.redundancy}")
    coeffs = [0] * code.q
    for i, a in enumerate(s, start=1):
        coeffs[code.q - i] = a
    return Poly(code.field, coeffs)


def genpoly_word(code: PRSCode, g: Poly) -> tuple:
    """The word (g(alpha_1), ..., g(alpha_q), 0) of a generating polynomial."""
    return tuple(g(a) for a in range(code.q)) + (0,)


def error_distance(code: PRSCode, u) -> int:
    """Distance from u to the code via the least column support of its syndrome."""
    if code.H is None:
        _check_word(code, u)
        return 0
    return min_support_combination(syndrome(code, u), code.H, code.redundancy)


def brute_force_error_distance(code: PRSCode, u, max_codewords: int = DEFAULT_MAX_CODEWORDS) -> int:
    """Minimum Hamming distance from u to every codeword, by full sweep."""
    words = code.codewords(max_codewords)
    u = np.array(_check_word(code, u))
    return int((words != u).sum(axis=1).min())


def minimum_distance(code: PRSCode, max_codewords: int = DEFAULT_MAX_CODEWORDS) -> int:
    words = code.codewords(max_codewords)
    w = (words != 0).sum(axis=1)
    return int(w[w > 0].min())


def known_covering_radius(q: int, k: int):
    """Covering radius in the settled cases k in {1, q-1, q, q+1}, else None."""
    if k == q + 1:
        return 0
    if k in (q, q - 1):
        return 1
    if k == 1:
        # repetition code of length q+1: some symbol repeats, so at most q-1 positions differ
        return q - 1
    return None


def covering_radius(code: PRSCode, method: str = "auto", max_points: int = DEFAULT_MAX_POINTS) -> int:
    """
    Largest error distance of any word.  ``method="auto"`` answers the
    settled cases directly and otherwise takes the maximum least-column
    support over all projective syndromes; ``"enumerate"`` always searches.
    """
    if method not in ("auto", "enumerate"):
        raise ValueError(f"unknown method {method!r}")
    if method == "auto":
        known = known_covering_radius(code.q, code.k)
        if known is not None:
            return known
    if code.H is None:
        return 0
    levels = span_levels(code.H, max_points=max_points)
    idx = normalized_indices(code.q, code.redundancy)
    lv = levels[idx]
    if (lv < 0).any():
        raise ClassificationError("parity-check matrix does not span the syndrome space")
    return int(lv.max())


def error_distance_table(code: PRSCode, max_points: int = DEFAULT_MAX_POINTS) -> dict:
    """Error distance of every projective syndrome, keyed by leading-one tuple."""
    levels = span_levels(code.H, max_points=max_points) if max_points != DEFAULT_MAX_POINTS \
        else code.span_levels
    return {p: int(levels[point_index(p, code.q)])
            for p in enumerate_projective_points(code.field, code.redundancy - 1, max_points)}


# -- arcs and MDS extensions

def arc_extension_witnesses(F: Field, m: int, max_points: int = DEFAULT_MAX_POINTS) -> list[tuple]:
    """
    All v (up to scaling) such that [G_m | v] generates an MDS code, i.e.
    the q+1 points of the normal rational curve in P^(m-1) plus v form an arc.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    G = generator_matrix(F, m)
    # prefilter: v must avoid the span of every m-1 columns
    levels = span_levels(G, jmax=m - 1, max_points=max_points)
    out = []
    for v in enumerate_projective_points(F, m - 1, max_points):
        if levels[point_index(v, F.q)] == -1 and all_minors_nonzero(G.hstack(v), m):
            out.append(v)
    return out


def arc_extension_exists(F: Field, m: int, max_points: int = DEFAULT_MAX_POINTS) -> bool:
    return bool(arc_extension_witnesses(F, m, max_points))


def is_mds(A: Matrix) -> bool:
    return A.nrows <= A.ncols and all_minors_nonzero(A, A.nrows)


def parity_check_matrix(A: Matrix) -> Matrix:
    return Matrix(A.field, [list(v) for v in nullspace(A)])


def _supercode_candidates(A: Matrix, max_points):
    # [A; u] has the same maximal minors as [A; a*u + xA], so u may be taken
    # zero on an information set and normalised
    F = A.field
    k, n = A.shape
    info = list(range(k))
    if not all_minors_nonzero(A.submatrix(range(k), info), k):
        raise ValueError("generator matrix is not MDS")
    for tail in enumerate_projective_points(F, n - k - 1, max_points):
        yield (0,) * k + tail


def mds_supercode_exists(A: Matrix, max_points: int = DEFAULT_MAX_POINTS) -> bool:
    """Some word u makes the stacked (k+1) x n matrix [A; u] generate an MDS code."""
    if not is_mds(A):
        raise ValueError("input code is not MDS")
    k = A.nrows
    return any(all_minors_nonzero(A.vstack(u), k + 1) for u in _supercode_candidates(A, max_points))


def mds_padded_supercode_exists(A: Matrix, max_points: int = DEFAULT_MAX_POINTS) -> bool:
    """Some word u makes [[A, 0], [u, 1]] generate an [n+1, k+1] MDS code."""
    if not is_mds(A):
        raise ValueError("input code is not MDS")
    k = A.nrows
    padded = A.hstack([0] * k)
    return any(all_minors_nonzero(padded.vstack(list(u) + [1]), k + 1)
               for u in _supercode_candidates(A, max_points))


def mds_dual_extension_exists(A: Matrix, max_points: int = DEFAULT_MAX_POINTS) -> bool:
    """Some v makes [A_perp | v] generate an [n+1, n-k] MDS code extending the dual."""
    if not is_mds(A):
        raise ValueError("input code is not MDS")
    H = parity_check_matrix(A)
    r = H.nrows
    return any(all_minors_nonzero(H.hstack(v), r)
               for v in enumerate_projective_points(A.field, r - 1, max_points))

"""
Dense linear algebra over a finite field, plus projective-space helpers.

Matrices hold int encodings.  Projective points are plain tuples in
leading-one form (first nonzero coordinate equal to 1), which makes them
hashable and gives a natural lexicographic order.
"""

from __future__ import annotations

from itertools import combinations, product

import numpy as np

from .errors import BoundExceededError
from .gf import Field

DEFAULT_MAX_POINTS = 10 ** 7
# column subsets handled per numpy batch in all_minors_nonzero
_BATCH = 1 << 15


class Matrix:
    """A rows x cols matrix over `field`, stored row-major as lists of encodings."""

    def __init__(self, field: Field, rows):
        rows = [[field.check(int(x)) for x in r] for r in rows]
        if not rows or not rows[0]:
            raise ValueError("matrix dimensions must be positive")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged rows")
        self.field = field
        self.rows = rows

    @classmethod
    def from_columns(cls, field, cols):
        cols = [list(c) for c in cols]
        return cls(field, [list(r) for r in zip(*cols)])

    @classmethod
    def identity(cls, field, n):
        return cls(field, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field, r, c):
        return cls(field, [[0] * c for _ in range(r)])

    @classmethod
    def diagonal(cls, field, diag):
        n = len(diag)
        return cls(field, [[diag[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0])

    @property
    def shape(self):
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [tuple(c) for c in zip(*self.rows)]

    @property
    def T(self) -> Matrix:
        return Matrix(self.field, [list(c) for c in zip(*self.rows)])

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.field is other.field and self.rows == other.rows

    def __repr__(self):
        body = "\n".join(" ".join(f"{x:>3}" for x in r) for r in self.rows)
        return f"Matrix({self.field}, {self.nrows}x{self.ncols})\n{body}"

    def is_zero(self):
        return all(x == 0 for r in self.rows for x in r)

    def apply(self, v) -> tuple:
        """Matrix-vector product."""
        F = self.field
        if len(v) != self.ncols:
            raise ValueError(f"vector of length {len(v)} against {self.ncols} columns")
        out = []
        for r in self.rows:
            s = 0
            for a, b in zip(r, v):
                if a and b:
                    s = F.add(s, F.mul(a, b))
            out.append(s)
        return tuple(out)

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return self.apply(other)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.columns()
        return Matrix(self.field, [[_dot(self.field, r, c) for c in cols] for r in self.rows])

    def scaled(self, c: int) -> Matrix:
        F = self.field
        return Matrix(F, [[F.mul(c, x) for x in r] for r in self.rows])

    def hstack(self, other) -> Matrix:
        if isinstance(other, Matrix):
            rows = [a + b for a, b in zip(self.rows, other.rows)]
        else:
            rows = [r + [x] for r, x in zip(self.rows, other)]
        return Matrix(self.field, rows)

    def vstack(self, other) -> Matrix:
        extra = other.rows if isinstance(other, Matrix) else [list(other)]
        return Matrix(self.field, self.rows + extra)

    def submatrix(self, rows, cols) -> Matrix:
        return Matrix(self.field, [[self.rows[i][j] for j in cols] for i in rows])

    def inverse(self) -> Matrix:
        n = self.nrows
        if n != self.ncols:
            raise ValueError("only square matrices are invertible")
        F = self.field
        aug = [r + [int(i == j) for j in range(n)] for i, r in enumerate(self.rows)]
        ech, pivots = _echelon(F, aug, ncols=n)
        if len(pivots) < n:
            raise ZeroDivisionError("singular matrix")
        return Matrix(F, [r[n:] for r in ech[:n]])

    def to_numpy(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64)


def _dot(F, u, v):
    s = 0
    for a, b in zip(u, v):
        if a and b:
            s = F.add(s, F.mul(a, b))
    return s


def _echelon(F, rows, ncols=None):
    """Reduced row echelon form of a copy of `rows` (pivoting on the first ncols columns)."""
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            f = rows[i][c]
            if i != r and f:
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(M: Matrix) -> int:
    return len(_echelon(M.field, M.rows)[1])


def det(M: Matrix) -> int:
    """Determinant by elimination."""
    F = M.field
    n = M.nrows
    if n != M.ncols:
        raise ValueError("determinant of a non-square matrix")
    rows = [list(r) for r in M.rows]
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            d = F.neg(d)
        d = F.mul(d, rows[c][c])
        inv = F.inv(rows[c][c])
        for i in range(c + 1, n):
            f = F.mul(rows[i][c], inv)
            if f:
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[c])]
    return d


def nullspace(M: Matrix) -> list[tuple]:
    """Basis of {x : M x = 0}."""
    F = M.field
    ech, pivots = _echelon(F, M.rows)
    free = [j for j in range(M.ncols) if j not in pivots]
    basis = []
    for f in free:
        x = [0] * M.ncols
        x[f] = 1
        for row, pc in zip(ech, pivots):
            x[pc] = F.neg(row[f])
        basis.append(tuple(x))
    return basis


def in_span(F: Field, vectors, v) -> bool:
    """Whether v lies in the span of the given vectors."""
    if all(x == 0 for x in v):
        return True
    if not vectors:
        return False
    rows = [list(c) for c in zip(*vectors)]
    aug = [r + [x] for r, x in zip(rows, v)]
    _, pivots = _echelon(F, aug)
    return len(vectors) not in pivots


def min_support_combination(v, M: Matrix, jmax: int):
    """
    Least j <= jmax such that v is a combination of some j columns of M,
    or None.  Column subsets are tried by increasing size, each size in
    lexicographic order.
    """
    if len(v) != M.nrows:
        raise ValueError(f"vector length {len(v)} does not match {M.nrows} rows")
    if all(x == 0 for x in v):
        return 0
    cols = M.columns()
    F = M.field
    for j in range(1, min(jmax, len(cols)) + 1):
        for subset in combinations(range(len(cols)), j):
            if in_span(F, [cols[i] for i in subset], v):
                return j
    return None


def _full_rank_batch(F: Field, stack: np.ndarray) -> np.ndarray:
    """For a (N, s, s) stack of square matrices, which ones are nonsingular."""
    add, mul, neg, inv = F.add_table, F.mul_table, F.neg_table, F.inv_table
    a = stack.copy()
    n, s, _ = a.shape
    ok = np.ones(n, dtype=bool)
    idx = np.arange(n)
    for c in range(s):
        nz = a[:, c:, c] != 0
        has = nz.any(axis=1)
        ok &= has
        piv = c + nz.argmax(axis=1)
        prow = a[idx, piv].copy()
        a[idx, piv] = a[:, c]
        a[:, c] = prow
        # normalise pivot row (rows with no pivot get inv(0)=0 and are already marked)
        pinv = inv[prow[:, c]]
        prow = mul[pinv[:, None], prow]
        a[:, c] = prow
        f = neg[a[:, c + 1:, c]]
        a[:, c + 1:] = add[a[:, c + 1:], mul[f[:, :, None], prow[:, None, :]]]
    return ok


def all_minors_nonzero(M: Matrix, s: int) -> bool:
    """Whether every s x s minor of M is nonzero."""
    if not 1 <= s <= min(M.nrows, M.ncols):
        raise ValueError(f"minor size {s} out of range for {M.shape}")
    F = M.field
    A = M.to_numpy()
    use_numpy = F.q <= 1024
    for rsub in combinations(range(M.nrows), s):
        sub = A[list(rsub)]
        if not use_numpy:
            for csub in combinations(range(M.ncols), s):
                if det(Matrix(F, sub[:, csub].tolist())) == 0:
                    return False
            continue
        it = combinations(range(M.ncols), s)
        while True:
            chunk = list(_take(it, _BATCH))
            if not chunk:
                break
            cidx = np.array(chunk)
            stack = np.transpose(sub[:, cidx], (1, 0, 2))
            if not _full_rank_batch(F, stack).all():
                return False
    return True


def _take(it, n):
    for _, x in zip(range(n), it):
        yield x


# -- projective space

def normalize(F: Field, v) -> tuple:
    """Leading-one representative of the projective class of v."""
    for x in v:
        if x:
            inv = F.inv(x)
            return tuple(F.mul(inv, y) for y in v)
    raise ValueError("the zero vector has no projective class")


def is_normalized(v) -> bool:
    return next((x for x in v if x), 0) == 1


def projective_count(q: int, n: int) -> int:
    """Number of points of P^n(F_q)."""
    return (q ** (n + 1) - 1) // (q - 1)


def _check_points(q, n, max_points):
    count = projective_count(q, n)
    if count > max_points:
        raise BoundExceededError(f"P^{n}(F_{q}) has {count} points, bound is {max_points}")
    return count


def enumerate_projective_points(F: Field, n: int, max_points: int = DEFAULT_MAX_POINTS) -> list[tuple]:
    """All points of P^n(F) in leading-one form, in lexicographic order."""
    _check_points(F.q, n, max_points)
    out = []
    for lead in range(n, -1, -1):
        head = (0,) * lead + (1,)
        for tail in product(range(F.q), repeat=n - lead):
            out.append(head + tail)
    return out


def point_index(v, q: int) -> int:
    """Big-endian base-q integer of a coordinate tuple (lex order == integer order)."""
    n = 0
    for x in v:
        n = n * q + x
    return n


def index_point(i: int, q: int, length: int) -> tuple:
    out = [0] * length
    for j in range(length - 1, -1, -1):
        i, out[j] = divmod(i, q)
    return tuple(out)


def normalized_indices(q: int, length: int) -> np.ndarray:
    """Indices of all leading-one tuples of the given length, ascending."""
    parts = [np.arange(q ** e, 2 * q ** e, dtype=np.int64) for e in range(length)]
    return np.concatenate(parts)


def _normalize_rows(F: Field, v: np.ndarray):
    nz = v != 0
    keep = nz.any(axis=1)
    v = v[keep]
    first = nz[keep].argmax(axis=1)
    lead = v[np.arange(len(v)), first]
    return F.mul_table[F.inv_table[lead][:, None], v]


def span_levels(M: Matrix, jmax: int | None = None, max_points: int = DEFAULT_MAX_POINTS) -> np.ndarray:
    """
    For every projective point s of P^(r-1), r = rows of M, the least number
    of columns of M whose span contains s (``-1`` if more than jmax are needed).

    The result is indexed by `point_index` of the leading-one form; entries
    at non-normalized indices are meaningless.  Computed breadth-first: the
    points needing exactly j columns are s + lambda*c for s needing j-1.
    """
    F = M.field
    r = M.nrows
    q = F.q
    jmax = r if jmax is None else jmax
    _check_points(q, r - 1, max_points)
    if q > 1024:
        raise BoundExceededError(f"{F} is too large for the vectorised search")
    add, mul = F.add_table, F.mul_table
    weights = q ** np.arange(r - 1, -1, -1, dtype=np.int64)
    level = np.full(q ** r, -1, dtype=np.int16)
    level[0] = 0
    cols = np.array(M.columns(), dtype=np.int64)
    cols = cols[(cols != 0).any(axis=1)]
    if jmax < 1 or len(cols) == 0:
        return level
    frontier = np.unique(_normalize_rows(F, cols), axis=0)
    level[frontier @ weights] = 1
    scaled = np.stack([mul[lam][cols] for lam in range(1, q)]).reshape(-1, r)
    for j in range(2, jmax + 1):
        if len(frontier) == 0:
            break
        found = []
        for sc in scaled:
            v = _normalize_rows(F, add[frontier, sc[None, :]])
            idx = v @ weights
            fresh = level[idx] == -1
            if fresh.any():
                idx = np.unique(idx[fresh])
                level[idx] = j
                found.append(idx)
        if not found:
            break
        idx = np.unique(np.concatenate(found))
        frontier = _indices_to_rows(idx, q, r)
    return level


def _indices_to_rows(idx: np.ndarray, q: int, r: int) -> np.ndarray:
    out = np.empty((len(idx), r), dtype=np.int64)
    rest = idx.copy()
    for j in range(r - 1, -1, -1):
        rest, out[:, j] = np.divmod(rest, q)
    return out

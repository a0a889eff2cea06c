"""Matrices over S: Smith normal form, exact solvers, and k-linear helpers.

Over the DVR S every nonzero element is a unit times a power of x, so Smith
normal form needs no Bezout step: pivot on an entry of least valuation,
divide the rest of its row and column by it, repeat.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatch, FieldMismatch, NotDivisible, NotInjective, NotInvertibleOverS
from .ring import INF, Cursor, LocalScalar, parse_scalar_at


class LocalMatrix:
    """Immutable dense matrix of LocalScalar entries."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field, entries, rows=None, cols=None):
        entries = tuple(tuple(r) for r in entries)
        self.field = field
        self.rows = len(entries) if rows is None else rows
        self.cols = (len(entries[0]) if entries else 0) if cols is None else cols
        if len(entries) != self.rows or any(len(r) != self.cols for r in entries):
            raise DimensionMismatch("ragged matrix")
        self.entries = entries

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_rows(cls, field, rows):
        def conv(v):
            return v if isinstance(v, LocalScalar) else LocalScalar.const(field, v)

        rows = [[conv(v) for v in r] for r in rows]
        return cls(field, rows)

    @classmethod
    def zeros(cls, field, r, c):
        z = LocalScalar.zero(field)
        return cls(field, [[z] * c for _ in range(r)], r, c)

    @classmethod
    def identity(cls, field, n):
        return cls.scalar(field, LocalScalar.one(field), n)

    @classmethod
    def scalar(cls, field, s, n):
        z = LocalScalar.zero(field)
        return cls(field, [[s if i == j else z for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def diag(cls, field, values):
        z = LocalScalar.zero(field)
        n = len(values)
        return cls(field, [[values[i] if i == j else z for j in range(n)] for i in range(n)], n, n)

    # -- access -----------------------------------------------------------
    @property
    def shape(self):
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def submatrix(self, r0, r1, c0, c1):
        return LocalMatrix(self.field, [row[c0:c1] for row in self.entries[r0:r1]], r1 - r0, c1 - c0)

    def row_block(self, r0, r1):
        return self.submatrix(r0, r1, 0, self.cols)

    def col_block(self, c0, c1):
        return self.submatrix(0, self.rows, c0, c1)

    def is_square(self):
        return self.rows == self.cols

    def is_zero(self):
        return all(not e for row in self.entries for e in row)

    # -- arithmetic -------------------------------------------------------
    def _check_field(self, other):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __matmul__(self, other):
        self._check_field(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        zero = LocalScalar.zero(self.field)
        cols_b = list(zip(*other.entries)) if other.rows else [()] * other.cols
        out = []
        for row in self.entries:
            nz = [(k, a) for k, a in enumerate(row) if a]
            new = []
            for col in cols_b:
                acc = zero
                for k, a in nz:
                    b = col[k]
                    if b:
                        acc = acc + a * b
                new.append(acc)
            out.append(new)
        return LocalMatrix(self.field, out, self.rows, other.cols)

    def _zip(self, other, fn):
        self._check_field(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"shape {self.shape} vs {other.shape}")
        return LocalMatrix(
            self.field,
            [[fn(a, b) for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
            self.rows,
            self.cols,
        )

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self):
        return LocalMatrix(self.field, [[-a for a in r] for r in self.entries], self.rows, self.cols)

    def scale(self, s):
        if not isinstance(s, LocalScalar):
            s = LocalScalar.const(self.field, s)
        return LocalMatrix(self.field, [[s * a for a in r] for r in self.entries], self.rows, self.cols)

    def divide_exact(self, s):
        """Entrywise exact division by s; raises NotDivisible."""
        return LocalMatrix(self.field, [[a / s for a in r] for r in self.entries], self.rows, self.cols)

    @property
    def T(self):
        entries = list(zip(*self.entries)) if self.rows else [()] * self.cols
        return LocalMatrix(self.field, entries, self.cols, self.rows)

    def min_valuation(self):
        return min((e.valuation() for r in self.entries for e in r), default=INF)

    # -- value semantics --------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, LocalMatrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.field, self.shape, self.entries))

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(e) for e in r) + "]" for r in self.entries) + "]"

    def __repr__(self):
        return f"LocalMatrix({self})"


def hstack(*blocks):
    blocks = [b for b in blocks]
    rows = blocks[0].rows
    if any(b.rows != rows for b in blocks):
        raise DimensionMismatch("hstack needs equal row counts")
    field = blocks[0].field
    cols = sum(b.cols for b in blocks)
    return LocalMatrix(field, [sum((b.entries[i] for b in blocks), ()) for i in range(rows)], rows, cols)


def vstack(*blocks):
    cols = blocks[0].cols
    if any(b.cols != cols for b in blocks):
        raise DimensionMismatch("vstack needs equal column counts")
    field = blocks[0].field
    entries = [r for b in blocks for r in b.entries]
    return LocalMatrix(field, entries, len(entries), cols)


def block(grid):
    """Assemble a block matrix from a grid of LocalMatrix blocks."""
    return vstack(*[hstack(*row) for row in grid])


def direct_sum(*mats):
    field = mats[0].field
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    z = LocalScalar.zero(field)
    out = [[z] * cols for _ in range(rows)]
    r0 = c0 = 0
    for m in mats:
        for i in range(m.rows):
            out[r0 + i][c0 : c0 + m.cols] = m.entries[i]
        r0 += m.rows
        c0 += m.cols
    return LocalMatrix(field, out, rows, cols)


def kron(A, B):
    field = A.field
    out = []
    for i in range(A.rows):
        for k in range(B.rows):
            out.append([A.entries[i][j] * B.entries[k][l] for j in range(A.cols) for l in range(B.cols)])
    return LocalMatrix(field, out, A.rows * B.rows, A.cols * B.cols)


def vec(M):
    """Column-major vectorization as a (rows*cols) x 1 matrix."""
    return LocalMatrix(M.field, [[M.entries[i][j]] for j in range(M.cols) for i in range(M.rows)], M.rows * M.cols, 1)


def unvec(v, rows, cols):
    return LocalMatrix(v.field, [[v.entries[j * rows + i][0] for j in range(cols)] for i in range(rows)], rows, cols)


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SnfResult:
    U: LocalMatrix
    D: LocalMatrix
    V: LocalMatrix
    exponents: tuple

    @property
    def rank(self):
        return len(self.exponents)


def snf(A):
    """U, V invertible over S with U @ A @ V = D = diag(x^a1, ..., x^ar, 0, ...)."""
    field = A.field
    r, c = A.shape
    M = [list(row) for row in A.entries]
    U = [list(row) for row in LocalMatrix.identity(field, r).entries]
    V = [list(row) for row in LocalMatrix.identity(field, c).entries]
    exps = []
    for t in range(min(r, c)):
        best, bi, bj = INF, -1, -1
        for i in range(t, r):
            for j in range(t, c):
                v = M[i][j].valuation()
                if v < best:
                    best, bi, bj = v, i, j
                    if v == 0:
                        break
            if best == 0:
                break
        if best == INF:
            break
        if bi != t:
            M[t], M[bi] = M[bi], M[t]
            U[t], U[bi] = U[bi], U[t]
        if bj != t:
            for row in M:
                row[t], row[bj] = row[bj], row[t]
            for row in V:
                row[t], row[bj] = row[bj], row[t]
        unit_inv = M[t][t].unit_part().inverse()
        if unit_inv != 1:
            M[t] = [unit_inv * e for e in M[t]]
            U[t] = [unit_inv * e for e in U[t]]
        p = M[t][t]
        for i in range(t + 1, r):
            if M[i][t]:
                q = M[i][t] / p
                M[i] = [a - q * b if b else a for a, b in zip(M[i], M[t])]
                U[i] = [a - q * b if b else a for a, b in zip(U[i], U[t])]
        for j in range(t + 1, c):
            if M[t][j]:
                q = M[t][j] / p
                for row in M:
                    if row[t]:
                        row[j] = row[j] - q * row[t]
                for row in V:
                    if row[t]:
                        row[j] = row[j] - q * row[t]
        exps.append(best)
    D = LocalMatrix(field, M, r, c)
    return SnfResult(LocalMatrix(field, U, r, r), D, LocalMatrix(field, V, c, c), tuple(exps))


# ---------------------------------------------------------------------------
# solvers


def solve_linear(A, B):
    """Some X over S with A @ X == B, or None when no such X exists."""
    if A.rows != B.rows:
        raise DimensionMismatch(f"A has {A.rows} rows, B has {B.rows}")
    res = snf(A)
    C = res.U @ B
    xpow = [LocalScalar.x_power(A.field, a) for a in res.exponents]
    zero = LocalScalar.zero(A.field)
    Y = []
    try:
        for i in range(A.cols):
            if i < res.rank:
                Y.append([e / xpow[i] for e in C.entries[i]])
            else:
                Y.append([zero] * B.cols)
    except NotDivisible:
        return None
    if any(e for row in C.entries[res.rank :] for e in row):
        return None
    return res.V @ LocalMatrix(A.field, Y, A.cols, B.cols)


def solve_mod_omega(A, B, w):
    """(X, K) with A @ X + omega * K == B, or None."""
    if A.rows != B.rows:
        raise DimensionMismatch(f"A has {A.rows} rows, B has {B.rows}")
    aug = hstack(A, LocalMatrix.scalar(A.field, w.omega, A.rows))
    sol = solve_linear(aug, B)
    if sol is None:
        return None
    return sol.row_block(0, A.cols), sol.row_block(A.cols, A.cols + A.rows)


def det(A):
    if not A.is_square():
        raise DimensionMismatch("det of a non-square matrix")
    field = A.field
    n = A.rows
    M = [list(r) for r in A.entries]
    result = LocalScalar.one(field)
    for t in range(n):
        piv = min(range(t, n), key=lambda i: M[i][t].valuation())
        if not M[piv][t]:
            return LocalScalar.zero(field)
        if piv != t:
            M[t], M[piv] = M[piv], M[t]
            result = -result
        p = M[t][t]
        result = result * p
        for i in range(t + 1, n):
            if M[i][t]:
                q = M[i][t] / p
                M[i] = [a - q * b for a, b in zip(M[i], M[t])]
    return result


def invert(A):
    d = det(A)
    if not d.is_unit():
        raise NotInvertibleOverS(f"determinant {d} is not a unit of S")
    return solve_linear(A, LocalMatrix.identity(A.field, A.rows))


def matrix_ops(A, B, op):
    if op == "mul":
        return A @ B
    if op == "add":
        return A + B
    if op == "sub":
        return A - B
    if op == "directsum":
        return direct_sum(A, B)
    if op == "transpose":
        return A.T
    if op == "det":
        return det(A)
    if op == "invert":
        return invert(A)
    raise ValueError(f"unknown op {op!r}")


def cokernel_exponents(A, w=None):
    """Exponents a > 0 with Coker A = sum of S/(x^a), ascending."""
    if not A.is_square():
        raise DimensionMismatch("cokernel_exponents needs a square matrix")
    res = snf(A)
    if res.rank < A.rows:
        raise NotInjective("matrix is singular")
    return tuple(a for a in res.exponents if a > 0)


def is_split_injective(A):
    """Injective with free cokernel: all invariant factors are units."""
    res = snf(A)
    return res.rank == A.cols and all(a == 0 for a in res.exponents)


def is_surjective(A):
    res = snf(A)
    return res.rank == A.rows and all(a == 0 for a in res.exponents)


def free_kernel(A):
    """Columns spanning ker A, for A surjective (kernel is then a free summand)."""
    res = snf(A)
    return res.V.col_block(res.rank, A.cols)


def free_cokernel(A):
    """(proj, section) for A split injective: proj @ A == 0, proj @ section == I."""
    res = snf(A)
    r = res.rank
    proj = res.U.row_block(r, A.rows)
    section = invert(res.U).col_block(r, A.rows)
    return proj, section


# ---------------------------------------------------------------------------
# matrix text format


def parse_matrix_at(cur, field):
    start = cur.pos
    cur.expect("[")
    rows = []
    if cur.accept("]"):
        return LocalMatrix(field, [], 0, 0)
    while True:
        cur.expect("[")
        row = []
        if not cur.accept("]"):
            while True:
                row.append(parse_scalar_at(cur, field))
                if cur.accept("]"):
                    break
                cur.expect(",")
        rows.append(row)
        if cur.accept("]"):
            break
        cur.expect(",")
    if any(len(r) != len(rows[0]) for r in rows):
        raise cur.error("rows of unequal length", start)
    return LocalMatrix(field, rows, len(rows), len(rows[0]))


def parse_matrix(text, field):
    cur = Cursor(text)
    m = parse_matrix_at(cur, field)
    if not cur.at_end():
        raise cur.error(f"trailing input {cur.text[cur.pos:]!r}")
    return m


# ---------------------------------------------------------------------------
# k-linear algebra in k[x]/(x^n)


def truncate_matrix(M, n):
    """Entries as coefficient tuples in k[x]/(x^n)."""
    return [[e.truncate(n) for e in row] for row in M.entries]


def _tpoly_mul_acc(acc, a, b, n):
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j in range(n - i):
            bj = b[j]
            if bj:
                acc[i + j] = acc[i + j] + ai * bj


def truncated_matmul(A, B, n, zero):
    rows, inner, cols = len(A), len(B), (len(B[0]) if B else 0)
    out = []
    for i in range(rows):
        new = []
        for j in range(cols):
            acc = [zero] * n
            for k in range(inner):
                _tpoly_mul_acc(acc, A[i][k], B[k][j], n)
            new.append(tuple(acc))
        out.append(new)
    return out


def flatten(T):
    return [c for row in T for e in row for c in e]


def field_rank(vectors, field):
    """Rank over k of a list of equal-length coefficient vectors."""
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return 0
    width = len(rows[0])
    rank = 0
    for col in range(width):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][col]
        prow = [c * inv for c in rows[rank]]
        rows[rank] = prow
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                c = rows[i][col]
                rows[i] = [a - c * b for a, b in zip(rows[i], prow)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def matrix_units(field, rows, cols, n):
    """k-basis of Mat_{rows x cols}(k[x]/x^n): (i, j, d) for E_ij * x^d."""
    return [(i, j, d) for i in range(rows) for j in range(cols) for d in range(n)]


def unit_tmatrix(field, rows, cols, n, i, j, d):
    zero = field.zero
    blank = tuple([zero] * n)
    M = [[blank] * cols for _ in range(rows)]
    e = [zero] * n
    e[d] = field.one
    M[i][j] = tuple(e)
    return M


def lift_tmatrix(field, T):
    return LocalMatrix(field, [[LocalScalar.from_series(field, e) for e in row] for row in T])



def field_kernel(images, field):
    """Basis (as coefficient lists) of {c : sum c_i images[i] == 0} over k."""
    N = len(images)
    if N == 0:
        return []
    width = len(images[0])
    rows = [[images[i][r] for i in range(N)] for r in range(width)]
    pivots = []
    rank = 0
    for col in range(N):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][col]
        prow = [c * inv for c in rows[rank]]
        rows[rank] = prow
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                c = rows[i][col]
                rows[i] = [a - c * b for a, b in zip(rows[i], prow)]
        pivots.append(col)
        rank += 1
    basis = []
    pivot_set = set(pivots)
    for free in range(N):
        if free in pivot_set:
            continue
        v = [field.zero] * N
        v[free] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][free]
        basis.append(v)
    return basis

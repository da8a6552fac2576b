"""Matrices over R = F[t, t^-1]: Smith normal form, rank, determinant.

R is a principal ideal domain with Euclidean division by Laurent degree, so
every matrix A has a diagonalization U*A*V = D with U, V invertible over R
(their determinants are units c*t^k) and the diagonal entries forming a
divisibility chain d1 | d2 | ... .  Pivots are chosen of minimal Laurent
degree, ties broken row-major; diagonal entries are reported in canonical
form (monic, smallest exponent 0, nonzero constant term), so units become 1.
"""
from __future__ import annotations

from typing import NamedTuple

from .exceptions import FieldMismatchError
from .fields import Field
from .laurent import LaurentPoly, laurent_divmod


class RMatrix:
    """An immutable rows x cols matrix of Laurent polynomials."""

    __slots__ = ("field", "rows", "cols", "_e")

    def __init__(self, field: Field, entries, shape: tuple[int, int] | None = None):
        self.field = field
        grid = []
        for row in entries:
            out = []
            for v in row:
                if isinstance(v, LaurentPoly):
                    if v.field != field:
                        raise FieldMismatchError(
                            f"entry over {v.field} in a matrix over {field}")
                    out.append(v)
                else:
                    out.append(LaurentPoly(field, {0: v}))
            grid.append(out)
        rows = len(grid)
        cols = len(grid[0]) if rows else 0
        if shape is not None:
            rows_s, cols_s = shape
            if rows != rows_s or any(len(r) != cols_s for r in grid):
                raise ValueError(f"entries do not match shape {shape}")
            rows, cols = rows_s, cols_s
        else:
            if any(len(r) != cols for r in grid):
                raise ValueError("ragged rows")
        self.rows = rows
        self.cols = cols
        self._e = grid

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "RMatrix":
        z = LaurentPoly.zero(field)
        return cls(field, [[z] * cols for _ in range(rows)], shape=(rows, cols))

    @classmethod
    def identity(cls, field: Field, n: int) -> "RMatrix":
        z = LaurentPoly.zero(field)
        one = LaurentPoly.one(field)
        return cls(field, [[one if i == j else z for j in range(n)] for i in range(n)],
                   shape=(n, n))

    def __getitem__(self, ij):
        i, j = ij
        return self._e[i][j]

    def row(self, i: int):
        return list(self._e[i])

    def column(self, j: int):
        return [self._e[i][j] for i in range(self.rows)]

    def entries(self):
        """Mutable copy of the entry grid."""
        return [list(r) for r in self._e]

    @property
    def is_zero(self) -> bool:
        return all(p.is_zero for r in self._e for p in r)

    def __eq__(self, other):
        if not isinstance(other, RMatrix):
            return NotImplemented
        return (self.field == other.field and self.rows == other.rows
                and self.cols == other.cols and self._e == other._e)

    def __hash__(self):
        return hash((self.field, self.rows, self.cols,
                     tuple(tuple(r) for r in self._e)))

    def __mul__(self, other: "RMatrix") -> "RMatrix":
        if not isinstance(other, RMatrix):
            return NotImplemented
        if self.field != other.field:
            raise FieldMismatchError("matrix product across different fields")
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.shape} * {other.shape}")
        zero = LaurentPoly.zero(self.field)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    a = self._e[i][k]
                    b = other._e[k][j]
                    if a.is_zero or b.is_zero:
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return RMatrix(self.field, out, shape=(self.rows, other.cols))

    def __neg__(self):
        return RMatrix(self.field, [[-p for p in r] for r in self._e],
                       shape=(self.rows, self.cols))

    def __sub__(self, other):
        if not isinstance(other, RMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in subtraction")
        return RMatrix(self.field,
                       [[a - b for a, b in zip(ra, rb)]
                        for ra, rb in zip(self._e, other._e)],
                       shape=(self.rows, self.cols))

    @property
    def shape(self):
        return (self.rows, self.cols)

    def transpose(self) -> "RMatrix":
        return RMatrix(self.field,
                       [[self._e[i][j] for i in range(self.rows)]
                        for j in range(self.cols)],
                       shape=(self.cols, self.rows))

    def diagonal(self) -> list[LaurentPoly]:
        return [self._e[i][i] for i in range(min(self.rows, self.cols))]

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [p.to_json() for r in self._e for p in r],
        }

    @classmethod
    def from_json(cls, field: Field, doc: dict) -> "RMatrix":
        rows, cols = int(doc["rows"]), int(doc["cols"])
        flat = doc["entries"]
        if len(flat) != rows * cols:
            raise ValueError("entry count does not match rows*cols")
        grid = [[LaurentPoly.from_json(field, flat[i * cols + j])
                 for j in range(cols)] for i in range(rows)]
        return cls(field, grid, shape=(rows, cols))

    def __str__(self):
        if self.rows == 0 or self.cols == 0:
            return f"<empty {self.rows}x{self.cols}>"
        return "[" + "; ".join(", ".join(str(p) for p in r) for r in self._e) + "]"

    def __repr__(self):
        return f"RMatrix({self.rows}x{self.cols} over {self.field!r})"


class SmithForm(NamedTuple):
    U: RMatrix
    D: RMatrix
    V: RMatrix


class _SmithFull(NamedTuple):
    U: RMatrix
    D: RMatrix
    V: RMatrix
    U_inv: RMatrix
    V_inv: RMatrix


def _smith_full(A: RMatrix) -> _SmithFull:
    """Diagonalize with all four transformation matrices tracked.

    Maintains U*A*V = S together with U_inv and V_inv, updating them under
    every elementary operation.
    """
    F = A.field
    m, n = A.rows, A.cols
    S = A.entries()
    U = RMatrix.identity(F, m).entries()
    Ui = RMatrix.identity(F, m).entries()
    V = RMatrix.identity(F, n).entries()
    Vi = RMatrix.identity(F, n).entries()

    def row_swap(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]
        for r in Ui:
            r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        for r in S:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def row_addmul(i, j, q):
        # row_i += q * row_j on S and U; U_inv: col_j -= q * col_i
        S[i] = [a + q * b for a, b in zip(S[i], S[j])]
        U[i] = [a + q * b for a, b in zip(U[i], U[j])]
        for r in Ui:
            r[j] = r[j] - q * r[i]

    def col_addmul(j, i, q):
        # col_j += q * col_i on S and V; V_inv: row_i -= q * row_j
        for r in S:
            r[j] = r[j] + q * r[i]
        for r in V:
            r[j] = r[j] + q * r[i]
        Vi[i] = [a - q * b for a, b in zip(Vi[i], Vi[j])]

    def row_scale(i, u):
        # u must be a unit; U_inv: col_i *= u^-1
        uinv = LaurentPoly(F, {-u.min_exp: F.inv(u.coefficient(u.min_exp))})
        S[i] = [u * a for a in S[i]]
        U[i] = [u * a for a in U[i]]
        for r in Ui:
            r[i] = uinv * r[i]

    t = 0
    limit = min(m, n)
    while t < limit:
        # global pivot search: minimal Laurent degree, ties row-major
        best = None
        best_deg = None
        for i in range(t, m):
            for j in range(t, n):
                p = S[i][j]
                if not p.is_zero:
                    d = p.degree
                    if best_deg is None or d < best_deg:
                        best, best_deg = (i, j), d
        if best is None:
            break
        bi, bj = best
        if bi != t:
            row_swap(t, bi)
        if bj != t:
            col_swap(t, bj)
        while True:
            # clear the column below the pivot
            pending = None
            for i in range(t + 1, m):
                if not S[i][t].is_zero:
                    q, r = laurent_divmod(S[i][t], S[t][t])
                    if not q.is_zero:
                        row_addmul(i, t, -q)
                    if not r.is_zero:
                        pending = i if pending is None else pending
            if pending is not None:
                # a remainder of smaller degree appeared; make it the pivot
                best_i = min((i for i in range(t + 1, m) if not S[i][t].is_zero),
                             key=lambda i: S[i][t].degree)
                row_swap(t, best_i)
                continue
            # clear the row right of the pivot
            pending = None
            for j in range(t + 1, n):
                if not S[t][j].is_zero:
                    q, r = laurent_divmod(S[t][j], S[t][t])
                    if not q.is_zero:
                        col_addmul(j, t, -q)
                    if not r.is_zero:
                        pending = j if pending is None else pending
            if pending is not None:
                best_j = min((j for j in range(t + 1, n) if not S[t][j].is_zero),
                             key=lambda j: S[t][j].degree)
                col_swap(t, best_j)
                continue
            # both clear; enforce divisibility of the trailing block
            fix = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if not S[i][j].is_zero:
                        if not laurent_divmod(S[i][j], S[t][t])[1].is_zero:
                            fix = i
                            break
                if fix is not None:
                    break
            if fix is None:
                break
            row_addmul(t, fix, LaurentPoly.one(F))
        piv = S[t][t]
        unit = piv.unit_part()
        if unit != LaurentPoly.one(F):
            inv = LaurentPoly(F, {-unit.min_exp: F.inv(unit.coefficient(unit.min_exp))})
            row_scale(t, inv)
        t += 1
    shape = (m, n)
    return _SmithFull(
        RMatrix(F, U, shape=(m, m)),
        RMatrix(F, S, shape=shape),
        RMatrix(F, V, shape=(n, n)),
        RMatrix(F, Ui, shape=(m, m)),
        RMatrix(F, Vi, shape=(n, n)),
    )


def smith_normal_form(A: RMatrix) -> SmithForm:
    """Smith normal form over F[t, t^-1]: returns (U, D, V) with U*A*V = D.

    D is diagonal with canonical entries forming a divisibility chain; U and
    V are invertible over the ring (unit determinants).
    """
    full = _smith_full(A)
    return SmithForm(full.U, full.D, full.V)


def rank_profile(D: RMatrix) -> int:
    """Number of nonzero diagonal entries of a diagonalized matrix."""
    return sum(1 for p in D.diagonal() if not p.is_zero)


def _exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    q, r = laurent_divmod(a, b)
    if not r.is_zero:
        raise ArithmeticError("fraction-free elimination produced a non-exact division")
    return q


def rank_over_fraction_field(A: RMatrix) -> int:
    """Rank of A viewed over the rational function field F(t).

    Fraction-free (Bareiss) elimination; every division is exact in R and is
    checked, so a failure raises instead of corrupting the count.
    """
    m, n = A.rows, A.cols
    M = A.entries()
    one = LaurentPoly.one(A.field)
    zero = LaurentPoly.zero(A.field)
    rank = 0
    prev = one
    for c in range(n):
        if rank >= m:
            break
        cand = [i for i in range(rank, m) if not M[i][c].is_zero]
        if not cand:
            continue
        piv = min(cand, key=lambda i: M[i][c].degree)
        if piv != rank:
            M[rank], M[piv] = M[piv], M[rank]
        for i in range(rank + 1, m):
            if all(p.is_zero for p in M[i]):
                continue
            for j in range(c + 1, n):
                num = M[rank][c] * M[i][j] - M[i][c] * M[rank][j]
                M[i][j] = zero if num.is_zero else _exact_div(num, prev)
            M[i][c] = zero
        prev = M[rank][c]
        rank += 1
    return rank


def determinant(A: RMatrix) -> LaurentPoly:
    """Determinant by fraction-free (Bareiss) elimination."""
    if A.rows != A.cols:
        raise ValueError("determinant of a non-square matrix")
    n = A.rows
    F = A.field
    if n == 0:
        return LaurentPoly.one(F)
    M = A.entries()
    one = LaurentPoly.one(F)
    zero = LaurentPoly.zero(F)
    sign = 1
    prev = one
    for k in range(n - 1):
        cand = [i for i in range(k, n) if not M[i][k].is_zero]
        if not cand:
            return zero
        piv = min(cand, key=lambda i: M[i][k].degree)
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[k][k] * M[i][j] - M[i][k] * M[k][j]
                M[i][j] = zero if num.is_zero else _exact_div(num, prev)
            M[i][k] = zero
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return -det if sign < 0 else det


def companion_matrix(p: LaurentPoly) -> list[list]:
    """Companion matrix of the canonical associate of p, as a scalar grid.

    Models multiplication by t on R/(p): an n x n matrix over the coefficient
    field, n = degree(p).  Requires degree >= 1.
    """
    q = p.normalize()
    if q.is_zero:
        raise ValueError("companion matrix of the zero polynomial")
    n = q.degree
    if n == 0:
        raise ValueError("R/(unit) is the zero module; no companion matrix")
    F = p.field
    grid = [[F.zero() for _ in range(n)] for _ in range(n)]
    for i in range(1, n):
        grid[i][i - 1] = F.one()
    for i in range(n):
        grid[i][n - 1] = F.neg(q.coefficient(i))
    return grid

"""Dense exact matrices and the handful of solvers the rest of the package needs.

Pivoting is fixed (first nonzero entry in column order), so every basis
returned here is reproducible run to run.  Nothing is asymptotically clever;
matrices stay small at the scales this package targets.
"""

from __future__ import annotations

from typing import List, Optional, Tuple

from tauseq.fields import FieldSpec


class Mat:
    """An exact rows x cols matrix over a FieldSpec."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: FieldSpec, rows: int, cols: int, data: List[list]):
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError("shape mismatch: declared %dx%d" % (rows, cols))
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = data

    # -- constructors --

    @staticmethod
    def zeros(field: FieldSpec, rows: int, cols: int) -> "Mat":
        z = field.zero
        return Mat(field, rows, cols, [[z] * cols for _ in range(rows)])

    @staticmethod
    def identity(field: FieldSpec, n: int) -> "Mat":
        m = Mat.zeros(field, n, n)
        one = field.one
        for i in range(n):
            m.data[i][i] = one
        return m

    @staticmethod
    def from_rows(field: FieldSpec, rows: List[list]) -> "Mat":
        data = [[field.coerce(x) for x in r] for r in rows]
        ncols = len(data[0]) if data else 0
        return Mat(field, len(data), ncols, data)

    @staticmethod
    def column(field: FieldSpec, entries: list) -> "Mat":
        return Mat(field, len(entries), 1, [[field.coerce(x)] for x in entries])

    def copy(self) -> "Mat":
        return Mat(self.field, self.rows, self.cols, [row[:] for row in self.data])

    # -- algebra --

    def mul(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError("cannot multiply %dx%d by %dx%d"
                             % (self.rows, self.cols, other.rows, other.cols))
        f = self.field
        out = Mat.zeros(f, self.rows, other.cols)
        for i in range(self.rows):
            arow = self.data[i]
            orow = out.data[i]
            for k in range(self.cols):
                a = arow[k]
                if a == 0:
                    continue
                brow = other.data[k]
                for j in range(other.cols):
                    b = brow[j]
                    if b != 0:
                        orow[j] = f.add(orow[j], f.mul(a, b))
        return out

    def add(self, other: "Mat") -> "Mat":
        f = self.field
        return Mat(f, self.rows, self.cols,
                   [[f.add(a, b) for a, b in zip(r1, r2)]
                    for r1, r2 in zip(self.data, other.data)])

    def sub(self, other: "Mat") -> "Mat":
        f = self.field
        return Mat(f, self.rows, self.cols,
                   [[f.sub(a, b) for a, b in zip(r1, r2)]
                    for r1, r2 in zip(self.data, other.data)])

    def scale(self, c) -> "Mat":
        f = self.field
        c = f.coerce(c)
        return Mat(f, self.rows, self.cols,
                   [[f.mul(c, a) for a in r] for r in self.data])

    def neg(self) -> "Mat":
        f = self.field
        return Mat(f, self.rows, self.cols, [[f.neg(a) for a in r] for r in self.data])

    def transpose(self) -> "Mat":
        return Mat(self.field, self.cols, self.rows,
                   [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def hstack(self, other: "Mat") -> "Mat":
        if self.rows != other.rows:
            raise ValueError("hstack row mismatch")
        return Mat(self.field, self.rows, self.cols + other.cols,
                   [r1 + r2 for r1, r2 in zip(self.data, other.data)])

    def vstack(self, other: "Mat") -> "Mat":
        if self.cols != other.cols:
            raise ValueError("vstack col mismatch")
        return Mat(self.field, self.rows + other.rows, self.cols,
                   [r[:] for r in self.data] + [r[:] for r in other.data])

    def col(self, j: int) -> list:
        return [self.data[i][j] for i in range(self.rows)]

    def columns(self) -> List[list]:
        return [self.col(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def trace(self):
        f = self.field
        t = f.zero
        for i in range(min(self.rows, self.cols)):
            t = f.add(t, self.data[i][i])
        return t

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __hash__(self):
        raise TypeError("Mat is unhashable by design; key by canonical ids instead")

    def __repr__(self):
        return "Mat(%dx%d, %r)" % (self.rows, self.cols, self.data)


def block_diag(field: FieldSpec, blocks: List[Mat]) -> Mat:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = Mat.zeros(field, rows, cols)
    ro = co = 0
    for b in blocks:
        for i in range(b.rows):
            out.data[ro + i][co:co + b.cols] = b.data[i][:]
        ro += b.rows
        co += b.cols
    return out


def rref(a: Mat) -> Tuple[Mat, List[int]]:
    """Reduced row echelon form with the fixed first-nonzero pivot rule.

    Returns (R, pivot_columns).
    """
    f = a.field
    m = [row[:] for row in a.data]
    nrows, ncols = a.rows, a.cols
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        pr = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = f.inv(m[r][c])
        if inv != f.one:
            m[r] = [f.mul(inv, x) for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return Mat(f, nrows, ncols, m), pivots


def rank(a: Mat) -> int:
    return len(rref(a)[1])


def solve_kernel(a: Mat) -> Mat:
    """Basis of the right null space, as the columns of the returned matrix.

    The basis is the standard one read off the reduced echelon form: one
    column per free variable, so rank + returned columns == cols.
    """
    f = a.field
    r, pivots = rref(a)
    free = [j for j in range(a.cols) if j not in pivots]
    out = Mat.zeros(f, a.cols, len(free))
    for k, j in enumerate(free):
        out.data[j][k] = f.one
        for i, pc in enumerate(pivots):
            v = r.data[i][j]
            if v != 0:
                out.data[pc][k] = f.neg(v)
    return out


def column_space_basis(a: Mat) -> Mat:
    """The pivot columns of ``a`` (original entries, deterministic choice)."""
    _, pivots = rref(a)
    f = a.field
    out = Mat.zeros(f, a.rows, len(pivots))
    for k, j in enumerate(pivots):
        for i in range(a.rows):
            out.data[i][k] = a.data[i][j]
    return out


def rank_image_cokernel(a: Mat) -> Tuple[int, Mat, Mat]:
    """Rank, a column basis of the image, and a cokernel projection Q.

    Q has shape (rows - rank) x rows, full row rank, and Q a == 0; its kernel
    is exactly the column space of ``a``.
    """
    img = column_space_basis(a)
    r = img.cols
    q = solve_kernel(a.transpose()).transpose()
    return r, img, q


def solve(a: Mat, b: Mat) -> Optional[Mat]:
    """Solve a X = b columnwise; None if any column is inconsistent."""
    f = a.field
    aug = a.hstack(b)
    rr, pivots = rref(aug)
    for piv_row, pc in enumerate(pivots):
        if pc >= a.cols:
            return None
    x = Mat.zeros(f, a.cols, b.cols)
    for i, pc in enumerate(pivots):
        for j in range(b.cols):
            x.data[pc][j] = rr.data[i][a.cols + j]
    return x


def is_invertible(a: Mat) -> bool:
    return a.rows == a.cols and rank(a) == a.rows


def inverse(a: Mat) -> Mat:
    if a.rows != a.cols:
        raise ValueError("inverse of non-square matrix")
    x = solve(a, Mat.identity(a.field, a.rows))
    if x is None or rank(a) != a.rows:
        raise ValueError("matrix is singular")
    return x


def from_columns(field: FieldSpec, rows: int, cols: List[list]) -> Mat:
    out = Mat.zeros(field, rows, len(cols))
    for j, c in enumerate(cols):
        if len(c) != rows:
            raise ValueError("column length mismatch")
        for i in range(rows):
            out.data[i][j] = field.coerce(c[i])
    return out

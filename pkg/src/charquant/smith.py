"""Matrices over F_p[t] and Smith normal form.

The elimination picks a pivot of minimal degree (ties broken by lowest
row, then lowest column index) and normalizes pivots monic, so the
transform matrices are reproducible run to run.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ModulusMismatch, ShapeMismatch, VariableMismatch
from .modp import inv_mod
from .poly import Polynomial


class PolyMatrix:
    """Dense matrix with Polynomial entries sharing one modulus and variable."""

    __slots__ = ("p", "var", "rows", "cols", "entries")

    def __init__(self, p: int, rows: int, cols: int, entries, var: str = "t"):
        self.p = p
        self.var = var
        self.rows = rows
        self.cols = cols
        ents = []
        for i in range(rows):
            row = list(entries[i])
            if len(row) != cols:
                raise ShapeMismatch(f"row {i} has {len(row)} entries, expected {cols}")
            for e in row:
                if e.p != p:
                    raise ModulusMismatch("entry modulus differs from matrix modulus")
                if e.var != var:
                    raise VariableMismatch("entry variable differs from matrix variable")
            ents.append(row)
        self.entries = ents

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, p: int, rows: int, cols: int, var: str = "t") -> "PolyMatrix":
        z = Polynomial.zero(p, var)
        return cls(p, rows, cols, [[z] * cols for _ in range(rows)], var)

    @classmethod
    def identity(cls, p: int, n: int, var: str = "t") -> "PolyMatrix":
        m = cls.zero(p, n, n, var)
        one = Polynomial.one(p, var)
        for i in range(n):
            m.entries[i][i] = one
        return m

    @classmethod
    def from_int_rows(cls, p: int, rows, var: str = "t") -> "PolyMatrix":
        ents = [[Polynomial.constant(p, c, var) for c in row] for row in rows]
        return cls(p, len(ents), len(ents[0]) if ents else 0, ents, var)

    def copy(self) -> "PolyMatrix":
        return PolyMatrix(self.p, self.rows, self.cols, [row[:] for row in self.entries], self.var)

    # -- basic algebra ----------------------------------------------------

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyMatrix)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.entries == other.entries
        )

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = PolyMatrix.zero(self.p, self.rows, other.cols, self.var)
        for i in range(self.rows):
            srow = self.entries[i]
            orow = out.entries[i]
            for k in range(self.cols):
                a = srow[k]
                if a.is_zero():
                    continue
                brow = other.entries[k]
                for j in range(other.cols):
                    b = brow[j]
                    if not b.is_zero():
                        orow[j] = orow[j] + a * b
        return out

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeMismatch("matrix shapes differ")
        return PolyMatrix(
            self.p,
            self.rows,
            self.cols,
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)],
            self.var,
        )

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def apply(self, vec: list) -> list:
        if len(vec) != self.cols:
            raise ShapeMismatch(f"vector length {len(vec)} != {self.cols} columns")
        out = []
        for i in range(self.rows):
            acc = Polynomial.zero(self.p, self.var)
            for a, v in zip(self.entries[i], vec):
                if not a.is_zero() and not v.is_zero():
                    acc = acc + a * v
            out.append(acc)
        return out

    def column(self, j: int) -> list:
        return [self.entries[i][j] for i in range(self.rows)]

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(
            self.p,
            self.cols,
            self.rows,
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.var,
        )

    def pretty(self) -> str:
        cells = [[e.pretty() for e in row] for row in self.entries]
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join("[" + "  ".join(c.rjust(width) for c in row) + "]" for row in cells)

    def __repr__(self) -> str:
        return f"PolyMatrix({self.rows}x{self.cols} over F_{self.p}[{self.var}])"


@dataclass
class SmithDecomposition:
    """U @ M @ V == D with U, V unimodular and D diagonal (d_i | d_{i+1})."""

    U: PolyMatrix
    D: PolyMatrix
    V: PolyMatrix
    Vinv: PolyMatrix
    rank: int

    def invariant_factors(self) -> list:
        n = min(self.D.rows, self.D.cols)
        return [self.D.entries[i][i] for i in range(n) if not self.D.entries[i][i].is_zero()]


def _min_degree_pivot(m: PolyMatrix, start: int):
    best = None
    for i in range(start, m.rows):
        for j in range(start, m.cols):
            e = m.entries[i][j]
            if e.is_zero():
                continue
            d = e.degree()
            if best is None or d < best[0]:
                best = (d, i, j)
                if d == 0:
                    return best
    return best


def smith_decompose(mat: PolyMatrix, want_u: bool = True) -> SmithDecomposition:
    """Full Smith decomposition; set want_u=False to skip row-transform tracking."""
    p, var = mat.p, mat.var
    m = mat.copy()
    rows, cols = m.rows, m.cols
    U = PolyMatrix.identity(p, rows, var) if want_u else None
    V = PolyMatrix.identity(p, cols, var)
    Vinv = PolyMatrix.identity(p, cols, var)

    def swap_rows(i, j):
        m.entries[i], m.entries[j] = m.entries[j], m.entries[i]
        if U is not None:
            U.entries[i], U.entries[j] = U.entries[j], U.entries[i]

    def swap_cols(i, j):
        for row in m.entries:
            row[i], row[j] = row[j], row[i]
        for row in V.entries:
            row[i], row[j] = row[j], row[i]
        Vinv.entries[i], Vinv.entries[j] = Vinv.entries[j], Vinv.entries[i]

    def add_row(src, dst, q):
        # row_dst -= q * row_src
        if q.is_zero():
            return
        m.entries[dst] = [a - q * b for a, b in zip(m.entries[dst], m.entries[src])]
        if U is not None:
            U.entries[dst] = [a - q * b for a, b in zip(U.entries[dst], U.entries[src])]

    def add_col(src, dst, q):
        # col_dst -= q * col_src ; Vinv row_src += q * row_dst
        if q.is_zero():
            return
        for row in m.entries:
            row[dst] = row[dst] - q * row[src]
        for row in V.entries:
            row[dst] = row[dst] - q * row[src]
        Vinv.entries[src] = [a + q * b for a, b in zip(Vinv.entries[src], Vinv.entries[dst])]

    def scale_row(i, c):
        m.entries[i] = [e.scale(c) for e in m.entries[i]]
        if U is not None:
            U.entries[i] = [e.scale(c) for e in U.entries[i]]

    k = 0
    limit = min(rows, cols)
    while k < limit:
        found = _min_degree_pivot(m, k)
        if found is None:
            break
        _, pi, pj = found
        if pi != k:
            swap_rows(k, pi)
        if pj != k:
            swap_cols(k, pj)
        while True:
            # clear column k below/above, restarting if a remainder drops degree
            dirty = False
            for i in range(rows):
                if i == k or m.entries[i][k].is_zero():
                    continue
                q, r = divmod(m.entries[i][k], m.entries[k][k])
                add_row(k, i, q)
                if not r.is_zero():
                    swap_rows(k, i)
                    dirty = True
            for j in range(cols):
                if j == k or m.entries[k][j].is_zero():
                    continue
                q, r = divmod(m.entries[k][j], m.entries[k][k])
                add_col(k, j, q)
                if not r.is_zero():
                    swap_cols(k, j)
                    dirty = True
            if not dirty:
                break
        # make the pivot divide the rest of the submatrix
        fixed = True
        pivot = m.entries[k][k]
        for i in range(k + 1, rows):
            for j in range(k + 1, cols):
                if not (m.entries[i][j] % pivot).is_zero():
                    add_row(i, k, Polynomial.constant(p, -1, var))
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            if not pivot.is_monic():
                scale_row(k, inv_mod(pivot.leading(), p))
            k += 1

    rank = k
    D = PolyMatrix.zero(p, rows, cols, var)
    for i in range(rank):
        D.entries[i][i] = m.entries[i][i]
    if U is None:
        U = PolyMatrix.identity(p, rows, var)
    return SmithDecomposition(U=U, D=D, V=V, Vinv=Vinv, rank=rank)


def smith_normal_form(mat: PolyMatrix):
    """Return (U, D, V) with U @ mat @ V == D."""
    dec = smith_decompose(mat, want_u=True)
    return dec.U, dec.D, dec.V


def kernel_basis(mat: PolyMatrix) -> list:
    """Basis (as column vectors) of the kernel of mat over F_p[t].

    The kernel of a matrix over a PID is a free direct summand; the
    basis columns extend to a basis of the whole domain.
    """
    dec = smith_decompose(mat, want_u=False)
    return [dec.V.column(j) for j in range(dec.rank, mat.cols)]


def matrix_rank(mat: PolyMatrix) -> int:
    return smith_decompose(mat, want_u=False).rank


def rank_fraction_field(mat: PolyMatrix) -> int:
    """Rank over F_p(t) by fraction-free Gaussian elimination.

    Independent of the SNF path; used to cross-check free ranks.
    """
    m = [row[:] for row in mat.entries]
    rows, cols = mat.rows, mat.cols
    rank = 0
    for col in range(cols):
        pivot_row = None
        for i in range(rank, rows):
            if not m[i][col].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        piv = m[rank][col]
        for i in range(rank + 1, rows):
            if m[i][col].is_zero():
                continue
            factor = m[i][col]
            m[i] = [piv * a - factor * b for a, b in zip(m[i], m[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def solve_linear(mat: PolyMatrix, rhs: list):
    """One solution x of mat @ x = rhs over F_p[t], or None if unsolvable."""
    dec = smith_decompose(mat, want_u=True)
    ub = dec.U.apply(rhs)
    y = []
    for i in range(mat.cols):
        d = dec.D.entries[i][i] if i < min(mat.rows, mat.cols) else Polynomial.zero(mat.p, mat.var)
        b = ub[i] if i < len(ub) else Polynomial.zero(mat.p, mat.var)
        if d.is_zero():
            if i < len(ub) and not b.is_zero():
                return None
            y.append(Polynomial.zero(mat.p, mat.var))
        else:
            q, r = divmod(b, d)
            if not r.is_zero():
                return None
            y.append(q)
    for i in range(mat.cols, len(ub)):
        if not ub[i].is_zero():
            return None
    return dec.V.apply(y)


def in_column_span(mat: PolyMatrix, vec: list) -> bool:
    return solve_linear(mat, vec) is not None


def determinant(mat: PolyMatrix) -> Polynomial:
    """Fraction-free (Bareiss) determinant."""
    if mat.rows != mat.cols:
        raise ShapeMismatch("determinant needs a square matrix")
    n = mat.rows
    p, var = mat.p, mat.var
    if n == 0:
        return Polynomial.one(p, var)
    m = [row[:] for row in mat.entries]
    sign = 1
    prev = Polynomial.one(p, var)
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if pivot is None:
                return Polynomial.zero(p, var)
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = num // prev
            m[i][k] = Polynomial.zero(p, var)
        prev = m[k][k]
    return m[n - 1][n - 1].scale(sign)


def is_unimodular(mat: PolyMatrix) -> bool:
    if mat.rows != mat.cols:
        return False
    return determinant(mat).is_unit()

"""Composite-functor checks: tensoring with the restricted algebra is Morita-trivial.

For a matrix algebra A of size m over F_p[t], the composite functor
sends A to Dres (x)_{F_p[t]} A.  Through the endomorphism isomorphism
this is the full (pm) x (pm) matrix algebra, acting on the column
module O_X (x) F_p[t]^m, whose endomorphism ring is the scalars: the
Morita chain A ~ F_p[t] ~ FG(A).
"""

from __future__ import annotations

import random
import time

from .azumaya import EndIso, random_restricted
from .homology import VerificationReport
from .modp import validate_prime
from .poly import Polynomial
from .smith import PolyMatrix, kernel_basis, smith_decompose
from .weyl import weyl_mul


def kron(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    p = a.p
    rows = a.rows * b.rows
    cols = a.cols * b.cols
    out = PolyMatrix.zero(p, rows, cols, a.var)
    for i in range(a.rows):
        for j in range(a.cols):
            e = a.entries[i][j]
            if e.is_zero():
                continue
            for k in range(b.rows):
                for l in range(b.cols):
                    f = b.entries[k][l]
                    if not f.is_zero():
                        out.entries[i * b.rows + k][j * b.cols + l] = e * f
    return out


def _unit_matrix(p: int, m: int, r: int, s: int) -> PolyMatrix:
    out = PolyMatrix.zero(p, m, m)
    out.entries[r][s] = Polynomial.one(p, "t")
    return out


def _flatten(mat: PolyMatrix) -> list:
    return [mat.entries[i][j] for i in range(mat.rows) for j in range(mat.cols)]


def fg_composite(p: int, m: int, seed: int = 42) -> VerificationReport:
    """Verify FG(A) for A the m x m matrix algebra over F_p[t]."""
    validate_prime(p)
    if not 1 <= m <= 4:
        raise ValueError("matrix-algebra size must be between 1 and 4")
    start = time.perf_counter()
    report = VerificationReport(suite="fg_composite", p=p, params={"matrix_size": m})
    iso = EndIso(p)
    report.add_check("end_iso_bijective", iso.is_bijective())

    size = p * m
    rng = random.Random(seed)

    def embed(u, a_mat: PolyMatrix) -> PolyMatrix:
        return kron(iso.matrix_of(u), a_mat)

    # the composite algebra spans all (pm) x (pm) matrices over F_p[t]
    rows = []
    for a in range(p):
        for b in range(p):
            u = iso.matrix_of(_monomial(p, a, b))
            for r in range(m):
                for s in range(m):
                    rows.append(_flatten(kron(u, _unit_matrix(p, m, r, s))))
    span = PolyMatrix(p, len(rows), size * size,
                      [[rows[i][j] for j in range(size * size)] for i in range(len(rows))],
                      "t").transpose()
    dec = smith_decompose(span, want_u=False)
    spans_all = dec.rank == size * size and all(f.is_unit() for f in dec.invariant_factors())
    report.add_check("composite_is_full_matrix_algebra", spans_all)

    # multiplicativity of the identification on random pairs
    ok = True
    for _ in range(20):
        u, v = random_restricted(p, rng), random_restricted(p, rng)
        amat = _random_int_matrix(p, m, rng)
        bmat = _random_int_matrix(p, m, rng)
        lhs = embed(weyl_mul(u, v), amat @ bmat)
        rhs = embed(u, amat) @ embed(v, bmat)
        if lhs != rhs:
            ok = False
            break
    report.add_check("identification_multiplicative", ok)

    # endomorphisms of the column module commuting with the action are scalars
    gens = [
        embed(_monomial(p, 1, 0), PolyMatrix.identity(p, m)),
        embed(_monomial(p, 0, 1), PolyMatrix.identity(p, m)),
    ]
    for r in range(m):
        for s in range(m):
            if r != s:
                gens.append(embed(_monomial(p, 0, 0), _unit_matrix(p, m, r, s)))
    commutant_rank, scalar_only = _commutant_of(gens, p, size)
    report.add_check("column_module_endomorphisms_are_scalars", commutant_rank == 1 and scalar_only)

    # the induced module underlying the witness is O_X (x) columns
    report.add_check("column_module_rank_pm", gens[0].rows == p * m)
    report.wall_time = time.perf_counter() - start
    return report


def _monomial(p, a, b):
    from .weyl import WeylElement

    return WeylElement.monomial(p, a, b)


def _random_int_matrix(p: int, m: int, rng: random.Random) -> PolyMatrix:
    return PolyMatrix.from_int_rows(p, [[rng.randrange(p) for _ in range(m)] for _ in range(m)])


def _commutant_of(gens: list, p: int, size: int):
    """Kernel of phi -> (X phi - phi X) over all generators, as a module."""
    columns = size * size
    rows = []
    zero = Polynomial.zero(p, "t")
    for g in gens:
        block = [[zero for _ in range(columns)] for _ in range(columns)]
        for r in range(size):
            for s in range(size):
                col = r * size + s
                # X e_rs: column picks up X[:, r] at row (i, s); e_rs X at (r, j)
                for i in range(size):
                    e = g.entries[i][r]
                    if not e.is_zero():
                        block[i * size + s][col] = block[i * size + s][col] + e
                for j in range(size):
                    e = g.entries[s][j]
                    if not e.is_zero():
                        block[r * size + j][col] = block[r * size + j][col] - e
        rows.extend(block)
    mat = PolyMatrix(p, len(rows), columns, rows, "t")
    kern = kernel_basis(mat)
    scalar_only = True
    for vec in kern:
        diag = vec[0]
        for r in range(size):
            for s in range(size):
                e = vec[r * size + s]
                if r == s and not (e - diag).is_zero():
                    scalar_only = False
                if r != s and not e.is_zero():
                    scalar_only = False
    return len(kern), scalar_only

import pytest
from hypothesis import given, settings, strategies as st

from charquant.errors import ShapeMismatch
from charquant.poly import Polynomial, poly_t
from charquant.smith import (
    PolyMatrix,
    is_unimodular,
    kernel_basis,
    rank_fraction_field,
    smith_decompose,
    smith_normal_form,
    solve_linear,
)


def t(p):
    return poly_t(p, [0, 1])


def matrix_strategy(max_dim=12, max_deg=4):
    @st.composite
    def build(draw):
        p = draw(st.sampled_from([2, 3, 5]))
        # bias small, but keep the full 12x12 degree-4 range reachable
        big = draw(st.booleans())
        top = max_dim if big else min(max_dim, 4)
        rows = draw(st.integers(1, top))
        cols = draw(st.integers(1, top))
        entries = []
        for _ in range(rows):
            row = []
            for _ in range(cols):
                deg = draw(st.integers(-1, max_deg))
                if deg < 0:
                    row.append(Polynomial.zero(p, "t"))
                else:
                    coeffs = [draw(st.integers(0, p - 1)) for _ in range(deg + 1)]
                    row.append(Polynomial(p, coeffs, "t"))
            entries.append(row)
        return PolyMatrix(p, rows, cols, entries, "t")

    return build()


class TestExamples:
    def test_unipotent_jordan_block(self):
        p = 3
        m = PolyMatrix(p, 2, 2, [[t(p), poly_t(p, [1])], [poly_t(p, []), t(p)]])
        dec = smith_decompose(m)
        facs = dec.invariant_factors()
        assert [f.coeffs for f in facs] == [(1,), (0, 0, 1)]

    def test_zero_matrix(self):
        dec = smith_decompose(PolyMatrix.zero(3, 2, 2))
        assert dec.invariant_factors() == []

    def test_already_diagonal(self):
        p = 5
        tt = t(p)
        m = PolyMatrix(p, 2, 2, [[tt, Polynomial.zero(p, "t")], [Polynomial.zero(p, "t"), tt * tt]])
        _, d, _ = smith_normal_form(m)
        assert d.entries[0][0] == tt and d.entries[1][1] == tt * tt


class TestPostconditions:
    @settings(max_examples=25, deadline=None)
    @given(matrix_strategy())
    def test_snf_contract(self, m):
        u, d, v = smith_normal_form(m)
        assert (u @ m @ v) == d
        assert is_unimodular(u)
        assert is_unimodular(v)
        n = min(m.rows, m.cols)
        diag = [d.entries[i][i] for i in range(n)]
        for i in range(n - 1):
            if not diag[i].is_zero():
                assert diag[i].is_monic()
                assert diag[i].divides(diag[i + 1]) or diag[i + 1].is_zero()
        # off-diagonal clean
        for i in range(d.rows):
            for j in range(d.cols):
                if i != j:
                    assert d.entries[i][j].is_zero()

    @settings(max_examples=25, deadline=None)
    @given(matrix_strategy(max_dim=6, max_deg=3))
    def test_rank_matches_fraction_field(self, m):
        assert smith_decompose(m).rank == rank_fraction_field(m)

    @settings(max_examples=25, deadline=None)
    @given(matrix_strategy(max_dim=6, max_deg=3))
    def test_kernel_vectors_annihilate(self, m):
        for vec in kernel_basis(m):
            assert all(e.is_zero() for e in m.apply(vec))
        assert len(kernel_basis(m)) == m.cols - smith_decompose(m).rank

    @settings(max_examples=25, deadline=None)
    @given(matrix_strategy(max_dim=5, max_deg=2))
    def test_solve_consistency(self, m):
        p = m.p
        probe = [poly_t(p, [1, 1]) for _ in range(m.cols)]
        rhs = m.apply(probe)
        sol = solve_linear(m, rhs)
        assert sol is not None
        assert m.apply(sol) == rhs


class TestSolve:
    def test_unsolvable(self):
        p = 3
        m = PolyMatrix(p, 1, 1, [[t(p)]])
        assert solve_linear(m, [poly_t(p, [1])]) is None

    def test_shape_guard(self):
        with pytest.raises(ShapeMismatch):
            PolyMatrix.zero(3, 2, 2) @ PolyMatrix.zero(3, 3, 3)

import pytest
from hypothesis import given, settings, strategies as st

from charquant.errors import ModulusMismatch, VariableMismatch
from charquant.poly import (
    Polynomial,
    frobenius_decompose,
    frobenius_reassemble,
    hasse_derivative,
    poly_x,
)
from charquant.modp import binom

primes = st.sampled_from([2, 3, 5])


def poly_strategy(p, max_deg=6, var="x"):
    return st.lists(st.integers(0, p - 1), max_size=max_deg + 1).map(
        lambda cs: Polynomial(p, cs, var)
    )


@st.composite
def poly_triple(draw):
    p = draw(primes)
    f = draw(poly_strategy(p))
    g = draw(poly_strategy(p))
    h = draw(poly_strategy(p))
    return f, g, h


class TestRingAxioms:
    @given(poly_triple())
    def test_associativity_and_distributivity(self, fgh):
        f, g, h = fgh
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert (f + g) + h == f + (g + h)

    @given(poly_triple())
    def test_commutativity(self, fgh):
        f, g, _ = fgh
        assert f * g == g * f
        assert f + g == g + f

    @given(poly_triple())
    def test_division_with_remainder(self, fgh):
        f, g, _ = fgh
        if g.is_zero():
            with pytest.raises(ZeroDivisionError):
                divmod(f, g)
            return
        q, r = divmod(f, g)
        assert f == q * g + r
        assert r.is_zero() or r.degree() < g.degree()

    @given(poly_triple())
    def test_gcd_divides_both(self, fgh):
        f, g, _ = fgh
        d = f.gcd(g)
        if d.is_zero():
            assert f.is_zero() and g.is_zero()
        else:
            assert d.divides(f) and d.divides(g)
            assert d.is_monic()


class TestHasse:
    def test_square_at_p3(self):
        f = poly_x(3, [0, 0, 1])
        assert hasse_derivative(f, 1) == poly_x(3, [0, 2])

    def test_constant_killed(self):
        assert hasse_derivative(poly_x(5, [1]), 1).is_zero()

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_pth_power_killed(self, p):
        # C(p, 1) = 0 mod p, checked against the brute binomial
        f = Polynomial.monomial(p, p)
        assert binom(p, 1, p) == 0
        assert hasse_derivative(f, 1).is_zero()

    @given(primes, st.integers(0, 4), st.integers(0, 4), st.data())
    def test_composition_rule(self, p, i, j, data):
        f = data.draw(poly_strategy(p, max_deg=8))
        lhs = hasse_derivative(hasse_derivative(f, j), i)
        rhs = hasse_derivative(f, i + j).scale(binom(i + j, i, p))
        assert lhs == rhs

    def test_negative_order_rejected(self):
        with pytest.raises(ValueError):
            hasse_derivative(poly_x(3, [1]), -1)


class TestFrobenius:
    def test_cube_at_p2(self):
        parts = frobenius_decompose(poly_x(2, [0, 0, 0, 1]))
        assert [g.coeffs for g in parts] == [(), (0, 1)]

    def test_constant(self):
        parts = frobenius_decompose(poly_x(3, [1]))
        assert parts[0].coeffs == (1,) and all(g.is_zero() for g in parts[1:])

    def test_split_by_residue(self):
        parts = frobenius_decompose(poly_x(2, [0, 1, 1]))
        assert [g.coeffs for g in parts] == [(0, 1), (1,)]

    @given(primes, st.data())
    def test_roundtrip(self, p, data):
        f = data.draw(poly_strategy(p, max_deg=3 * p))
        assert frobenius_reassemble(frobenius_decompose(f)) == f

    def test_modulus_mismatch(self):
        with pytest.raises(ModulusMismatch):
            frobenius_decompose(poly_x(3, [1, 1]), 5)


class TestHygiene:
    def test_trimmed_equality(self):
        assert Polynomial(3, [1, 2, 0, 0]) == Polynomial(3, [1, 2])

    def test_variable_mixing_rejected(self):
        with pytest.raises(VariableMismatch):
            Polynomial(3, [1], "x") + Polynomial(3, [1], "t")

    def test_modulus_mixing_rejected(self):
        with pytest.raises(ModulusMismatch):
            Polynomial(3, [1]) * Polynomial(5, [1])

    def test_coeff_string(self):
        f = Polynomial(3, [0, 0, 1], "t")
        assert f.coeff_string() == "0+0*t+1*t^2"

    def test_evaluation(self):
        f = Polynomial(5, [1, 2, 3])
        assert f(2) == (1 + 4 + 12) % 5

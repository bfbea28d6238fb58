"""
Testes da aritmética exata: Q(ζ₈), polinômios de Laurent em q^{1/2} e funções racionais
"""

from fractions import Fraction

import pytest

from errors import NotEvaluable
from scalars import Cyclo8, RationalFunction, Scalar


def q_half(m: int, c=1) -> Scalar:
    return Scalar.monomial(c, 0, m)


class TestCyclo8:
    """Corpo ciclotômico Q(ζ₈)"""

    def test_i_squared_is_minus_one(self):
        i = Cyclo8.root(2)
        assert i * i == Cyclo8((-1, 0, 0, 0))

    def test_root_wraps_modulo_eight(self):
        assert Cyclo8.root(9) == Cyclo8.root(1)
        assert Cyclo8.root(4) == Cyclo8((-1, 0, 0, 0))

    def test_inverse_of_non_monomial(self):
        x = Cyclo8((1, 1, 0, 0))
        assert x * x.inverse() == Cyclo8((1, 0, 0, 0))

    def test_inverse_of_zero_fails(self):
        with pytest.raises(ZeroDivisionError):
            Cyclo8().inverse()

    def test_galois_conjugates_zeta(self):
        assert Cyclo8.root(1).galois(3) == Cyclo8.root(3)
        assert Cyclo8.root(2).galois(3) == Cyclo8.root(6)


class TestScalar:
    """Escalares c·ζ₈^j·q^{m/2}"""

    # ===== RENDERIZAÇÃO =====

    @pytest.mark.parametrize("scalar,text", [
        (Scalar.monomial(1, 0, -2), "q^(-1)"),
        (Scalar.monomial(-1, 0, -2), "-q^(-1)"),
        (Scalar.monomial(1, 0, -1), "q^(-1/2)"),
        (Scalar.monomial(1, 0, 2), "q"),
        (Scalar.monomial(1, 2, 0), "i"),
        (Scalar.monomial(1, 1, 0), "zeta8"),
        (Scalar.monomial(1, 3, 0), "zeta8^3"),
        (Scalar.monomial(1, 4, 0), "-1"),
        (Scalar.monomial(3, 2, 2), "3*i*q"),
        (Scalar.of(Fraction(1, 2)), "1/2"),
        (Scalar.zero(), "0"),
    ])
    def test_render(self, scalar, text):
        assert scalar.render() == text

    def test_render_sum(self):
        assert (Scalar.one() - q_half(-2)).render() == "1 - q^(-1)"

    # ===== DIVISÃO EXATA =====

    def test_exact_division(self):
        a = Scalar.one() - q_half(-2)
        b = Scalar.one() + q_half(-2)
        assert (a * b).exact_div(a) == b

    def test_inexact_division_fails(self):
        with pytest.raises(NotEvaluable):
            Scalar.one().exact_div(Scalar.one() - q_half(-2))

    def test_negative_power_of_monomial(self):
        assert q_half(-2) ** -1 == q_half(2)

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            Scalar.one().exact_div(Scalar.zero())

    def test_sign(self):
        assert Scalar.of(-1).sign() == -1
        assert Scalar.one().sign() == 1
        assert Scalar.monomial(1, 2, 0).sign() is None
        assert q_half(-2).sign() is None

    def test_equality_with_int(self):
        assert Scalar.of(-1) == -1
        assert Scalar.monomial(1, 4, 0) == -1


class TestRationalFunction:
    """Funções racionais em X = q^{-s}"""

    def test_render_inverse_factor(self):
        L = RationalFunction.from_inverse_linear_factors([q_half(-1)])
        assert L.render() == "(1 - q^(-1/2) X)^-1"

    def test_render_negative_and_repeated(self):
        assert RationalFunction.from_inverse_linear_factors([Scalar.of(-1)]).render() == "(1 + X)^-1"
        assert RationalFunction.from_inverse_linear_factors([Scalar.one()] * 2).render() == "(1 - X)^-2"
        assert RationalFunction.from_inverse_linear_factors([]).render() == "1"

    def test_equality_by_cross_multiplication(self):
        factored = RationalFunction.from_inverse_linear_factors([Scalar.one()])
        plain = RationalFunction((Scalar.one(),), (Scalar.one(), Scalar.of(-1)))
        assert factored == plain

    def test_evaluate(self):
        L = RationalFunction.from_inverse_linear_factors([Scalar.one()])
        num, den = L.evaluate(q_half(-1))
        assert num == Scalar.one()
        assert den == Scalar.one() - q_half(-1)

    def test_value_at_pole(self):
        L = RationalFunction.from_inverse_linear_factors([q_half(1)])
        with pytest.raises(NotEvaluable):
            L.value_at(q_half(-1))

    def test_right_half_plane_poles(self):
        assert RationalFunction.from_inverse_linear_factors([q_half(1)]).right_half_plane_poles() == [q_half(1)]
        assert RationalFunction.from_inverse_linear_factors([q_half(-1)]).right_half_plane_poles() == []

    def test_product_merges_factors(self):
        a = RationalFunction.from_inverse_linear_factors([Scalar.one()])
        assert (a * a).render() == "(1 - X)^-2"

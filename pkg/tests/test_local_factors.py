"""
Testes dos fatores locais: ε(1/2), ν_φ, L(s, φ) e γ(1/2)
"""

from fractions import Fraction

import pytest

from endoscopy import involutions
from correspondence import enumerate_parameters
from errors import NotEvaluable, PoleAtHalf
from local_factors import (
    L_and_gamma,
    PsiConductor,
    eps_half,
    eps_half_block,
    eps_minus_part,
    gamma_half_block,
    l_factor,
    nu_char,
    right_half_plane_poles,
)
from params import SGN, TRIVIAL, AbstractLabel, SelfDualType, SimpleBlock, normalize, unr
from scalars import Scalar


class TestRootNumbers:
    """ε(1/2, χ⊠r(a), ψ) = (χ(ϖ)^d)^a·(-χ(ϖ))^{a-1}"""

    @pytest.mark.parametrize("rho,a,expected", [
        (TRIVIAL, 2, -1),
        (SGN, 2, 1),
        (TRIVIAL, 4, -1),
        (SGN, 1, 1),
        (TRIVIAL, 3, 1),
    ])
    def test_conductor_zero(self, psi, rho, a, expected):
        assert eps_half_block(SimpleBlock(rho, a), psi) == expected

    def test_conductor_one(self):
        psi = PsiConductor(d=1, e2=0)
        assert eps_half_block(SimpleBlock(SGN, 2), psi) == 1
        assert eps_half_block(SimpleBlock(SGN, 1), psi) == -1
        assert eps_half_block(SimpleBlock(TRIVIAL, 2), psi) == -1

    def test_even_blocks_closed_form(self, psi):
        """ε = -z e coincide com γ(1/2) pelo quociente de fatores L"""
        for rho, z in ((TRIVIAL, 1), (SGN, -1)):
            for a in range(2, 13, 2):
                block = SimpleBlock(rho, a)
                assert eps_half_block(block, psi) == -z
                assert gamma_half_block(block, psi) == eps_half_block(block, psi)

    def test_abstract_label_uses_declared_frobenius(self, psi):
        rho = AbstractLabel('A', 2, SelfDualType.ORTHOGONAL, eps_half=1, frob_sign=1)
        assert eps_half_block(SimpleBlock(rho, 2), psi) == -1
        rho = AbstractLabel('B', 2, SelfDualType.ORTHOGONAL, eps_half=1, frob_sign=-1)
        assert eps_half_block(SimpleBlock(rho, 2), psi) == 1

    def test_abstract_label_without_frobenius(self, psi):
        rho = AbstractLabel('A', 2, SelfDualType.ORTHOGONAL, eps_half=1)
        with pytest.raises(NotEvaluable):
            eps_half_block(SimpleBlock(rho, 2), psi)

    def test_eps_is_multiplicative(self, psi, phi_pair, phi_double):
        assert eps_half(phi_pair, psi) == -1
        assert eps_half(phi_double, psi) == 1


class TestNu:
    """ν_φ por componente de I⁺"""

    def test_pair(self, psi, phi_pair):
        assert nu_char(phi_pair, psi).signs == (-1, 1)

    def test_chain(self, psi, phi_chain):
        assert nu_char(phi_chain, psi).signs == (-1, -1)

    def test_empty_group(self, psi):
        phi = normalize([(unr(Fraction(1, 4)), 1, 1), (unr(Fraction(3, 4)), 1, 1)])
        assert nu_char(phi, psi).signs == ()

    def test_eps_minus_part_equals_nu_on_involutions(self, psi):
        for n in range(1, 5):
            for phi in enumerate_parameters(n):
                if len(phi.i_plus) != len(phi.blocks):
                    continue
                nu = nu_char(phi, psi)
                for s in involutions(phi):
                    assert eps_minus_part(phi, s, psi) == nu(s.image), (phi.render(), s.render())


class TestLAndGamma:
    """L(s, φ) e γ(1/2, φ, ψ)"""

    def test_l_factor_render(self, phi_pair):
        assert l_factor(normalize([(TRIVIAL, 2, 1)])).render() == "(1 - q^(-1/2) X)^-1"
        assert l_factor(phi_pair).render() == "(1 - q^(-1/2) X)^-1 (1 + q^(-1/2) X)^-1"

    def test_multiplicity_raises_exponent(self, phi_double):
        assert l_factor(phi_double).render() == "(1 - q^(-1/2) X)^-2"

    def test_gamma_of_bounded_pair(self, psi, phi_pair):
        _, gamma = L_and_gamma(phi_pair, psi)
        assert gamma == -1

    def test_gamma_with_non_trivial_quotient(self, psi):
        phi = normalize([(unr(0, Fraction(1, 2)), 2, 1), (unr(0, Fraction(-1, 2)), 2, 1)])
        L, gamma = L_and_gamma(phi, psi)
        assert gamma == 1
        assert right_half_plane_poles(phi) == []
        assert L.render().count('^-1') == 2

    def test_pole_at_half(self, psi):
        phi = normalize([(unr(0, Fraction(1, 2)), 1, 1), (unr(0, Fraction(-1, 2)), 1, 1)])
        with pytest.raises(PoleAtHalf):
            L_and_gamma(phi, psi)

    def test_right_half_plane_pole_for_unbounded(self):
        phi = normalize([(unr(0, Fraction(1, 2)), 1, 1), (unr(0, Fraction(-1, 2)), 1, 1)])
        assert right_half_plane_poles(phi) == [Scalar.monomial(1, 0, 1)]

    def test_abstract_label_has_no_l_factor(self):
        rho = AbstractLabel('A', 2, SelfDualType.SYMPLECTIC, eps_half=1)
        with pytest.raises(NotEvaluable):
            l_factor(normalize([(rho, 1, 1)]))

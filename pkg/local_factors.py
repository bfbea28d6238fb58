"""
Fatores locais exatos (L, ε, γ) para representações de Weil–Deligne
trivialmente ramificadas, e o caráter de números-raiz ν_φ
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from config import get_config
from errors import NotEvaluable, PoleAtHalf
from params import (
    AbstractLabel,
    Character,
    FactorKind,
    Parameter,
    SimpleBlock,
    component_data,
    component_group,
    dual,
    normalize,
)
from scalars import RationalFunction, Scalar

logger = logging.getLogger(__name__)

X_AT_HALF = Scalar.monomial(1, 0, -1)  # q^{-1/2}


@dataclass(frozen=True)
class PsiConductor:
    """Expoente de condutor d de ψ e valuação e2 de 2"""
    d: int = 0
    e2: int = 0

    def __post_init__(self):
        if self.d < 0 or self.e2 < 0:
            raise ValueError("d e e2 devem ser não negativos")

    @classmethod
    def default(cls, e2: Optional[int] = None, d: Optional[int] = None) -> 'PsiConductor':
        """Valores da configuração, com d = 2·e2 quando não informado"""
        settings = get_config().psi
        if d is None:
            d = settings.d if e2 is None else 2 * e2
        if e2 is None:
            e2 = settings.e2
        return cls(d=d, e2=e2)


def eps_half_block(block: SimpleBlock, psi: PsiConductor) -> Scalar:
    """ε(1/2, ρ⊠r(a), ψ) = ε(1/2, ρ, ψ)^a · (-ρ(Frob))^{a-1}"""
    rho, a = block.rho, block.a
    if isinstance(rho, AbstractLabel):
        if not rho.is_self_dual:
            raise NotEvaluable(f"ε não avaliável para rótulo não auto-dual {rho.name}")
        if rho.frob_sign is None:
            raise NotEvaluable(f"rótulo {rho.name} precisa declarar frob=±1")
        return Scalar.of(rho.eps_half ** a * (-rho.frob_sign) ** (a - 1))
    z = rho.value()
    return (z ** psi.d) ** a * (-z) ** (a - 1)


def _sign_of(value: Scalar, what: str) -> int:
    sign = value.sign()
    if sign is None:
        raise NotEvaluable(f"{what} = {value.render()} não é ±1")
    return sign


def nu_char(phi: Parameter, psi: PsiConductor) -> Character:
    """ν_φ: componente ε(1/2, φ_i, ψ) em cada i ∈ I⁺"""
    group = component_group(phi)
    values = tuple(_sign_of(eps_half_block(b, psi), f"ε(1/2, {b.render()})") for b in group.basis)
    return group.character(values)


def eps_half(phi: Parameter, psi: PsiConductor) -> Scalar:
    """ε(1/2, φ, ψ), multiplicativo na soma direta"""
    total = Scalar.one()
    for block, m in phi.blocks:
        total = total * eps_half_block(block, psi) ** m
    return total


def _frobenius_line(block: SimpleBlock) -> Scalar:
    if not block.is_unramified:
        raise NotEvaluable(f"fator L exige caráter não ramificado: {block.render()}")
    return block.rho.value() * Scalar.monomial(1, 0, -(block.a - 1))


def l_factor(phi: Parameter) -> RationalFunction:
    """L(s, φ) = Π (1 - z·q^{-(a-1)/2}·X)^{-m}; só a reta invariante pela monodromia contribui"""
    coeffs = []
    for block, m in phi.blocks:
        coeffs.extend([_frobenius_line(block)] * m)
    return RationalFunction.from_inverse_linear_factors(coeffs)


def _value_at_half(L: RationalFunction, label: str) -> Tuple[Scalar, Scalar]:
    num, den = L.evaluate(X_AT_HALF)
    if den.is_zero():
        raise PoleAtHalf(f"{label} tem polo em s = 1/2")
    return num, den


def L_and_gamma(phi: Parameter, psi: PsiConductor) -> Tuple[RationalFunction, Scalar]:
    """(L(s, φ), γ(1/2, φ, ψ)) com γ(1/2) = ε(1/2)·L(1/2, φ̌)/L(1/2, φ)"""
    L = l_factor(phi)
    L_dual = l_factor(dual(phi))
    num, den = _value_at_half(L, "L(s, φ)")
    num_d, den_d = _value_at_half(L_dual, "L(s, φ̌)")
    ratio = (num_d * den).exact_div(den_d * num)
    gamma = eps_half(phi, psi) * ratio
    logger.debug(f"γ(1/2, {phi.render()}) = {gamma.render()}")
    return L, gamma


def gamma_half_block(block: SimpleBlock, psi: PsiConductor) -> Scalar:
    _, gamma = L_and_gamma(normalize([(block.rho, block.a, 1)]), psi)
    return gamma


def eps_minus_part(phi: Parameter, s, psi: PsiConductor) -> Scalar:
    """ε(1/2, φ^{s=-1}, ψ) = Π ε(1/2, φ_i, ψ)^{k_i}; s fornece ks alinhado aos fatores do centralizador"""
    shape, _, _ = component_data(phi)
    ks: Sequence[int] = s.ks
    partner = {i: j for i, j in phi.j_pairs}
    total = Scalar.one()
    for factor, k in zip(shape.factors, ks):
        if k == 0:
            continue
        total = total * eps_half_block(phi.block(factor.block_index), psi) ** k
        if factor.kind is FactorKind.GENERAL_LINEAR:
            total = total * eps_half_block(phi.block(partner[factor.block_index]), psi) ** k
    return total


def right_half_plane_poles(phi: Parameter) -> list:
    """Fatores de L(s, φ) com polo em Re(s) > 0 (vazio para φ limitado)"""
    return l_factor(phi).right_half_plane_poles()

"""
Descida de Jacquet ao nível de parâmetros: φ ↦ φ₋ trocando ρ⊠r(a) por ρ⊠r(a-2),
a sequência exata 1 → 𝒯 → 𝒮_φ → 𝒮_{φ₋} → 1 e a fórmula para o parâmetro
realçado do módulo de Jacquet
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from endoscopy import EndoDatum, InvolutionSignature, factorize, make_signature
from errors import BadA, BlockNotPresent, ChoiceInvalid, InvalidBlock
from local_factors import PsiConductor, nu_char
from params import (
    AbstractLabel,
    Character,
    ComponentGroup,
    EnhancedParameter,
    GroupElement,
    Parameter,
    SimpleBlock,
    component_data,
    component_group,
    flags,
    normalize,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DescentCase:
    tag: str  # 'Case1' | 'Case2' | 'Case3'
    partner: Optional[SimpleBlock] = None

    def render(self) -> str:
        return f"{self.tag}({self.partner.render()})" if self.partner else self.tag


@dataclass(frozen=True)
class KernelT:
    """Subgrupo 𝒯 de 𝒮_φ: trivial, diagonal em {i₀, i₁} ou coordenada em i₀"""
    kind: str
    group: ComponentGroup
    slots: Tuple[int, ...] = ()

    @property
    def order(self) -> int:
        return 1 if self.kind == 'trivial' else 2

    def elements(self) -> List[GroupElement]:
        out = [self.group.identity()]
        if self.kind != 'trivial':
            out.append(self.group.element(tuple(-1 if k in self.slots else 1 for k in range(self.group.rank))))
        return out

    def render(self) -> str:
        names = ','.join(self.group.basis[k].render() for k in self.slots)
        return self.kind if self.kind == 'trivial' else f"{self.kind}{{{names}}}"


@dataclass(frozen=True)
class DescentMap:
    """Para cada slot de 𝒮_{φ₋}, os slots de 𝒮_φ cujo produto o determina"""
    source: ComponentGroup
    target: ComponentGroup
    sources: Tuple[Tuple[int, ...], ...]

    def __call__(self, x: GroupElement) -> GroupElement:
        signs = []
        for slots in self.sources:
            value = 1
            for k in slots:
                value *= x[k]
            signs.append(value)
        return self.target.element(signs)

    def basis_preimage(self, j: int) -> GroupElement:
        first = self.sources[j][0]
        return self.source.basis_element(first)

    def push_character(self, chi: Character) -> Character:
        """Caráter descido (bem definido quando χ é trivial em 𝒯)"""
        return self.target.character(tuple(chi(self.basis_preimage(j)) for j in range(self.target.rank)))

    def pull_character(self, chi_minus: Character) -> Character:
        return self.source.character(tuple(chi_minus(self(self.source.basis_element(k))) for k in range(self.source.rank)))


def _lower(block: SimpleBlock) -> SimpleBlock:
    return SimpleBlock(block.rho, block.a - 2)


def descend_param(phi: Parameter, block: SimpleBlock) -> Tuple[Parameter, DescentCase]:
    if block.a < 2:
        raise BadA(f"descida exige a >= 2 (recebido {block.a})")
    i0 = phi.index_of(block)
    if i0 is None:
        raise BlockNotPresent(f"{block.render()} não está em Jord(φ)")
    if i0 not in phi.i_plus or phi.mult(i0) != 1:
        raise InvalidBlock(f"descida definida só para blocos simpléticos sem multiplicidade: {block.render()}")

    if block.a == 2:
        case = DescentCase('Case3')
    elif phi.multiplicity_of(_lower(block)):
        case = DescentCase('Case2', _lower(block))
    else:
        case = DescentCase('Case1')

    entries = []
    for b, m in phi.blocks:
        if b == block:
            if block.a > 2:
                entries.append((b.rho, b.a - 2, 1))
        else:
            entries.append((b.rho, b.a, m))
    return normalize(entries), case


def _require_discrete(phi: Parameter) -> None:
    if not flags(phi).discrete:
        raise InvalidBlock(f"{phi.render()} não é discreto")


def component_descent(phi: Parameter, block: SimpleBlock) -> Tuple[DescentMap, KernelT]:
    _require_discrete(phi)
    phi_minus, case = descend_param(phi, block)
    source = component_group(phi)
    target = component_group(phi_minus)
    i0 = source.slot(block)
    sources = []
    for b in target.basis:
        if block.a > 2 and b == _lower(block):
            slots = (i0,) if case.tag == 'Case1' else (i0, source.slot(b))
        else:
            slots = (source.slot(b),)
        sources.append(slots)

    if case.tag == 'Case1':
        kernel = KernelT('trivial', source)
    elif case.tag == 'Case2':
        kernel = KernelT('diagonal', source, tuple(sorted((i0, source.slot(case.partner)))))
    else:
        kernel = KernelT('coordinate', source, (i0,))
    return DescentMap(source, target, tuple(sources)), kernel


def central_sign_of(block: SimpleBlock) -> int:
    """ω_ρ(-1): 1 para ρ não ramificado (−1 é unidade)"""
    if isinstance(block.rho, AbstractLabel):
        return block.rho.central_sign
    return 1


@dataclass(frozen=True)
class ChoiceEntry:
    block: SimpleBlock
    case: DescentCase
    kernel: KernelT
    alpha_prime: int
    alpha_double_prime: int


def valid_choices(phi: Parameter, chi: Character, psi: PsiConductor) -> List[ChoiceEntry]:
    """Blocos (ρ, a) com ρ não ramificado, a >= 2 e χν_φ trivial em 𝒯"""
    _require_discrete(phi)
    if phi.rank <= 1:
        return []
    chi_nu = chi * nu_char(phi, psi)
    choices = []
    for block in phi.plus_blocks:
        if not block.is_unramified or block.a < 2:
            continue
        _, kernel = component_descent(phi, block)
        if all(chi_nu(t) == 1 for t in kernel.elements()):
            _, case = descend_param(phi, block)
            choices.append(ChoiceEntry(block, case, kernel, 1, central_sign_of(block)))
        else:
            logger.debug(f"{block.render()} rejeitado: χν não trivial em 𝒯 = {kernel.render()}")
    return choices


def jacquet_enhanced(phi: Parameter, chi: Character, block: SimpleBlock, psi: PsiConductor) -> EnhancedParameter:
    """(φ₋, (χν_φ)₋·ν_{φ₋})"""
    if block not in [c.block for c in valid_choices(phi, chi, psi)]:
        raise ChoiceInvalid(f"{block.render()} não é escolha válida para χ = {chi.render()}")
    descent, _ = component_descent(phi, block)
    phi_minus = descent_target(phi, block)
    chi_nu_minus = descent.push_character(chi * nu_char(phi, psi))
    return EnhancedParameter(phi_minus, chi_nu_minus * nu_char(phi_minus, psi))


def descent_target(phi: Parameter, block: SimpleBlock) -> Parameter:
    return descend_param(phi, block)[0]


def descended_signature(phi: Parameter, s: InvolutionSignature, block: SimpleBlock) -> InvolutionSignature:
    """Imagem s₋ de s em φ₋: o slot (ρ, a-2) acumula os k de i₀ (e de i₁ no caso 2)"""
    phi_minus, _ = descend_param(phi, block)
    shape, _, _ = component_data(phi)
    k_of: Dict[SimpleBlock, int] = {}
    for factor, k in zip(shape.factors, make_signature(phi, s.ks).ks):
        k_of[phi.block(factor.block_index)] = k
    k_block = k_of.pop(block)
    if block.a > 2:
        lower = _lower(block)
        k_of[lower] = k_of.get(lower, 0) + k_block
    shape_minus, _, _ = component_data(phi_minus)
    return make_signature(phi_minus, (k_of[phi_minus.block(f.block_index)] for f in shape_minus.factors))


def endoscopic_descent(phi: Parameter, s: InvolutionSignature, block: SimpleBlock) -> Tuple[EndoDatum, Parameter, Parameter]:
    """Desce o lado (φ′ ou φ″) que contém (ρ, a)"""
    i0 = phi.index_of(block)
    if i0 is None:
        raise BlockNotPresent(f"{block.render()} não está em Jord(φ)")
    s = make_signature(phi, s.ks)
    datum, phi_prime, phi_double_prime = factorize(phi, s)
    shape, _, _ = component_data(phi)
    k = next(k for f, k in zip(shape.factors, s.ks) if f.block_index == i0)
    d = block.rho.dim
    if k:
        lowered, _ = descend_param(phi_double_prime, block)
        return EndoDatum(datum.n_prime, datum.n_double_prime - d), phi_prime, lowered
    lowered, _ = descend_param(phi_prime, block)
    return EndoDatum(datum.n_prime - d, datum.n_double_prime), lowered, phi_double_prime


def descent_chains(phi: Parameter) -> Iterator[Tuple[SimpleBlock, ...]]:
    """Todas as cadeias de descida maximais (ignora a condição em χ)"""
    if not flags(phi).discrete:
        yield ()
        return
    candidates = [b for b in phi.plus_blocks if b.is_unramified and b.a >= 2]
    if phi.rank <= 1 or not candidates:
        yield ()
        return
    for block in candidates:
        phi_minus, _ = descend_param(phi, block)
        for tail in descent_chains(phi_minus):
            yield (block,) + tail

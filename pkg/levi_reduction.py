"""
Reduções ao nível de parâmetros: suporte temperado (Langlands), paridade boa,
suporte discreto, e a torre de centralizadores W_φ → 𝔑_φ → R_φ
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Set, Tuple, Union

from errors import NotBounded
from params import (
    Character,
    ComponentGroup,
    GroupElement,
    Parameter,
    SimpleBlock,
    component_group,
    flags,
    normalize,
)
from weyl import SignedPermutation, all_elements

logger = logging.getLogger(__name__)

BlockContent = Tuple[Tuple[SimpleBlock, int], ...]


@dataclass(frozen=True)
class LeviShape:
    sp_rank: int
    gl_sizes: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return self.sp_rank + sum(self.gl_sizes)

    def render(self) -> str:
        return f"({self.sp_rank};[{','.join(str(g) for g in self.gl_sizes)}])"


@dataclass(frozen=True)
class GLPart:
    """Multiconjunto de blocos de um fator GL, com expoente de positividade"""
    blocks: BlockContent
    exponent: Fraction = Fraction(0)

    @property
    def size(self) -> int:
        return sum(b.dim * m for b, m in self.blocks)

    def duals(self) -> BlockContent:
        return tuple((b.dual(), m) for b, m in self.blocks)

    def render(self) -> str:
        if not self.blocks:
            return '0'
        return ' + '.join(b.render() if m == 1 else f"{m}*{b.render()}" for b, m in self.blocks)


@dataclass(frozen=True)
class TemperedSupport:
    phi0: Parameter
    gl_parts: Tuple[GLPart, ...]
    shape: LeviShape
    iso: Tuple[int, ...]  # slot de 𝒮_{φ₀} → slot de 𝒮_φ

    def transport(self, chi0: Character, phi: Parameter) -> Character:
        """Leva um caráter de 𝒮_{φ₀} a 𝒮_φ pela identificação que preserva a base"""
        values = [1] * len(phi.i_plus)
        for slot, target in enumerate(self.iso):
            values[target] = chi0[slot]
        return component_group(phi).character(values)


def tempered_support(phi: Parameter) -> TemperedSupport:
    bounded = []
    by_exponent: Dict[Fraction, List[Tuple[SimpleBlock, int]]] = {}
    for block, m in phi.blocks:
        if block.rho.is_bounded:
            bounded.append((block.rho, block.a, m))
        elif block.rho.texp < 0:
            # representante com |·|^x, x = -texp > 0
            by_exponent.setdefault(-block.rho.texp, []).append((block, m))
    phi0 = normalize(bounded)
    parts = tuple(
        GLPart(tuple(sorted(by_exponent[x], key=lambda item: item[0].sort_key())), x)
        for x in sorted(by_exponent, reverse=True)
    )
    shape = LeviShape(phi0.rank, tuple(p.size for p in parts))
    full_basis = phi.plus_blocks
    iso = tuple(full_basis.index(b) for b in phi0.plus_blocks)
    return TemperedSupport(phi0, parts, shape, iso)


def reassemble_tempered(support: TemperedSupport) -> Parameter:
    entries = list(support.phi0.entries())
    for part in support.gl_parts:
        for b, m in part.blocks + part.duals():
            entries.append((b.rho, b.a, m))
    return normalize(entries)


def _require_bounded(phi: Parameter) -> None:
    if not flags(phi).bounded:
        raise NotBounded(f"{phi.render()} não é limitado")


def good_parity_split(phi: Parameter) -> Tuple[Parameter, GLPart]:
    """φ = φ_gp ⊕ (φ_ngp ⊕ φ_ngp^∨)"""
    _require_bounded(phi)
    phi_gp = normalize((phi.block(i).rho, phi.block(i).a, phi.mult(i)) for i in phi.i_plus)
    content = [(phi.block(i), phi.mult(i) // 2) for i in phi.i_minus]
    content += [(phi.block(i), phi.mult(i)) for i, _ in phi.j_pairs]
    content.sort(key=lambda item: item[0].sort_key())
    return phi_gp, GLPart(tuple(content))


def reassemble_good_parity(phi_gp: Parameter, phi_ngp: GLPart) -> Parameter:
    entries = list(phi_gp.entries())
    for b, m in phi_ngp.blocks + phi_ngp.duals():
        entries.append((b.rho, b.a, m))
    return normalize(entries)


# ===== TORRE DE CENTRALIZADORES =====

@dataclass(frozen=True)
class TowerFactor:
    """Fator de W_φ: 'O' (bloco de I⁺), 'C' (bloco de I⁻) ou 'S' (par de J)"""
    kind: str
    rank: int
    block: SimpleBlock

    @property
    def order(self) -> int:
        if self.kind == 'S':
            return math.factorial(self.rank)
        return 2 ** self.rank * math.factorial(self.rank)

    def generators(self) -> List[SignedPermutation]:
        first = 2 if self.kind == 'S' else 1
        return [SignedPermutation.generator(self.rank, i) for i in range(first, self.rank + 1)]

    def elements(self) -> Iterator[SignedPermutation]:
        for w in all_elements(self.rank):
            if self.kind != 'S' or w.sign_weight == 0:
                yield w

    def render(self) -> str:
        name = {'O': 'W(O)', 'C': 'W(C)', 'S': 'S'}[self.kind]
        return f"{name}_{self.rank}[{self.block.render()}]"


@dataclass(frozen=True)
class TowerGroups:
    factors: Tuple[TowerFactor, ...]
    ambient: ComponentGroup           # 𝒮_φ
    odd_basis: Tuple[SimpleBlock, ...]  # base de 𝒮_{φ₀}
    r_basis: Tuple[SimpleBlock, ...]    # base de R_φ (I⁺_even)

    @property
    def weyl_order(self) -> int:
        return math.prod(f.order for f in self.factors)

    @property
    def normalizer_order(self) -> int:
        return self.weyl_order * 2 ** len(self.odd_basis)

    def p_image(self, factor_index: int, w: SignedPermutation) -> GroupElement:
        """p: sinal total no slot i para fatores O de blocos de I⁺_even; trivial nos demais"""
        factor = self.factors[factor_index]
        signs = [1] * self.ambient.rank
        if factor.kind == 'O' and factor.block in self.r_basis:
            signs[self.ambient.slot(factor.block)] = (-1) ** w.sign_weight
        return self.ambient.element(signs)

    def p_generator_images(self) -> List[Tuple[int, SignedPermutation, GroupElement]]:
        out = []
        for k, factor in enumerate(self.factors):
            for g in factor.generators():
                out.append((k, g, self.p_image(k, g)))
        return out

    def r_projection(self, x: GroupElement) -> Tuple[int, ...]:
        return tuple(x.at(b) for b in self.r_basis)

    def is_p_surjective(self) -> bool:
        """O subgrupo gerado pelas imagens de p projeta-se sobre todo R_φ"""
        reached: Set[Tuple[int, ...]] = {(1,) * len(self.r_basis)}
        images = {self.r_projection(x) for _, _, x in self.p_generator_images()}
        frontier = list(reached)
        while frontier:
            current = frontier.pop()
            for img in images:
                nxt = tuple(a * b for a, b in zip(current, img))
                if nxt not in reached:
                    reached.add(nxt)
                    frontier.append(nxt)
        return len(reached) == 2 ** len(self.r_basis)

    def weyl_elements(self) -> Iterator[Tuple[SignedPermutation, ...]]:
        return itertools.product(*(list(f.elements()) for f in self.factors))

    def normalizer_elements(self) -> Iterator[Tuple[Tuple[SignedPermutation, ...], Tuple[int, ...]]]:
        """𝔑_φ = W_φ × μ₂^{I⁺_odd} pela cisão canônica"""
        odd_signs = list(itertools.product((1, -1), repeat=len(self.odd_basis)))
        for w in self.weyl_elements():
            for signs in odd_signs:
                yield w, signs


@dataclass(frozen=True)
class DiscreteSupport:
    phi0: Parameter
    gl_content: GLPart
    shape: LeviShape
    tower: TowerGroups


def discrete_support(phi: Parameter) -> DiscreteSupport:
    _require_bounded(phi)
    odd = [i for i in phi.i_plus if phi.mult(i) % 2 == 1]
    phi0 = normalize((phi.block(i).rho, phi.block(i).a, 1) for i in odd)

    content: List[Tuple[SimpleBlock, int]] = []
    factors: List[TowerFactor] = []
    for i in phi.i_plus:
        half = phi.mult(i) // 2
        if half:
            content.append((phi.block(i), half))
            factors.append(TowerFactor('O', half, phi.block(i)))
    for i in phi.i_minus:
        half = phi.mult(i) // 2
        content.append((phi.block(i), half))
        factors.append(TowerFactor('C', half, phi.block(i)))
    for i, _ in phi.j_pairs:
        content.append((phi.block(i), phi.mult(i)))
        factors.append(TowerFactor('S', phi.mult(i), phi.block(i)))
    content.sort(key=lambda item: item[0].sort_key())

    gl_sizes = tuple(b.dim for b, m in content for _ in range(m))
    tower = TowerGroups(
        factors=tuple(factors),
        ambient=component_group(phi),
        odd_basis=phi0.plus_blocks,
        r_basis=tuple(phi.block(i) for i in phi.i_plus if phi.mult(i) % 2 == 0),
    )
    logger.debug(f"suporte discreto de {phi.render()}: φ₀ = {phi0.render()}, |W_φ| = {tower.weyl_order}")
    return DiscreteSupport(phi0, GLPart(tuple(content)), LeviShape(phi0.rank, gl_sizes), tower)


def reassemble_discrete(support: DiscreteSupport) -> Parameter:
    entries = list(support.phi0.entries())
    for b, m in support.gl_content.blocks + support.gl_content.duals():
        entries.append((b.rho, b.a, m))
    return normalize(entries)


def restrict_char(chi: Character, support: Union[DiscreteSupport, TemperedSupport]) -> Character:
    """Pullback de χ pela inclusão 𝒮_{φ₀} ↪ 𝒮_φ"""
    target = component_group(support.phi0)
    if isinstance(support, TemperedSupport):
        return target.character(tuple(chi[slot] for slot in support.iso))
    return target.character(tuple(chi.at(b) for b in target.basis))

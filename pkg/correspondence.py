"""
Correspondência de parâmetros Mp(2n) ↔ SO(2n+1): χ° = χ·ν_φ, sinais centrais,
tabela de base em posto ≤ 1, pertinência aos blocos de Iwahori e o verificador
recursivo do pipeline (Langlands → paridade boa → LIR → descida → base)
"""
from __future__ import annotations

import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import pandas as pd

from config import get_config
from endoscopy import (
    PacketMember,
    StableTransfer,
    VirtualCharacter,
    involutions,
    packet_fourier,
    t_phi_s,
)
from errors import NotEvaluable, OutsideBlock, ParameterError, RankBound
from jacquet_descent import (
    component_descent,
    descend_param,
    descended_signature,
    endoscopic_descent,
    jacquet_enhanced,
    valid_choices,
)
from levi_reduction import discrete_support, good_parity_split, restrict_char, tempered_support
from local_factors import PsiConductor, gamma_half_block, nu_char
from params import (
    EMPTY,
    SGN,
    TRIVIAL,
    Character,
    EnhancedParameter,
    Parameter,
    component_data,
    component_group,
    enhance,
    flags,
    normalize,
    unr,
)
from scalars import Scalar
from weyl import t_invariant

logger = logging.getLogger(__name__)


class Side(Enum):
    PLUS = 'IwahoriPlus'
    MINUS = 'IwahoriMinus'
    OUTSIDE = 'Outside'


class Direction(Enum):
    MP_TO_SO = 'MpToSO'
    SO_TO_MP = 'SOToMp'


def tw_transfer(phi: Parameter, chi: Character, psi: PsiConductor,
                direction: Direction = Direction.MP_TO_SO) -> EnhancedParameter:
    """Nos dois sentidos multiplica por ν_φ (involução, pois ν_φ² = 1)"""
    return EnhancedParameter(phi, chi * nu_char(phi, psi))


@dataclass(frozen=True)
class SideRecord:
    central_sign: int
    so_side: int


def central_sign_and_sides(phi: Parameter, chi: Character, psi: PsiConductor) -> SideRecord:
    _, _, z_phi = component_data(phi)
    chi_nu = chi * nu_char(phi, psi)
    chi_so = tw_transfer(phi, chi, psi).chi
    return SideRecord(central_sign=chi_nu(z_phi), so_side=chi_so(z_phi))


@dataclass(frozen=True)
class BaseTableEntry:
    enhanced: EnhancedParameter
    side: Side
    name: str


def base_table(psi: Optional[PsiConductor] = None) -> List[BaseTableEntry]:
    """Entradas de posto ≤ 1; χ obtido resolvendo χ° = χ·ν_φ contra o lado SO
    (χ° trivial no caso +, não trivial no caso -)"""
    psi = psi or PsiConductor.default()
    entries = [BaseTableEntry(enhance(EMPTY, ()), Side.PLUS, 'trivial')]
    layout = [
        (TRIVIAL, 1, Side.PLUS, 'st(1)'),
        (SGN, 1, Side.PLUS, 'st(sgn)'),
        (TRIVIAL, -1, Side.MINUS, 'weil-odd'),
        (SGN, -1, Side.OUTSIDE, 'other-supercuspidal'),
    ]
    for xi, chi_so, side, name in layout:
        phi = normalize([(xi, 2, 1)])
        nu = nu_char(phi, psi)
        entries.append(BaseTableEntry(enhance(phi, (chi_so * nu[0],)), side, name))
    return entries


# ===== RELATÓRIO DE VERIFICAÇÃO =====

@dataclass(frozen=True)
class DerivationNode:
    stage: str
    enhanced: EnhancedParameter
    chi_so: Character
    children: Tuple['DerivationNode', ...] = ()
    choices: Tuple[str, ...] = ()
    path_independent: bool = True

    def trace(self) -> List[str]:
        """Estágios ao longo do primeiro caminho"""
        out = [self.stage]
        if self.children:
            out.extend(self.children[0].trace())
        return out

    def to_dict(self) -> dict:
        return {
            'stage': self.stage,
            'param': self.enhanced.param.render(),
            'chi': self.enhanced.chi.render(),
            'chiSO': self.chi_so.render(),
            'choices': list(self.choices),
            'pathIndependent': self.path_independent,
            'children': [c.to_dict() for c in self.children],
        }


@dataclass(frozen=True)
class VerifyReport:
    enhanced: EnhancedParameter
    tree: DerivationNode
    derived: Character
    closed_form: Character
    agreement: bool
    path_independent: bool
    side: Side

    @property
    def stages(self) -> List[str]:
        return self.tree.trace()

    def to_dict(self) -> dict:
        return {
            'param': self.enhanced.param.render(),
            'chi': self.enhanced.chi.render(),
            'derivedChiSO': self.derived.render(),
            'closedFormChiSO': self.closed_form.render(),
            'agreement': self.agreement,
            'pathIndependent': self.path_independent,
            'side': self.side.value,
            'stages': self.stages,
            'tree': self.tree.to_dict(),
        }


def _require_inertia_trivial(phi: Parameter) -> None:
    for block, _ in phi.blocks:
        if not block.is_unramified:
            raise NotEvaluable(f"{block.render()} não é trivial na inércia")


class PipelineService:
    """Busca de pertinência e derivação de χ° com memoização compartilhada"""

    def __init__(self, psi: Optional[PsiConductor] = None, workers: Optional[int] = None):
        self.psi = psi or PsiConductor.default()
        self.workers = workers or get_config().enumeration.workers
        self._cache: Dict[tuple, Side] = {}
        self._derivations: Dict[tuple, DerivationNode] = {}
        self._lock = threading.Lock()
        self._base = {(e.enhanced.param, e.enhanced.chi.signs): e for e in base_table(self.psi)}

    @staticmethod
    def _key(phi: Parameter, chi: Character) -> tuple:
        return (phi, chi.signs)

    def _remember(self, table: dict, key: tuple, value):
        with self._lock:
            return table.setdefault(key, value)

    def clear_cache(self) -> None:
        with self._lock:
            self._cache.clear()
            self._derivations.clear()

    # ----- pertinência -----

    def block_membership(self, phi: Parameter, chi: Character) -> Side:
        _require_inertia_trivial(phi)
        side = self._membership(phi, chi)
        if side is not Side.OUTSIDE:
            expected = 1 if side is Side.PLUS else -1
            sign = central_sign_and_sides(phi, chi, self.psi).central_sign
            if sign != expected:
                logger.warning(f"sinal central {sign} incoerente com {side.value} em {phi.render()}")
        return side

    def _membership(self, phi: Parameter, chi: Character) -> Side:
        key = self._key(phi, chi)
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        side = self._classify(phi, chi)
        return self._remember(self._cache, key, side)

    def _classify(self, phi: Parameter, chi: Character) -> Side:
        f = flags(phi)
        if not f.bounded:
            support = tempered_support(phi)
            return self._membership(support.phi0, restrict_char(chi, support))
        if not f.good_parity:
            phi_gp, _ = good_parity_split(phi)
            return self._membership(phi_gp, component_group(phi_gp).character(chi.signs))
        if not f.discrete:
            support = discrete_support(phi)
            return self._membership(support.phi0, restrict_char(chi, support))
        if phi.rank <= 1:
            entry = self._base.get(self._key(phi, chi))
            return entry.side if entry else Side.OUTSIDE
        sides = []
        for choice in valid_choices(phi, chi, self.psi):
            lowered = jacquet_enhanced(phi, chi, choice.block, self.psi)
            sides.append(self._membership(lowered.param, lowered.chi))
        if not sides:
            return Side.OUTSIDE
        if len(set(sides)) > 1:
            logger.warning(f"escolhas de descida discordam em {phi.render()}: {[s.value for s in sides]}")
        return sides[0]

    # ----- derivação de χ° -----

    def verify_pipeline(self, phi: Parameter, chi: Character) -> VerifyReport:
        side = self.block_membership(phi, chi)
        if side is Side.OUTSIDE:
            raise OutsideBlock(f"({phi.render()}, {chi.render()}) fora dos blocos de Iwahori")
        tree = self._derive(phi, chi)
        closed = tw_transfer(phi, chi, self.psi).chi
        agreement = tree.chi_so == closed
        if not agreement:
            logger.warning(f"χ° derivado {tree.chi_so.render()} ≠ χν_φ {closed.render()} em {phi.render()}")
        return VerifyReport(EnhancedParameter(phi, chi), tree, tree.chi_so, closed, agreement,
                            _all_independent(tree), side)

    def _derive(self, phi: Parameter, chi: Character) -> DerivationNode:
        key = self._key(phi, chi)
        with self._lock:
            if key in self._derivations:
                return self._derivations[key]
        node = self._derive_uncached(phi, chi)
        return self._remember(self._derivations, key, node)

    def _derive_uncached(self, phi: Parameter, chi: Character) -> DerivationNode:
        enhanced = EnhancedParameter(phi, chi)
        group = component_group(phi)
        f = flags(phi)

        if not f.bounded:
            support = tempered_support(phi)
            child = self._derive(support.phi0, restrict_char(chi, support))
            return DerivationNode('Langlands', enhanced, support.transport(child.chi_so, phi), (child,))

        if not f.good_parity:
            phi_gp, _ = good_parity_split(phi)
            child = self._derive(phi_gp, component_group(phi_gp).character(chi.signs))
            return DerivationNode('GoodParity', enhanced, group.character(child.chi_so.signs), (child,))

        if not f.discrete:
            return self._derive_lir(phi, chi)

        if phi.rank <= 1:
            entry = self._base.get(self._key(phi, chi))
            if entry is None or entry.side is Side.OUTSIDE:
                raise OutsideBlock(f"({phi.render()}, {chi.render()}) não está na tabela de base")
            values = (1,) * group.rank if entry.side is Side.PLUS else (-1,) * group.rank
            return DerivationNode('Base', enhanced, group.character(values), choices=(entry.name,))

        return self._derive_descent(phi, chi)

    def _derive_lir(self, phi: Parameter, chi: Character) -> DerivationNode:
        """χ° em 𝒮_{φ₀} por recursão; parte R_φ por γ(1/2, y(w, φ), ψ)^{-1} nos geradores de p"""
        support = discrete_support(phi)
        child = self._derive(support.phi0, restrict_char(chi, support))
        group = component_group(phi)
        values = {b: child.chi_so.at(b) for b in support.phi0.plus_blocks}
        for k, generator, x in support.tower.p_generator_images():
            if x.is_identity:
                continue
            slots = [j for j in range(group.rank) if x[j] == -1]
            if len(slots) != 1:
                raise ParameterError(f"imagem de p com suporte {slots} não previsto")
            block = group.basis[slots[0]]
            gamma = gamma_half_block(block, self.psi) ** t_invariant(generator)
            inverse = Scalar.one().exact_div(gamma).sign()
            if inverse is None:
                raise NotEvaluable(f"γ(1/2, {block.render()}) não é ±1")
            values[block] = chi(x) * inverse
        chi_so = group.character(tuple(values[b] for b in group.basis))
        return DerivationNode('LIR', EnhancedParameter(phi, chi), chi_so, (child,))

    def _derive_descent(self, phi: Parameter, chi: Character) -> DerivationNode:
        """Inverte r(σ_{φ,χ°}) = σ_{φ₋,χ°₋} sobre todas as escolhas válidas"""
        children, candidates, labels = [], [], []
        for block in phi.plus_blocks:
            if not block.is_unramified or block.a < 2:
                continue
            lowered = self.jacquet_via_endoscopy(phi, chi, block)
            if lowered is None:
                continue
            child = self._derive(lowered.param, lowered.chi)
            descent, _ = component_descent(phi, block)
            children.append(child)
            candidates.append(descent.pull_character(child.chi_so))
            labels.append(block.render())
        if not candidates:
            raise OutsideBlock(f"nenhuma descida válida para ({phi.render()}, {chi.render()})")
        independent = all(c == candidates[0] for c in candidates)
        if not independent:
            logger.warning(f"χ° depende da escolha de descida em {phi.render()}")
        return DerivationNode('Descent', EnhancedParameter(phi, chi), candidates[0],
                              tuple(children), tuple(labels), independent)

    def jacquet_via_endoscopy(self, phi: Parameter, chi: Character, block) -> Optional[EnhancedParameter]:
        """Módulo de Jacquet pela expansão endoscópica e inversão de Fourier em 𝒮_{φ₋};
        None quando a expansão não é um único membro do pacote (escolha inválida)"""
        phi_minus, _ = descend_param(phi, block)
        order = component_group(phi).order
        coefficients: Dict = {}
        for s in involutions(phi):
            transfer_sign = t_phi_s(phi, s, self.psi).single_term()[1]
            s_minus = descended_signature(phi, s, block)
            symbol, sign_minus = t_phi_s(phi_minus, s_minus, self.psi).single_term()
            if symbol != StableTransfer(*endoscopic_descent(phi, s, block)):
                logger.critical(f"descida endoscópica não comuta em {phi.render()} / {block.render()}")
                raise ParameterError("descida endoscópica incompatível com a fatoração")
            x_minus = s_minus.image
            weight = Fraction(chi(s.image)) * transfer_sign * sign_minus / order
            coefficients[x_minus] = coefficients.get(x_minus, Fraction(0)) + weight

        group_minus = component_group(phi_minus)
        members = {eta: VirtualCharacter.of(PacketMember(phi_minus, eta)) for eta in group_minus.characters()}
        stable = packet_fourier(phi_minus, 'toStable', members)
        expansion = VirtualCharacter()
        for x_minus, weight in coefficients.items():
            expansion = expansion + stable[x_minus].scale(weight)
        if len(expansion.coeffs) != 1:
            return None
        symbol, coeff = expansion.single_term()
        if coeff != 1:
            return None
        return EnhancedParameter(phi_minus, symbol.chi)

    # ----- execuções exaustivas -----

    def verify_many(self, enhanced: Iterable[EnhancedParameter]) -> List[VerifyReport]:
        """Verifica em paralelo os parâmetros nos blocos de Iwahori, preservando a ordem"""
        candidates = list(enhanced)

        def run(ep: EnhancedParameter) -> Optional[VerifyReport]:
            if self.block_membership(ep.param, ep.chi) is Side.OUTSIDE:
                return None
            return self.verify_pipeline(ep.param, ep.chi)

        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            results = list(pool.map(run, candidates))
        reports = [r for r in results if r is not None]
        logger.info(f"{len(reports)} de {len(candidates)} parâmetros realçados verificados; "
                    f"cache com {len(self._cache)} entradas")
        return reports

    def packet_table(self, phi: Parameter) -> pd.DataFrame:
        """Pacote completo: χ, χ°, sinal central e bloco de cada membro"""
        rows = []
        for chi in component_group(phi).characters():
            record = central_sign_and_sides(phi, chi, self.psi)
            try:
                side = self.block_membership(phi, chi).value
            except NotEvaluable:
                side = 'n/a'
            rows.append({
                'chi': chi.render() or '()',
                'chiSO': tw_transfer(phi, chi, self.psi).chi.render() or '()',
                'centralSign': record.central_sign,
                'soForm': 'V+' if record.so_side == 1 else 'V-',
                'side': side,
            })
        return pd.DataFrame(rows, columns=['chi', 'chiSO', 'centralSign', 'soForm', 'side'])


def _all_independent(node: DerivationNode) -> bool:
    return node.path_independent and all(_all_independent(c) for c in node.children)


_default_service: Optional[PipelineService] = None
_service_lock = threading.Lock()


def get_pipeline_service() -> PipelineService:
    """Instância global do serviço (psi da configuração)"""
    global _default_service
    with _service_lock:
        if _default_service is None:
            _default_service = PipelineService()
        return _default_service


def _service_for(psi: Optional[PsiConductor]) -> PipelineService:
    service = get_pipeline_service()
    if psi is None or psi == service.psi:
        return service
    return PipelineService(psi)


def block_membership(phi: Parameter, chi: Character, psi: Optional[PsiConductor] = None) -> Side:
    return _service_for(psi).block_membership(phi, chi)


def verify_pipeline(phi: Parameter, chi: Character, psi: Optional[PsiConductor] = None) -> VerifyReport:
    return _service_for(psi).verify_pipeline(phi, chi)


def packet_table(phi: Parameter, psi: Optional[PsiConductor] = None) -> pd.DataFrame:
    return _service_for(psi).packet_table(phi)


# ===== ENUMERAÇÃO =====

PHASE_ROTATIONS = {'1': Fraction(0), '-1': Fraction(1, 2), 'i': Fraction(1, 4), '-i': Fraction(3, 4)}


def _candidate_characters(phases: Sequence[str], exponents: Sequence[Fraction]) -> List:
    bound = get_config().enumeration.phase_bound
    chars = []
    for phase in phases:
        if phase not in PHASE_ROTATIONS:
            raise ParameterError(f"fase desconhecida: {phase!r}")
        rot = PHASE_ROTATIONS[phase]
        if bound % rot.denominator:
            raise ParameterError(f"fase {phase} exige limite de fase múltiplo de {rot.denominator}")
        for x in sorted({Fraction(e) for e in exponents} | {-Fraction(e) for e in exponents}):
            chars.append(unr(rot, x))
    return chars


def _multisets(candidates: list, remaining: int, start: int = 0) -> Iterator[List[Tuple[object, int]]]:
    if remaining == 0:
        yield []
        return
    for k in range(start, len(candidates)):
        weight = candidates[k][1]
        for m in range(1, remaining // weight + 1):
            for rest in _multisets(candidates, remaining - m * weight, k + 1):
                yield [(candidates[k], m)] + rest


def enumerate_parameters(n: int, discrete_only: bool = False, bounded_only: bool = False,
                         phases: Sequence[str] = ('1', '-1'),
                         exponents: Sequence[Fraction] = (Fraction(0),)) -> List[Parameter]:
    """Parâmetros trivialmente ramificados de posto n com valores de bloco nas fases dadas"""
    limit = get_config().enumeration.max_rank
    if n < 0 or n > limit:
        raise RankBound(f"posto {n} fora de 0..{limit}")
    candidates = [(chi, a) for chi in _candidate_characters(phases, exponents) for a in range(1, 2 * n + 1)]
    found = set()
    for multiset in _multisets(candidates, 2 * n):
        try:
            phi = normalize((chi, a, m) for (chi, a), m in multiset)
        except ParameterError:
            continue
        f = flags(phi)
        if discrete_only and not f.discrete:
            continue
        if bounded_only and not f.bounded:
            continue
        found.add(phi)
    params = sorted(found, key=lambda p: p.render())
    logger.info(f"posto {n}: {len(params)} parâmetros enumerados")
    return params


def enumerate_enhanced(n: int, **opts) -> Iterator[EnhancedParameter]:
    for phi in enumerate_parameters(n, **opts):
        for chi in component_group(phi).characters():
            yield EnhancedParameter(phi, chi)

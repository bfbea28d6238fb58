"""
Dados endoscópicos elípticos, fatoração de parâmetros por involuções e a
álgebra formal de caracteres da relação de caracteres endoscópica
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Tuple, Union

import numpy as np

from errors import IncompleteTable, InvalidSignature, NotBounded, NotEvaluable
from local_factors import PsiConductor, eps_minus_part
from params import (
    Character,
    FactorKind,
    GroupElement,
    Parameter,
    component_data,
    component_group,
    flags,
    normalize,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EndoDatum:
    n_prime: int
    n_double_prime: int

    def render(self) -> str:
        return f"({self.n_prime},{self.n_double_prime})"


@dataclass(frozen=True)
class InvolutionSignature:
    """Multiplicidade k do autovalor -1 em cada fator do centralizador"""
    ks: Tuple[int, ...]
    image: GroupElement = field(compare=False, default=None)

    def render(self) -> str:
        return ','.join(str(k) for k in self.ks)


def _factor_range(kind: FactorKind, m: int) -> range:
    if kind is FactorKind.SYMPLECTIC:
        return range(0, m + 1, 2)
    return range(0, m + 1)


def signature_image(phi: Parameter, ks: Tuple[int, ...]) -> GroupElement:
    """Imagem em 𝒮_φ: (-1)^{k_i} em cada i ∈ I⁺"""
    shape, group, _ = component_data(phi)
    signs = [1] * group.rank
    for factor, k in zip(shape.factors, ks):
        if factor.kind is FactorKind.ORTHOGONAL:
            signs[group.slot(phi.block(factor.block_index))] = (-1) ** k
    return group.element(signs)


def make_signature(phi: Parameter, ks: Iterable[int]) -> InvolutionSignature:
    """Valida ks contra a forma do centralizador e anexa a imagem"""
    ks = tuple(ks)
    shape, _, _ = component_data(phi)
    if len(ks) != len(shape.factors):
        raise InvalidSignature(f"esperados {len(shape.factors)} valores de k, recebidos {len(ks)}")
    for factor, k in zip(shape.factors, ks):
        if k not in _factor_range(factor.kind, factor.size):
            raise InvalidSignature(f"k = {k} inválido para o fator {factor.render()}")
    return InvolutionSignature(ks, signature_image(phi, ks))


def involutions(phi: Parameter) -> List[InvolutionSignature]:
    shape, _, _ = component_data(phi)
    ranges = [_factor_range(f.kind, f.size) for f in shape.factors]
    return [InvolutionSignature(ks, signature_image(phi, ks)) for ks in itertools.product(*ranges)]


def factorize(phi: Parameter, s: InvolutionSignature) -> Tuple[EndoDatum, Parameter, Parameter]:
    """(datum, φ′, φ″): autoespaços +1 e -1 de s"""
    s = make_signature(phi, s.ks)
    shape, _, _ = component_data(phi)
    partner = dict(phi.j_pairs)
    minus = {}
    for factor, k in zip(shape.factors, s.ks):
        if k:
            minus[factor.block_index] = k
            if factor.kind is FactorKind.GENERAL_LINEAR:
                minus[partner[factor.block_index]] = k
    plus_entries, minus_entries = [], []
    for i, (block, m) in enumerate(phi.blocks):
        k = minus.get(i, 0)
        if k:
            minus_entries.append((block.rho, block.a, k))
        if m - k:
            plus_entries.append((block.rho, block.a, m - k))
    phi_prime = normalize(plus_entries)
    phi_double_prime = normalize(minus_entries)
    return EndoDatum(phi_prime.rank, phi_double_prime.rank), phi_prime, phi_double_prime


# ===== CARACTERES VIRTUAIS =====

@dataclass(frozen=True)
class PacketMember:
    param: Parameter
    chi: Character

    @cached_property
    def _hash(self) -> int:
        return hash((self.param, self.chi))

    def __hash__(self) -> int:
        return self._hash

    def render(self) -> str:
        return f"pi[{self.param.render()}; {self.chi.render()}]"


@dataclass(frozen=True)
class StableTransfer:
    datum: EndoDatum
    phi_prime: Parameter
    phi_double_prime: Parameter

    @cached_property
    def _hash(self) -> int:
        return hash((self.datum, self.phi_prime, self.phi_double_prime))

    def __hash__(self) -> int:
        return self._hash

    def render(self) -> str:
        return f"Trans{self.datum.render()}[{self.phi_prime.render()} | {self.phi_double_prime.render()}]"


Symbol = Union[PacketMember, StableTransfer]


class VirtualCharacter:
    """Combinação linear formal, com coeficientes racionais exatos, de símbolos"""

    __slots__ = ('coeffs',)

    def __init__(self, coeffs: Mapping[Symbol, Union[int, Fraction]] = None):
        self.coeffs: Dict[Symbol, Fraction] = {
            sym: Fraction(c) for sym, c in (coeffs or {}).items() if c
        }

    @classmethod
    def of(cls, symbol: Symbol, coeff: Union[int, Fraction] = 1) -> 'VirtualCharacter':
        return cls({symbol: coeff})

    @classmethod
    def exact(cls, coeffs: Dict[Symbol, Fraction]) -> 'VirtualCharacter':
        """Sem conversão: os coeficientes já são Fraction não nulos"""
        vc = cls.__new__(cls)
        vc.coeffs = coeffs
        return vc

    def __add__(self, other: 'VirtualCharacter') -> 'VirtualCharacter':
        out = dict(self.coeffs)
        for sym, c in other.coeffs.items():
            out[sym] = out.get(sym, 0) + c
        return VirtualCharacter(out)

    def __neg__(self) -> 'VirtualCharacter':
        return self.scale(-1)

    def __sub__(self, other: 'VirtualCharacter') -> 'VirtualCharacter':
        return self + (-other)

    def scale(self, c: Union[int, Fraction]) -> 'VirtualCharacter':
        return VirtualCharacter({sym: v * c for sym, v in self.coeffs.items()})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, VirtualCharacter) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self) -> bool:
        return not self.coeffs

    def single_term(self) -> Tuple[Symbol, Fraction]:
        if len(self.coeffs) != 1:
            raise ValueError("caráter virtual não tem termo único")
        return next(iter(self.coeffs.items()))

    def render(self) -> str:
        if not self.coeffs:
            return '0'
        parts = []
        for sym in sorted(self.coeffs, key=lambda s: s.render()):
            c = self.coeffs[sym]
            coeff = '' if c == 1 else ('-' if c == -1 else f"{c}*")
            parts.append(f"{coeff}{sym.render()}")
        return ' + '.join(parts).replace('+ -', '- ')

    def __repr__(self) -> str:
        return f"VirtualCharacter({self.render()})"


def t_phi_s(phi: Parameter, s: InvolutionSignature, psi: PsiConductor) -> VirtualCharacter:
    """T_{φ,s} := ε(φ^{s=-1})·Trans(datum, φ′, φ″)"""
    if not flags(phi).bounded:
        raise NotBounded(f"{phi.render()} não é limitado")
    datum, phi_prime, phi_double_prime = factorize(phi, s)
    sign = eps_minus_part(phi, s, psi).sign()
    if sign is None:
        raise NotEvaluable("ε(φ^{s=-1}) não é ±1")
    return VirtualCharacter.of(StableTransfer(datum, phi_prime, phi_double_prime), sign)


def character_table(phi: Parameter) -> Tuple[List[Character], List[GroupElement], np.ndarray]:
    """Matriz ±1 com entradas χ(x) (linhas: caracteres, colunas: elementos)"""
    group = component_group(phi)
    chars = list(group.characters())
    elems = list(group.elements())
    char_bits = np.array([[s == -1 for s in chi.signs] for chi in chars], dtype=np.int64)
    elem_bits = np.array([[s == -1 for s in x.signs] for x in elems], dtype=np.int64)
    parity = (char_bits.reshape(len(chars), group.rank) @ elem_bits.reshape(len(elems), group.rank).T) % 2
    return chars, elems, 1 - 2 * parity


def _numerator_matrix(rows: List[VirtualCharacter]) -> Tuple[List[Symbol], np.ndarray, int]:
    """Coeficientes sobre o denominador comum: rows = matriz / denominador"""
    index: Dict[Symbol, int] = {}
    denominator = 1
    for vc in rows:
        for sym, c in vc.coeffs.items():
            index.setdefault(sym, len(index))
            denominator = math.lcm(denominator, c.denominator)

    entries = [
        [(r, index[sym], c.numerator * (denominator // c.denominator)) for sym, c in vc.coeffs.items()]
        for r, vc in enumerate(rows)
    ]
    largest = max((abs(v) for row in entries for _, _, v in row), default=0)
    dtype = np.int64 if largest * max(len(rows), 1) < 2 ** 62 else object
    matrix = np.zeros((len(rows), len(index)), dtype=dtype)
    for row in entries:
        for r, j, v in row:
            matrix[r, j] = v
    return list(index), matrix, denominator


def _rows_to_virtual(symbols: List[Symbol], matrix: np.ndarray, denominator: int) -> List[VirtualCharacter]:
    out = []
    for row in matrix:
        nonzero = np.flatnonzero(row)
        out.append(VirtualCharacter.exact(
            {symbols[j]: Fraction(int(row[j]), denominator) for j in nonzero}
        ))
    return out


def packet_fourier(phi: Parameter, direction: str, table: Mapping) -> Dict:
    """toStable: T(x) = Σ_χ χ(x)·membro(χ);  toMembers: membro(χ) = |𝒮_φ|^{-1} Σ_x χ(x)·T(x)"""
    chars, elems, signs = character_table(phi)
    if direction == 'toStable':
        domain, codomain, kernel = chars, elems, signs.T
        order = 1
    elif direction == 'toMembers':
        domain, codomain, kernel = elems, chars, signs
        order = len(elems)
    else:
        raise ValueError(f"direção inválida: {direction!r}")

    missing = [key for key in domain if key not in table]
    if missing:
        raise IncompleteTable(f"tabela sem {len(missing)} de {len(domain)} entradas")

    symbols, numerators, denominator = _numerator_matrix([table[key] for key in domain])
    logger.debug(f"Fourier {direction} em {phi.render()}: {len(domain)} entradas, {len(symbols)} símbolos")
    result = kernel.astype(numerators.dtype) @ numerators
    return dict(zip(codomain, _rows_to_virtual(symbols, result, denominator * order)))

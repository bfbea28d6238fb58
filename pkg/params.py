"""
Parâmetros de Langlands de tipo simplético: blocos ρ⊠r(a), classificação I⁺/I⁻/J,
grupos de componentes 𝒮_φ ≃ μ₂^{I⁺} e caracteres de sinais
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from errors import (
    BadA,
    InvalidBlock,
    NotEvaluable,
    OddOrthogonalMultiplicity,
    OddTotalDimension,
    UnpairedNonSelfDual,
)
from scalars import Scalar


class SelfDualType(Enum):
    SYMPLECTIC = 'sp'
    ORTHOGONAL = 'o'
    NOT_SELF_DUAL = 'ns'


class FactorKind(Enum):
    ORTHOGONAL = 'O'
    SYMPLECTIC = 'Sp'
    GENERAL_LINEAR = 'GL'


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class UnramifiedCharacter:
    """χ com χ(ϖ) = exp(2πi·rot)·q^{texp}"""
    rot: Fraction = Fraction(0)
    texp: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, 'rot', Fraction(self.rot) % 1)
        object.__setattr__(self, 'texp', Fraction(self.texp))

    @property
    def dim(self) -> int:
        return 1

    @property
    def name(self) -> str:
        if self.texp == 0 and self.rot == 0:
            return '1'
        if self.texp == 0 and self.rot == Fraction(1, 2):
            return 'sgn'
        return f"unr({_fmt(self.rot)},{_fmt(self.texp)})"

    @property
    def is_self_dual(self) -> bool:
        return (2 * self.rot) % 1 == 0 and self.texp == 0

    @property
    def is_bounded(self) -> bool:
        return self.texp == 0

    @property
    def self_dual_type(self) -> SelfDualType:
        return SelfDualType.ORTHOGONAL if self.is_self_dual else SelfDualType.NOT_SELF_DUAL

    def dual(self) -> 'UnramifiedCharacter':
        return UnramifiedCharacter((1 - self.rot) % 1, -self.texp)

    def sort_key(self) -> tuple:
        return (1, self.rot, self.texp, self.name, 0)

    def value(self) -> Scalar:
        """χ(ϖ) como Scalar exato: exige rot ∈ (1/8)ℤ e texp ∈ (1/2)ℤ"""
        phase = self.rot * 8
        half_q = self.texp * 2
        if phase.denominator != 1 or half_q.denominator != 1:
            raise NotEvaluable(f"valor de {self.name} fora de ζ₈^j·q^(m/2)")
        return Scalar.monomial(1, int(phase), int(half_q))

    def render(self) -> str:
        return self.name


@dataclass(frozen=True)
class AbstractLabel:
    """Rótulo opaco de representação supercuspidal de GL(d)"""
    name: str
    dim: int
    sd_type: SelfDualType
    dual_name: Optional[str] = None
    eps_half: Optional[int] = None
    central_sign: int = 1
    frob_sign: Optional[int] = None

    def __post_init__(self):
        if self.dim < 1:
            raise InvalidBlock(f"rho({self.name}): dim deve ser positivo")
        if self.sd_type is SelfDualType.NOT_SELF_DUAL:
            if not self.dual_name:
                raise InvalidBlock(f"rho({self.name}): rótulo não auto-dual exige dual=")
            if self.eps_half is not None:
                raise InvalidBlock(f"rho({self.name}): eps só para rótulos auto-duais")
        elif self.eps_half not in (1, -1):
            raise InvalidBlock(f"rho({self.name}): rótulo auto-dual exige eps=±1")
        if self.central_sign not in (1, -1):
            raise InvalidBlock(f"rho({self.name}): wm1 deve ser ±1")
        if self.frob_sign not in (None, 1, -1):
            raise InvalidBlock(f"rho({self.name}): frob deve ser ±1")

    @property
    def is_self_dual(self) -> bool:
        return self.sd_type is not SelfDualType.NOT_SELF_DUAL

    @property
    def is_bounded(self) -> bool:
        return True

    @property
    def self_dual_type(self) -> SelfDualType:
        return self.sd_type

    def dual(self) -> 'AbstractLabel':
        if self.is_self_dual:
            return self
        return replace(self, name=self.dual_name, dual_name=self.name)

    def sort_key(self) -> tuple:
        return (self.dim, Fraction(0), Fraction(0), self.name, 1)

    def render(self) -> str:
        attrs = [f"dim={self.dim}", f"sd={self.sd_type.value}"]
        if self.eps_half is not None:
            attrs.append(f"eps={self.eps_half}")
        attrs.append(f"wm1={self.central_sign}")
        if self.dual_name:
            attrs.append(f"dual={self.dual_name}")
        if self.frob_sign is not None:
            attrs.append(f"frob={self.frob_sign}")
        return f"rho({self.name};{','.join(attrs)})"


SupercuspidalLabel = Union[UnramifiedCharacter, AbstractLabel]

TRIVIAL = UnramifiedCharacter(Fraction(0), Fraction(0))
SGN = UnramifiedCharacter(Fraction(1, 2), Fraction(0))


def unr(rot, texp=0) -> UnramifiedCharacter:
    return UnramifiedCharacter(Fraction(rot), Fraction(texp))


@dataclass(frozen=True)
class SimpleBlock:
    rho: SupercuspidalLabel
    a: int

    @property
    def dim(self) -> int:
        return self.rho.dim * self.a

    @property
    def self_dual_type(self) -> SelfDualType:
        kind = self.rho.self_dual_type
        if kind is SelfDualType.NOT_SELF_DUAL:
            return kind
        odd = self.a % 2 == 1
        if (kind is SelfDualType.SYMPLECTIC) == odd:
            return SelfDualType.SYMPLECTIC
        return SelfDualType.ORTHOGONAL

    @property
    def is_unramified(self) -> bool:
        return isinstance(self.rho, UnramifiedCharacter)

    def dual(self) -> 'SimpleBlock':
        return SimpleBlock(self.rho.dual(), self.a)

    def sort_key(self) -> tuple:
        d, rot, texp, name, kind = (self.rho.dim,) + self.rho.sort_key()[1:]
        return (d, rot, texp, self.a, name, kind)

    @property
    def jordan_key(self) -> Tuple[str, int]:
        return (self.rho.name, self.a)

    def render(self) -> str:
        return f"[{self.rho.render()} x S({self.a})]"


@dataclass(frozen=True)
class CentralizerFactor:
    kind: FactorKind
    size: int
    block_index: int

    def render(self) -> str:
        return f"{self.kind.value}({self.size})"


@dataclass(frozen=True)
class CentralizerShape:
    factors: Tuple[CentralizerFactor, ...]

    def render(self) -> str:
        return ' x '.join(f.render() for f in self.factors) if self.factors else '1'


BlockEntry = Tuple[SupercuspidalLabel, int, int]


@dataclass(frozen=True)
class Parameter:
    """Multiconjunto canônico de blocos com multiplicidades; construir via normalize()"""
    blocks: Tuple[Tuple[SimpleBlock, int], ...]
    rank: int = field(compare=False)
    i_plus: Tuple[int, ...] = field(compare=False)
    i_minus: Tuple[int, ...] = field(compare=False)
    j_pairs: Tuple[Tuple[int, int], ...] = field(compare=False)

    @cached_property
    def _hash(self) -> int:
        return hash(self.blocks)

    def __hash__(self) -> int:
        return self._hash

    def block(self, i: int) -> SimpleBlock:
        return self.blocks[i][0]

    def mult(self, i: int) -> int:
        return self.blocks[i][1]

    def index_of(self, block: SimpleBlock) -> Optional[int]:
        for i, (b, _) in enumerate(self.blocks):
            if b == block:
                return i
        return None

    def multiplicity_of(self, block: SimpleBlock) -> int:
        i = self.index_of(block)
        return 0 if i is None else self.mult(i)

    @property
    def is_empty(self) -> bool:
        return not self.blocks

    @property
    def plus_blocks(self) -> Tuple[SimpleBlock, ...]:
        return tuple(self.block(i) for i in self.i_plus)

    def entries(self) -> List[BlockEntry]:
        return [(b.rho, b.a, m) for b, m in self.blocks]

    def render(self) -> str:
        if not self.blocks:
            return '0'
        return ' + '.join(b.render() if m == 1 else f"{m}*{b.render()}" for b, m in self.blocks)

    def __str__(self) -> str:
        return self.render()


def normalize(entries: Iterable[BlockEntry]) -> Parameter:
    """Forma canônica: funde duplicatas, ordena, classifica e valida"""
    merged: Dict[SimpleBlock, int] = {}
    for rho, a, m in entries:
        if a < 1:
            raise BadA(f"a deve ser >= 1 (recebido {a})")
        if m < 1:
            raise InvalidBlock(f"multiplicidade deve ser >= 1 (recebido {m})")
        blk = SimpleBlock(rho, a)
        merged[blk] = merged.get(blk, 0) + m

    blocks = tuple(sorted(merged.items(), key=lambda item: item[0].sort_key()))
    i_plus: List[int] = []
    i_minus: List[int] = []
    j_pairs: List[Tuple[int, int]] = []
    position = {b: i for i, (b, _) in enumerate(blocks)}

    for i, (blk, m) in enumerate(blocks):
        kind = blk.self_dual_type
        if kind is SelfDualType.SYMPLECTIC:
            i_plus.append(i)
        elif kind is SelfDualType.ORTHOGONAL:
            if m % 2:
                raise OddOrthogonalMultiplicity(f"{blk.render()} de tipo ortogonal com multiplicidade {m}")
            i_minus.append(i)
        else:
            partner = position.get(blk.dual())
            if partner is None or blocks[partner][1] != m:
                raise UnpairedNonSelfDual(f"{blk.render()} sem dual de mesma multiplicidade")
            if i < partner:
                j_pairs.append((i, partner))

    total = sum(b.dim * m for b, m in blocks)
    if total % 2:
        raise OddTotalDimension(f"dimensão total {total} é ímpar")

    return Parameter(blocks, total // 2, tuple(i_plus), tuple(i_minus), tuple(j_pairs))


EMPTY = normalize([])


def direct_sum(*params: Parameter) -> Parameter:
    return normalize(e for p in params for e in p.entries())


def dual(phi: Parameter) -> Parameter:
    """Contragrediente bloco a bloco"""
    return normalize((b.dual().rho, b.a, m) for b, m in phi.blocks)


@dataclass(frozen=True)
class ParameterFlags:
    bounded: bool
    discrete: bool
    good_parity: bool
    jordan: Tuple[Tuple[Tuple[str, int], int], ...]


def flags(phi: Parameter) -> ParameterFlags:
    good_parity = len(phi.i_plus) == len(phi.blocks)
    return ParameterFlags(
        bounded=all(b.rho.is_bounded for b, _ in phi.blocks),
        discrete=good_parity and all(m == 1 for _, m in phi.blocks),
        good_parity=good_parity,
        jordan=tuple((b.jordan_key, m) for b, m in phi.blocks),
    )


# ===== GRUPO DE COMPONENTES =====

@dataclass(frozen=True)
class ComponentGroup:
    """μ₂^{I⁺} com base ordenada pelos blocos de I⁺"""
    basis: Tuple[SimpleBlock, ...]

    @cached_property
    def _hash(self) -> int:
        return hash(self.basis)

    def __hash__(self) -> int:
        return self._hash

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def order(self) -> int:
        return 2 ** len(self.basis)

    def slot(self, block: SimpleBlock) -> int:
        return self.basis.index(block)

    def identity(self) -> 'GroupElement':
        return GroupElement(self, (1,) * self.rank)

    def element(self, signs: Sequence[int]) -> 'GroupElement':
        return GroupElement(self, tuple(signs))

    def basis_element(self, k: int) -> 'GroupElement':
        return GroupElement(self, tuple(-1 if j == k else 1 for j in range(self.rank)))

    def elements(self) -> Iterator['GroupElement']:
        for signs in itertools.product((1, -1), repeat=self.rank):
            yield GroupElement(self, signs)

    def trivial_character(self) -> 'Character':
        return Character(self, (1,) * self.rank)

    def character(self, values: Sequence[int]) -> 'Character':
        return Character(self, tuple(values))

    def characters(self) -> Iterator['Character']:
        for values in itertools.product((1, -1), repeat=self.rank):
            yield Character(self, values)


@dataclass(frozen=True)
class _SignVector:
    group: ComponentGroup
    signs: Tuple[int, ...]

    def __post_init__(self):
        if len(self.signs) != self.group.rank or any(s not in (1, -1) for s in self.signs):
            raise InvalidBlock(f"vetor de sinais {self.signs} incompatível com |I⁺| = {self.group.rank}")

    def render(self) -> str:
        return ','.join('+' if s == 1 else '-' for s in self.signs)

    def __getitem__(self, k: int) -> int:
        return self.signs[k]

    def at(self, block: SimpleBlock) -> int:
        return self.signs[self.group.slot(block)]


class GroupElement(_SignVector):
    def __mul__(self, other: 'GroupElement') -> 'GroupElement':
        return GroupElement(self.group, tuple(a * b for a, b in zip(self.signs, other.signs)))

    @property
    def is_identity(self) -> bool:
        return all(s == 1 for s in self.signs)


class Character(_SignVector):
    """Caráter de 𝒮_φ; χ(x) = Π χ_i^{[x_i = -1]}"""

    def __call__(self, x: GroupElement) -> int:
        value = 1
        for c, s in zip(self.signs, x.signs):
            if s == -1:
                value *= c
        return value

    def __mul__(self, other: 'Character') -> 'Character':
        return Character(self.group, tuple(a * b for a, b in zip(self.signs, other.signs)))

    @property
    def is_trivial(self) -> bool:
        return all(s == 1 for s in self.signs)


def parse_signs(text: str) -> Tuple[int, ...]:
    """'+,-,+' → (1, -1, 1)"""
    text = text.strip()
    if not text:
        return ()
    out = []
    for token in text.split(','):
        token = token.strip()
        if token in ('+', '+1', '1'):
            out.append(1)
        elif token in ('-', '-1'):
            out.append(-1)
        else:
            raise InvalidBlock(f"sinal inválido: {token!r}")
    return tuple(out)


@dataclass(frozen=True)
class EnhancedParameter:
    param: Parameter
    chi: Character

    def __post_init__(self):
        if self.chi.group.basis != self.param.plus_blocks:
            raise InvalidBlock("domínio de χ difere de I⁺ do parâmetro")

    def render(self) -> str:
        return f"({self.param.render()}, chi=[{self.chi.render()}])"


def component_group(phi: Parameter) -> ComponentGroup:
    return ComponentGroup(phi.plus_blocks)


def enhance(phi: Parameter, signs: Sequence[int]) -> EnhancedParameter:
    return EnhancedParameter(phi, component_group(phi).character(signs))


def component_data(phi: Parameter) -> Tuple[CentralizerShape, ComponentGroup, GroupElement]:
    """Forma do centralizador, 𝒮_φ e z_φ (imagem de -1)"""
    factors: List[CentralizerFactor] = []
    paired = {j for pair in phi.j_pairs for j in pair[1:]}
    for i, (_, m) in enumerate(phi.blocks):
        if i in phi.i_plus:
            factors.append(CentralizerFactor(FactorKind.ORTHOGONAL, m, i))
        elif i in phi.i_minus:
            factors.append(CentralizerFactor(FactorKind.SYMPLECTIC, m, i))
        elif i not in paired:
            factors.append(CentralizerFactor(FactorKind.GENERAL_LINEAR, m, i))
    group = component_group(phi)
    z_phi = group.element(tuple((-1) ** phi.mult(i) for i in phi.i_plus))
    return CentralizerShape(tuple(factors)), group, z_phi

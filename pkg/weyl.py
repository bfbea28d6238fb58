"""
Grupo de Weyl de Sp(2n) (permutações com sinal) relativo ao Borel reverso B^←

Raízes simples: β₁ = 2ε₁ e β_i = ε_i - ε_{i-1} (i > 1); t_i é a reflexão em β_i.
Uma raiz é B^←-positiva quando sua coordenada não nula de maior índice é positiva.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterator, List, Sequence, Tuple

from errors import IndexOutOfRange, NotNormalizing
from scalars import Scalar

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class SignedPermutation:
    """w(ε_i) = signs[i]·ε_{perm[i]} (índices internos a partir de 0)"""
    perm: Tuple[int, ...]
    signs: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))) or len(self.signs) != len(self.perm):
            raise ValueError(f"permutação com sinal inválida: {self.perm}, {self.signs}")

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> 'SignedPermutation':
        return cls(tuple(range(n)), (1,) * n)

    @classmethod
    def generator(cls, n: int, i: int) -> 'SignedPermutation':
        """t_i: i = 1 troca o sinal de ε₁; i > 1 troca ε_{i-1} e ε_i"""
        if not 1 <= i <= n:
            raise IndexOutOfRange(f"gerador {i} fora de 1..{n}")
        if i == 1:
            return cls(tuple(range(n)), (-1,) + (1,) * (n - 1))
        perm = list(range(n))
        perm[i - 1], perm[i - 2] = perm[i - 2], perm[i - 1]
        return cls(tuple(perm), (1,) * n)

    @property
    def images(self) -> Tuple[Tuple[int, int], ...]:
        return tuple((p + 1, s) for p, s in zip(self.perm, self.signs))

    def __mul__(self, other: 'SignedPermutation') -> 'SignedPermutation':
        perm = tuple(self.perm[p] for p in other.perm)
        signs = tuple(s * self.signs[p] for p, s in zip(other.perm, other.signs))
        return SignedPermutation(perm, signs)

    def inverse(self) -> 'SignedPermutation':
        perm = [0] * self.n
        signs = [1] * self.n
        for i, (p, s) in enumerate(zip(self.perm, self.signs)):
            perm[p] = i
            signs[p] = s
        return SignedPermutation(tuple(perm), tuple(signs))

    def apply(self, v: Vector) -> Vector:
        out = [0] * self.n
        for i, c in enumerate(v):
            if c:
                out[self.perm[i]] += c * self.signs[i]
        return tuple(out)

    @property
    def sign_weight(self) -> int:
        return sum(1 for s in self.signs if s == -1)

    def render(self) -> str:
        return '(' + ', '.join(f"{'-' if s < 0 else '+'}e{p}" for p, s in self.images) + ')'


def is_positive(root: Vector) -> bool:
    for c in reversed(root):
        if c:
            return c > 0
    raise ValueError("vetor nulo não é raiz")


@lru_cache(maxsize=None)
def positive_roots(n: int) -> Tuple[Vector, ...]:
    roots: List[Vector] = []
    for i in range(n):
        v = [0] * n
        v[i] = 2
        roots.append(tuple(v))
    for i, j in itertools.combinations(range(n), 2):
        diff = [0] * n
        diff[j], diff[i] = 1, -1
        total = [0] * n
        total[j], total[i] = 1, 1
        roots.extend([tuple(diff), tuple(total)])
    return tuple(roots)


def simple_root(n: int, i: int) -> Vector:
    v = [0] * n
    if i == 1:
        v[0] = 2
    else:
        v[i - 1], v[i - 2] = 1, -1
    return tuple(v)


def length(w: SignedPermutation) -> int:
    """Número de raízes B^←-positivas levadas em negativas"""
    return sum(1 for r in positive_roots(w.n) if not is_positive(w.apply(r)))


def is_left_descent(w: SignedPermutation, i: int) -> bool:
    return not is_positive(w.inverse().apply(simple_root(w.n, i)))


def evaluate(word: Sequence[int], n: int) -> SignedPermutation:
    w = SignedPermutation.identity(n)
    for i in word:
        w = w * SignedPermutation.generator(n, i)
    return w


def reduced_word(w: SignedPermutation) -> Tuple[int, ...]:
    """Expressão reduzida por descidas à esquerda, menor gerador primeiro"""
    word: List[int] = []
    current = w
    while True:
        for i in range(1, w.n + 1):
            if is_left_descent(current, i):
                word.append(i)
                current = SignedPermutation.generator(w.n, i) * current
                break
        else:
            return tuple(word)


def evaluate_and_reduce(word: Sequence[int], n: int) -> Tuple[SignedPermutation, Tuple[int, ...], int]:
    for i in word:
        if not 1 <= i <= n:
            raise IndexOutOfRange(f"índice {i} fora de 1..{n}")
    w = evaluate(word, n)
    reduced = reduced_word(w)
    return w, reduced, length(w)


@lru_cache(maxsize=None)
def reduced_words(w: SignedPermutation) -> Tuple[Tuple[int, ...], ...]:
    """Todas as expressões reduzidas de w"""
    if w == SignedPermutation.identity(w.n):
        return ((),)
    words = []
    for i in range(1, w.n + 1):
        if is_left_descent(w, i):
            rest = SignedPermutation.generator(w.n, i) * w
            words.extend((i,) + tail for tail in reduced_words(rest))
    return tuple(words)


def all_elements(n: int) -> Iterator[SignedPermutation]:
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            yield SignedPermutation(perm, signs)


def longest_element(n: int) -> SignedPermutation:
    return SignedPermutation(tuple(range(n)), (-1,) * n)


class TMode(Enum):
    ROOTS = 'roots'
    COMPONENTS = 'components'
    WORD = 'word'


def t_invariant(w: SignedPermutation, mode: TMode = TMode.ROOTS) -> int:
    """t(w) em três leituras equivalentes"""
    if mode is TMode.ROOTS:
        count = 0
        for i in range(w.n):
            v = [0] * w.n
            v[i] = 2
            if not is_positive(w.apply(tuple(v))):
                count += 1
        return count
    if mode is TMode.COMPONENTS:
        return w.sign_weight
    return sum(1 for i in reduced_word(w) if i == 1)


@dataclass(frozen=True)
class ComparisonScalar:
    """Escalar de comparação e expoente formal do símbolo γ_F(ψ)"""
    value: Scalar
    gamma_exponent: int


def comparison_scalar(w: SignedPermutation, side: str, e2: int) -> ComparisonScalar:
    """+ : |2|^{t/2} = q^{-e2·t/2};  - : (-q^{-1})^t·q^{-e2·t/2}"""
    t = t_invariant(w)
    if side == '+':
        value = Scalar.monomial(1, 0, -e2 * t)
    elif side == '-':
        value = Scalar.monomial((-1) ** t, 0, -2 * t - e2 * t)
    else:
        raise ValueError(f"lado inválido: {side!r}")
    return ComparisonScalar(value, -t)


def _levi_generators(n: int, sp_rank: int, gl_sizes: Sequence[int]) -> List[int]:
    gens = list(range(1, sp_rank + 1))
    start = sp_rank
    for size in gl_sizes:
        gens.extend(range(start + 2, start + size + 1))
        start += size
    return gens


def _levi_roots(n: int, sp_rank: int, gl_sizes: Sequence[int]) -> frozenset:
    roots = set()
    for r in positive_roots(n):
        support = [i for i, c in enumerate(r) if c]
        if all(i < sp_rank for i in support):
            roots.add(r)
    start = sp_rank
    for size in gl_sizes:
        block = range(start, start + size)
        for i, j in itertools.combinations(block, 2):
            v = [0] * n
            v[j], v[i] = 1, -1
            roots.add(tuple(v))
        start += size
    return frozenset(roots | {tuple(-c for c in r) for r in roots})


def min_coset_rep(w: SignedPermutation, levi) -> SignedPermutation:
    """Representante de comprimento mínimo de Ω^M₀·w (levi com sp_rank e gl_sizes)"""
    n = w.n
    if levi.sp_rank + sum(levi.gl_sizes) != n:
        raise NotNormalizing(f"Levi de posto {levi.sp_rank + sum(levi.gl_sizes)} em W_{n}")
    roots = _levi_roots(n, levi.sp_rank, levi.gl_sizes)
    if frozenset(w.apply(r) for r in roots) != roots:
        raise NotNormalizing(f"{w.render()} não normaliza o Levi")
    gens = _levi_generators(n, levi.sp_rank, levi.gl_sizes)
    current = w
    improved = True
    while improved:
        improved = False
        for i in gens:
            candidate = SignedPermutation.generator(n, i) * current
            if length(candidate) < length(current):
                current = candidate
                improved = True
                break
    return current

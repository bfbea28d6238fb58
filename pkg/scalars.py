"""
Aritmética exata: escalares c·ζ₈^j·q^{m/2} e funções racionais em X = q^{-s}

Nenhum ponto flutuante: coeficientes são Fractions no corpo ciclotômico Q(ζ₈)
(i = ζ₈²), e q é uma indeterminada formal.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple, Union

from errors import NotEvaluable

Number = Union[int, Fraction]


class Cyclo8:
    """Elemento a0 + a1ζ + a2ζ² + a3ζ³ de Q(ζ₈), com ζ⁴ = -1"""

    __slots__ = ('coeffs',)

    def __init__(self, coeffs: Iterable[Number] = (0, 0, 0, 0)):
        c = tuple(Fraction(x) for x in coeffs)
        if len(c) != 4:
            raise ValueError("Cyclo8 precisa de 4 coeficientes")
        self.coeffs = c

    @classmethod
    def root(cls, j: int, c: Number = 1) -> 'Cyclo8':
        """c·ζ₈^j para j inteiro qualquer"""
        j %= 8
        sign = -1 if j >= 4 else 1
        out = [0, 0, 0, 0]
        out[j % 4] = sign * Fraction(c)
        return cls(out)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: 'Cyclo8') -> 'Cyclo8':
        return Cyclo8(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self) -> 'Cyclo8':
        return Cyclo8(-a for a in self.coeffs)

    def __sub__(self, other: 'Cyclo8') -> 'Cyclo8':
        return self + (-other)

    def __mul__(self, other: 'Cyclo8') -> 'Cyclo8':
        out = [Fraction(0)] * 4
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if not b:
                    continue
                k = i + j
                if k >= 4:
                    out[k - 4] -= a * b
                else:
                    out[k] += a * b
        return Cyclo8(out)

    def galois(self, k: int) -> 'Cyclo8':
        """Automorfismo ζ ↦ ζ^k (k ímpar)"""
        total = Cyclo8()
        for j, a in enumerate(self.coeffs):
            if a:
                total = total + Cyclo8.root(j * k, a)
        return total

    def inverse(self) -> 'Cyclo8':
        if self.is_zero():
            raise ZeroDivisionError("inverso de zero em Q(ζ₈)")
        partial = self.galois(3) * self.galois(5) * self.galois(7)
        norm = (self * partial).coeffs[0]
        return Cyclo8(a / norm for a in partial.coeffs)

    def monomial(self) -> Optional[Tuple[Fraction, int]]:
        """(c, j) se o elemento é c·ζ^j com um único termo"""
        nonzero = [(j, a) for j, a in enumerate(self.coeffs) if a]
        if len(nonzero) != 1:
            return None
        j, a = nonzero[0]
        return a, j

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Cyclo8) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Cyclo8({', '.join(str(a) for a in self.coeffs)})"


_PHASE_NAMES = {0: '', 1: 'zeta8', 2: 'i', 3: 'zeta8^3'}


def _format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_q(m: int) -> str:
    if m == 0:
        return ''
    if m == 2:
        return 'q'
    if m % 2 == 0:
        return f"q^({m // 2})"
    return f"q^({m}/2)"


class Scalar:
    """Soma formal finita de monômios c·ζ₈^j·q^{m/2}"""

    __slots__ = ('terms',)

    def __init__(self, terms: Optional[Dict[int, Cyclo8]] = None):
        self.terms: Dict[int, Cyclo8] = {m: c for m, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def of(cls, c: Number) -> 'Scalar':
        return cls({0: Cyclo8.root(0, c)})

    @classmethod
    def monomial(cls, c: Number = 1, phase8: int = 0, half_q: int = 0) -> 'Scalar':
        """c·ζ₈^phase8·q^{half_q/2}"""
        return cls({half_q: Cyclo8.root(phase8, c)})

    @classmethod
    def zero(cls) -> 'Scalar':
        return cls()

    @classmethod
    def one(cls) -> 'Scalar':
        return cls.of(1)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: 'Scalar') -> 'Scalar':
        other = _coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return Scalar(out)

    __radd__ = __add__

    def __neg__(self) -> 'Scalar':
        return Scalar({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: 'Scalar') -> 'Scalar':
        return self + (-_coerce(other))

    def __rsub__(self, other: 'Scalar') -> 'Scalar':
        return _coerce(other) - self

    def __mul__(self, other: 'Scalar') -> 'Scalar':
        other = _coerce(other)
        out: Dict[int, Cyclo8] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 + m2
                prod = c1 * c2
                out[m] = out[m] + prod if m in out else prod
        return Scalar(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> 'Scalar':
        if k < 0:
            return Scalar.one().exact_div(self) ** (-k)
        result = Scalar.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Scalar.of(other)
        return isinstance(other, Scalar) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def sign(self) -> Optional[int]:
        """+1/-1 se o escalar é exatamente ±1"""
        if self == Scalar.of(1):
            return 1
        if self == Scalar.of(-1):
            return -1
        return None

    def exact_div(self, other: 'Scalar') -> 'Scalar':
        """Divisão exata de polinômios de Laurent em q^{1/2}; erro se houver resto"""
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("divisão por escalar nulo")
        if self.is_zero():
            return Scalar.zero()
        remainder = dict(self.terms)
        d_top = max(other.terms)
        d_lead_inv = other.terms[d_top].inverse()
        lowest_shift = min(self.terms) - min(other.terms)
        quotient: Dict[int, Cyclo8] = {}
        while remainder:
            shift = max(remainder) - d_top
            if shift < lowest_shift:
                break
            top = max(remainder)
            coeff = remainder[top] * d_lead_inv
            quotient[shift] = coeff
            for m, c in other.terms.items():
                key = m + shift
                updated = remainder.get(key, Cyclo8()) - coeff * c
                if updated.is_zero():
                    remainder.pop(key, None)
                else:
                    remainder[key] = updated
        if remainder:
            raise NotEvaluable(f"divisão não exata: {self.render()} / {other.render()}")
        return Scalar(quotient)

    def render(self) -> str:
        if not self.terms:
            return '0'
        pieces: List[Tuple[bool, str]] = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            for j in range(4):
                a = c.coeffs[j]
                if not a:
                    continue
                negative = a < 0
                mag = -a if negative else a
                factors = [f for f in (_PHASE_NAMES[j], _format_q(m)) if f]
                if mag != 1 or not factors:
                    factors.insert(0, _format_rational(mag))
                pieces.append((negative, '*'.join(factors)))
        first_neg, first = pieces[0]
        out = ('-' if first_neg else '') + first
        for negative, text in pieces[1:]:
            out += (' - ' if negative else ' + ') + text
        return out

    def __repr__(self) -> str:
        return f"Scalar({self.render()})"

    def __str__(self) -> str:
        return self.render()


def _coerce(x: Union[Scalar, Number]) -> Scalar:
    return x if isinstance(x, Scalar) else Scalar.of(x)


class RationalFunction:
    """Função racional em X = q^{-s} com coeficientes Scalar (polinômios como tuplas por grau)"""

    __slots__ = ('num', 'den', 'inverse_factors')

    def __init__(self, num: Iterable[Scalar], den: Iterable[Scalar],
                 inverse_factors: Optional[Tuple[Tuple[Scalar, int], ...]] = None):
        self.num = _trim(tuple(num))
        self.den = _trim(tuple(den))
        if not self.den:
            raise ZeroDivisionError("denominador nulo")
        self.inverse_factors = inverse_factors

    @classmethod
    def one(cls) -> 'RationalFunction':
        return cls((Scalar.one(),), (Scalar.one(),), inverse_factors=())

    @classmethod
    def from_inverse_linear_factors(cls, coeffs: Iterable[Scalar]) -> 'RationalFunction':
        """Π (1 - c·X)^{-1}, guardando a forma fatorada para exibição"""
        counts: Dict[Scalar, int] = {}
        order: List[Scalar] = []
        den: Tuple[Scalar, ...] = (Scalar.one(),)
        for c in coeffs:
            den = _poly_mul(den, (Scalar.one(), -c))
            if c not in counts:
                counts[c] = 0
                order.append(c)
            counts[c] += 1
        return cls((Scalar.one(),), den, inverse_factors=tuple((c, counts[c]) for c in order))

    def __mul__(self, other: 'RationalFunction') -> 'RationalFunction':
        factors = None
        if self.inverse_factors is not None and other.inverse_factors is not None:
            merged: Dict[Scalar, int] = dict(self.inverse_factors)
            order = [c for c, _ in self.inverse_factors]
            for c, k in other.inverse_factors:
                if c not in merged:
                    order.append(c)
                merged[c] = merged.get(c, 0) + k
            factors = tuple((c, merged[c]) for c in order)
        return RationalFunction(_poly_mul(self.num, other.num), _poly_mul(self.den, other.den), factors)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return _poly_mul(self.num, other.den) == _poly_mul(other.num, self.den)

    def __hash__(self) -> int:
        return hash((len(self.num), len(self.den)))

    def evaluate(self, x: Scalar) -> Tuple[Scalar, Scalar]:
        """(numerador, denominador) avaliados em X = x"""
        return _poly_eval(self.num, x), _poly_eval(self.den, x)

    def value_at(self, x: Scalar) -> Scalar:
        num, den = self.evaluate(x)
        if den.is_zero():
            raise NotEvaluable("polo no ponto de avaliação")
        return num.exact_div(den)

    def right_half_plane_poles(self) -> List[Scalar]:
        """Coeficientes c de fatores (1 - cX)^{-1} com polo em algum Re(s) > 0"""
        if self.inverse_factors is None:
            raise NotEvaluable("forma fatorada indisponível")
        bad = []
        for c, _ in self.inverse_factors:
            # |c·q^{-s}| = 1 exige |c| = q^{Re s}; só monômios com expoente positivo
            if len(c.terms) == 1 and max(c.terms) > 0:
                bad.append(c)
            elif len(c.terms) > 1:
                bad.append(c)
        return bad

    def render(self) -> str:
        if self.inverse_factors is not None:
            if not self.inverse_factors:
                return '1'
            parts = []
            for c, k in self.inverse_factors:
                text = c.render()
                if text.startswith('-'):
                    inner = f"1 + {text[1:]} X" if text[1:] != '1' else "1 + X"
                else:
                    inner = f"1 - {text} X" if text != '1' else "1 - X"
                parts.append(f"({inner})^-{k}" if k > 1 else f"({inner})^-1")
            return ' '.join(parts)
        return f"({_render_poly(self.num)}) / ({_render_poly(self.den)})"

    def __repr__(self) -> str:
        return f"RationalFunction({self.render()})"


def _trim(poly: Tuple[Scalar, ...]) -> Tuple[Scalar, ...]:
    end = len(poly)
    while end and poly[end - 1].is_zero():
        end -= 1
    return poly[:end]


def _poly_mul(a: Tuple[Scalar, ...], b: Tuple[Scalar, ...]) -> Tuple[Scalar, ...]:
    if not a or not b:
        return ()
    out = [Scalar.zero() for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _trim(tuple(out))


def _poly_eval(poly: Tuple[Scalar, ...], x: Scalar) -> Scalar:
    acc = Scalar.zero()
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def _render_poly(poly: Tuple[Scalar, ...]) -> str:
    if not poly:
        return '0'
    parts = []
    for k, c in enumerate(poly):
        if c.is_zero():
            continue
        power = '' if k == 0 else ('X' if k == 1 else f"X^{k}")
        parts.append(f"({c.render()}){power}" if power else c.render())
    return ' + '.join(parts)

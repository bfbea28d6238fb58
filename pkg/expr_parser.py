"""
Linguagem de expressões de parâmetros (ASCII, segura para shell)

    param := term ("+" term)* | "0"
    term  := [INT "*"] "[" char "x" "S(" INT ")" "]"
    char  := "1" | "sgn" | "unr(" RAT "," RAT ")" | "rho(" NAME ";" ATTRS ")"


Erros de sintaxe carregam o span (início, fim) no texto de entrada; erros
semânticos (a < 1, multiplicidade ímpar, ...) ficam para normalize().
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, NamedTuple, Optional, Tuple, Union

from errors import BadA, ExprSyntaxError, ParameterError
from params import (
    AbstractLabel,
    Parameter,
    SelfDualType,
    SupercuspidalLabel,
    normalize,
    unr,
)

Span = Tuple[int, int]

TOKEN_PATTERNS = {
    'int': r'\d+',
    'name': r'[A-Za-z_][A-Za-z0-9_]*',
    'lbrack': r'\[',
    'rbrack': r'\]',
    'lpar': r'\(',
    'rpar': r'\)',
    'plus': r'\+',
    'minus': r'-',
    'mul': r'\*',
    'div': r'/',
    'comma': r',',
    'semi': r';',
    'equal': r'=',
    'skip': r'\s+',
    'error': r'.',
}
_TOKEN_RE = re.compile('|'.join(f"(?P<{name}>{text})" for name, text in TOKEN_PATTERNS.items()))

INT_ATTRS = ('dim', 'eps', 'wm1', 'frob')
NAME_ATTRS = ('sd', 'dual')


class Token(NamedTuple):
    type: str
    value: str
    where: Span


def tokenize(text: str) -> Iterator[Token]:
    for mo in _TOKEN_RE.finditer(text):
        kind = str(mo.lastgroup)
        if kind == 'skip':
            continue
        if kind == 'error':
            raise ExprSyntaxError(f"caractere inesperado {mo.group()!r}", (mo.start(), mo.end()))
        yield Token(kind, mo.group(), (mo.start(), mo.end()))


# ===== ÁRVORE SINTÁTICA =====

@dataclass(frozen=True)
class UnrExpr:
    rot: Fraction
    texp: Fraction
    span: Span

    def render(self) -> str:
        return unr(self.rot, self.texp).render()


@dataclass(frozen=True)
class RhoExpr:
    name: str
    attrs: Tuple[Tuple[str, Union[int, str]], ...]
    span: Span

    def attr(self, key: str, default=None):
        return dict(self.attrs).get(key, default)

    def render(self) -> str:
        return f"rho({self.name};{','.join(f'{k}={v}' for k, v in self.attrs)})"


CharExpr = Union[UnrExpr, RhoExpr]


@dataclass(frozen=True)
class TermExpr:
    mult: int
    char: CharExpr
    a: int
    span: Span

    def render(self) -> str:
        body = f"[{self.char.render()} x S({self.a})]"
        return body if self.mult == 1 else f"{self.mult}*{body}"


@dataclass(frozen=True)
class ParamExpr:
    terms: Tuple[TermExpr, ...]
    span: Span

    def render(self) -> str:
        return ' + '.join(t.render() for t in self.terms) if self.terms else '0'


class _Parser:
    """Descida recursiva sobre a lista de tokens"""

    def __init__(self, text: str):
        self.text = text
        self.tokens: List[Token] = list(tokenize(text))
        self.pos = 0

    @property
    def current(self) -> Optional[Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _end_span(self) -> Span:
        return (len(self.text), len(self.text) + 1)

    def expect(self, kind: str, value: Optional[str] = None) -> Token:
        token = self.current
        wanted = value or kind
        if token is None:
            raise ExprSyntaxError(f"esperado '{wanted}', fim da expressão", self._end_span())
        if token.type != kind or (value is not None and token.value != value):
            raise ExprSyntaxError(f"esperado '{wanted}', encontrado {token.value!r}", token.where)
        self.pos += 1
        return token

    def accept(self, kind: str, value: Optional[str] = None) -> Optional[Token]:
        token = self.current
        if token is not None and token.type == kind and (value is None or token.value == value):
            self.pos += 1
            return token
        return None

    def parse(self) -> ParamExpr:
        if not self.tokens:
            raise ExprSyntaxError("expressão vazia", (0, 1))
        if len(self.tokens) == 1 and self.tokens[0].type == 'int' and self.tokens[0].value == '0':
            return ParamExpr((), (0, len(self.text)))
        terms = [self.term()]
        while self.accept('plus'):
            terms.append(self.term())
        if self.current is not None:
            raise ExprSyntaxError(f"sobra inesperada {self.current.value!r}", self.current.where)
        return ParamExpr(tuple(terms), (terms[0].span[0], terms[-1].span[1]))

    def term(self) -> TermExpr:
        start = self.current.where[0] if self.current else len(self.text)
        mult = 1
        count = self.accept('int')
        if count is not None:
            self.expect('mul')
            mult = int(count.value)
        self.expect('lbrack')
        char = self.char()
        self.expect('name', 'x')
        self.expect('name', 'S')
        self.expect('lpar')
        a = int(self.expect('int').value)
        self.expect('rpar')
        end = self.expect('rbrack').where[1]
        return TermExpr(mult, char, a, (start, end))

    def char(self) -> CharExpr:
        token = self.current
        if token is None:
            raise ExprSyntaxError("caráter esperado", self._end_span())
        if token.type == 'int' and token.value == '1':
            self.pos += 1
            return UnrExpr(Fraction(0), Fraction(0), token.where)
        if token.type == 'name' and token.value == 'sgn':
            self.pos += 1
            return UnrExpr(Fraction(1, 2), Fraction(0), token.where)
        if token.type == 'name' and token.value == 'unr':
            self.pos += 1
            self.expect('lpar')
            rot = self.rational()
            self.expect('comma')
            texp = self.rational()
            end = self.expect('rpar').where[1]
            return UnrExpr(rot, texp, (token.where[0], end))
        if token.type == 'name' and token.value == 'rho':
            self.pos += 1
            return self.rho(token.where[0])
        raise ExprSyntaxError(f"caráter desconhecido {token.value!r}", token.where)

    def rational(self) -> Fraction:
        negative = self.accept('minus') is not None
        if not negative:
            self.accept('plus')
        num = self.expect('int')
        value = Fraction(int(num.value))
        if self.accept('div'):
            den = self.expect('int')
            if int(den.value) == 0:
                raise ExprSyntaxError("denominador zero", den.where)
            value = Fraction(int(num.value), int(den.value))
        return -value if negative else value

    def signed_int(self) -> int:
        negative = self.accept('minus') is not None
        if not negative:
            self.accept('plus')
        value = int(self.expect('int').value)
        return -value if negative else value

    def rho(self, start: int) -> RhoExpr:
        self.expect('lpar')
        name = self.expect('name').value
        self.expect('semi')
        attrs = []
        seen = set()
        while True:
            key = self.expect('name')
            if key.value not in INT_ATTRS + NAME_ATTRS:
                raise ExprSyntaxError(f"atributo desconhecido {key.value!r}", key.where)
            if key.value in seen:
                raise ExprSyntaxError(f"atributo repetido {key.value!r}", key.where)
            seen.add(key.value)
            self.expect('equal')
            value = self.signed_int() if key.value in INT_ATTRS else self.expect('name').value
            attrs.append((key.value, value))
            if not self.accept('comma'):
                break
        end = self.expect('rpar').where[1]
        return RhoExpr(name, tuple(attrs), (start, end))


def parse_expr(text: str) -> ParamExpr:
    return _Parser(text).parse()


# ===== SEMÂNTICA =====

def _label(char: CharExpr) -> SupercuspidalLabel:
    if isinstance(char, UnrExpr):
        return unr(char.rot, char.texp)
    sd = char.attr('sd')
    try:
        sd_type = SelfDualType(sd)
    except ValueError:
        raise ExprSyntaxError(f"sd deve ser sp, o ou ns (recebido {sd!r})", char.span)
    if char.attr('dim') is None:
        raise ExprSyntaxError(f"rho({char.name}) sem dim", char.span)
    return AbstractLabel(
        name=char.name,
        dim=char.attr('dim'),
        sd_type=sd_type,
        dual_name=char.attr('dual'),
        eps_half=char.attr('eps'),
        central_sign=char.attr('wm1', 1),
        frob_sign=char.attr('frob'),
    )


def to_parameter(expr: ParamExpr) -> Parameter:
    entries = []
    for term in expr.terms:
        if term.a < 1:
            raise BadA(f"a deve ser >= 1 (recebido {term.a})", term.span)
        try:
            entries.append((_label(term.char), term.a, term.mult))
        except ParameterError as exc:
            if exc.span is None:
                exc.span = term.char.span
            raise
    return normalize(entries)


def parse_param(text: str) -> Parameter:
    """Texto → Parameter canônico"""
    return to_parameter(parse_expr(text))


def print_param(phi: Parameter) -> str:
    return phi.render()


def parse_block(text: str) -> Tuple[SupercuspidalLabel, int]:
    """'char,a' (ex.: '1,2' ou 'unr(1/4,0),3') → (rótulo, a)"""
    head, sep, tail = text.rpartition(',')
    if not sep or not tail.strip().lstrip('-').isdigit():
        raise ExprSyntaxError(f"bloco deve ser 'char,a': {text!r}", (0, len(text)))
    parser = _Parser(head)
    char = parser.char()
    if parser.current is not None:
        raise ExprSyntaxError(f"sobra inesperada {parser.current.value!r}", parser.current.where)
    a = int(tail)
    if a < 1:
        raise BadA(f"a deve ser >= 1 (recebido {a})", (len(head) + 1, len(text)))
    return _label(char), a

"""
Testes da linguagem de expressões: tokens, spans de erro e ida e volta texto ↔ parâmetro
"""

import random
from fractions import Fraction

import pytest

from correspondence import enumerate_parameters
from errors import BadA, ExprSyntaxError, InvalidBlock, OddOrthogonalMultiplicity
from expr_parser import parse_block, parse_expr, parse_param, print_param, tokenize
from params import EMPTY, SGN, TRIVIAL, AbstractLabel, SelfDualType, normalize, unr


class TestTokenize:
    """Tokens com posição"""

    def test_token_types(self):
        kinds = [t.type for t in tokenize("2*[1 x S(2)]")]
        assert kinds == ['int', 'mul', 'lbrack', 'int', 'name', 'name', 'lpar', 'int', 'rpar', 'rbrack']

    def test_positions(self):
        tokens = list(tokenize("[sgn x S(4)]"))
        assert tokens[1].value == 'sgn'
        assert tokens[1].where == (1, 4)

    def test_unexpected_character(self):
        with pytest.raises(ExprSyntaxError) as exc:
            list(tokenize("[1 x S(2)] $"))
        assert exc.value.span == (11, 12)


class TestParse:
    """Expressões válidas"""

    @pytest.mark.parametrize("text,expected", [
        ("[1 x S(2)]", normalize([(TRIVIAL, 2, 1)])),
        ("[sgn x S(2)] + [1 x S(2)]", normalize([(TRIVIAL, 2, 1), (SGN, 2, 1)])),
        ("2*[1 x S(2)]", normalize([(TRIVIAL, 2, 2)])),
        ("[unr(1/4,0) x S(1)] + [unr(3/4,0) x S(1)]",
         normalize([(unr(Fraction(1, 4)), 1, 1), (unr(Fraction(3, 4)), 1, 1)])),
        ("[unr(0,-1/2) x S(1)] + [unr(0,+1/2) x S(1)]",
         normalize([(unr(0, Fraction(-1, 2)), 1, 1), (unr(0, Fraction(1, 2)), 1, 1)])),
        ("0", EMPTY),
    ])
    def test_examples(self, text, expected):
        assert parse_param(text) == expected

    def test_whitespace_is_ignored(self):
        assert parse_param("  [1x S(2)]+[sgn  x S( 2 )] ") == parse_param("[1 x S(2)] + [sgn x S(2)]")

    def test_abstract_label(self):
        phi = parse_param("[rho(A;dim=2,sd=sp,eps=-1,frob=1) x S(1)]")
        rho = phi.block(0).rho
        assert rho == AbstractLabel('A', 2, SelfDualType.SYMPLECTIC, eps_half=-1, frob_sign=1)

    def test_abstract_dual_pair(self):
        phi = parse_param("[rho(A;dim=1,sd=ns,dual=B) x S(1)] + [rho(B;dim=1,sd=ns,dual=A) x S(1)]")
        assert phi.j_pairs == ((0, 1),)

    def test_term_spans(self):
        expr = parse_expr("[1 x S(2)] + 2*[sgn x S(2)]")
        assert [t.span for t in expr.terms] == [(0, 10), (13, 27)]
        assert expr.render() == "[1 x S(2)] + 2*[sgn x S(2)]"


class TestErrors:
    """Erros de sintaxe e semânticos com span"""

    @pytest.mark.parametrize("text,span", [
        ("", (0, 1)),
        ("[1 x S(2)] +", (12, 13)),
        ("[foo x S(2)]", (1, 4)),
        ("[1 x S(2)] [", (11, 12)),
        ("[1 y S(2)]", (3, 4)),
        ("[unr(1/0,0) x S(1)]", (7, 8)),
        ("[rho(A;dim=1,size=2) x S(1)]", (13, 17)),
        ("[rho(A;dim=1,dim=2) x S(1)]", (13, 16)),
    ])
    def test_syntax_error_span(self, text, span):
        with pytest.raises(ExprSyntaxError) as exc:
            parse_param(text)
        assert exc.value.span == span
        assert str(exc.value).startswith(f"SyntaxError at {span[0]}:{span[1]}: ")

    def test_bad_a_carries_term_span(self):
        with pytest.raises(BadA) as exc:
            parse_param("[sgn x S(2)] + [1 x S(0)]")
        assert exc.value.span == (15, 25)

    def test_bad_sd(self):
        with pytest.raises(ExprSyntaxError):
            parse_param("[rho(A;dim=1,sd=xx,eps=1) x S(1)]")

    def test_missing_dim(self):
        with pytest.raises(ExprSyntaxError):
            parse_param("[rho(A;sd=sp,eps=1) x S(1)]")

    def test_label_error_gets_char_span(self):
        with pytest.raises(InvalidBlock) as exc:
            parse_param("[rho(A;dim=2,sd=sp) x S(1)]")
        assert exc.value.span == (1, 19)

    def test_semantic_errors_pass_through(self):
        with pytest.raises(OddOrthogonalMultiplicity):
            parse_param("[1 x S(3)]")


class TestBlocks:
    """Argumento 'char,a' de bloco"""

    def test_simple(self):
        assert parse_block("1,4") == (TRIVIAL, 4)
        assert parse_block("sgn,2") == (SGN, 2)

    def test_unr_with_comma_inside(self):
        assert parse_block("unr(1/4,0),3") == (unr(Fraction(1, 4)), 3)

    def test_missing_a(self):
        with pytest.raises(ExprSyntaxError):
            parse_block("1")

    def test_a_must_be_positive(self):
        with pytest.raises(BadA):
            parse_block("1,0")


class TestRoundTrip:
    """parse(print(φ)) = φ sobre expressões canônicas aleatórias"""

    def test_printed_form_is_canonical(self):
        phi = parse_param("[sgn x S(2)] + [1 x S(4)] + [1 x S(2)]")
        assert print_param(phi) == "[1 x S(2)] + [1 x S(4)] + [sgn x S(2)]"

    def test_abstract_label_round_trip(self):
        text = "[rho(A;dim=2,sd=sp,eps=1,wm1=-1,frob=-1) x S(3)]"
        phi = parse_param(text)
        assert print_param(phi) == text
        assert parse_param(print_param(phi)) == phi

    def test_randomized_round_trip(self):
        pool = list(enumerate_parameters(3))
        for n in (1, 2):
            pool.extend(enumerate_parameters(n, phases=('1', '-1', 'i', '-i'),
                                             exponents=(Fraction(0), Fraction(1, 2))))
        rng = random.Random(20240611)
        for phi in rng.choices(pool, k=1000):
            text = print_param(phi)
            assert parse_param(text) == phi
            assert print_param(parse_param(text)) == text

"""
Testes do grupo de Weyl W_n relativo a B^←: palavras, comprimento, t(w) e Levis
"""

import math

import pytest

from errors import IndexOutOfRange, NotNormalizing
from levi_reduction import LeviShape
from weyl import (
    SignedPermutation,
    TMode,
    all_elements,
    comparison_scalar,
    evaluate,
    evaluate_and_reduce,
    length,
    longest_element,
    min_coset_rep,
    reduced_word,
    reduced_words,
    t_invariant,
)


class TestGenerators:
    """Geradores t_i e composição"""

    def test_first_generator_flips_sign(self):
        assert SignedPermutation.generator(2, 1).render() == '(-e1, +e2)'

    def test_other_generators_swap(self):
        assert SignedPermutation.generator(3, 3).render() == '(+e1, +e3, +e2)'

    def test_generator_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            SignedPermutation.generator(2, 0)
        with pytest.raises(IndexOutOfRange):
            SignedPermutation.generator(2, 3)

    def test_generators_are_involutions(self):
        for i in range(1, 4):
            t = SignedPermutation.generator(3, i)
            assert t * t == SignedPermutation.identity(3)
            assert length(t) == 1

    def test_inverse(self):
        for w in all_elements(3):
            assert w * w.inverse() == SignedPermutation.identity(3)

    def test_group_order(self):
        for n in range(1, 5):
            assert sum(1 for _ in all_elements(n)) == 2 ** n * math.factorial(n)


class TestWords:
    """Expressões reduzidas e comprimento"""

    def test_longest_element_of_rank_two(self):
        w0 = longest_element(2)
        assert length(w0) == 4
        assert t_invariant(w0) == 2
        assert reduced_word(w0) == (1, 2, 1, 2)
        assert set(reduced_words(w0)) == {(1, 2, 1, 2), (2, 1, 2, 1)}

    def test_longest_length_is_n_squared(self):
        for n in range(1, 5):
            assert length(longest_element(n)) == n * n

    def test_reduced_word_evaluates_back(self):
        for n in range(1, 4):
            for w in all_elements(n):
                word = reduced_word(w)
                assert evaluate(word, n) == w
                assert len(word) == length(w)

    def test_evaluate_and_reduce_cancels(self):
        w, reduced, ell = evaluate_and_reduce([1, 1], 2)
        assert w == SignedPermutation.identity(2)
        assert reduced == ()
        assert ell == 0

    def test_evaluate_and_reduce_rejects_bad_index(self):
        with pytest.raises(IndexOutOfRange):
            evaluate_and_reduce([1, 3], 2)

    def test_all_reduced_words_have_same_length(self):
        for w in all_elements(3):
            words = reduced_words(w)
            assert all(len(word) == length(w) for word in words)
            assert all(evaluate(word, 3) == w for word in words)


class TestTInvariant:
    """t(w) por raízes longas, por componentes com sinal e pela palavra reduzida"""

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_three_readings_agree(self, n):
        for w in all_elements(n):
            t = t_invariant(w, TMode.ROOTS)
            assert t_invariant(w, TMode.COMPONENTS) == t
            assert t_invariant(w, TMode.WORD) == t

    @pytest.mark.slow
    def test_three_readings_agree_rank_five(self):
        count = 0
        for w in all_elements(5):
            t = t_invariant(w, TMode.ROOTS)
            assert t_invariant(w, TMode.COMPONENTS) == t == t_invariant(w, TMode.WORD)
            count += 1
        assert count == 3840


class TestComparisonScalars:
    """Escalares de comparação entre operadores de entrelaçamento"""

    def test_plus_side_odd_residue(self):
        c = comparison_scalar(longest_element(2), '+', e2=0)
        assert c.value.render() == '1'
        assert c.gamma_exponent == -2

    def test_plus_side_even_residue(self):
        assert comparison_scalar(longest_element(2), '+', e2=1).value.render() == 'q^(-1)'

    def test_minus_side(self):
        assert comparison_scalar(longest_element(2), '-', e2=0).value.render() == 'q^(-2)'
        assert comparison_scalar(SignedPermutation.generator(2, 1), '-', e2=0).value.render() == '-q^(-1)'

    def test_pure_permutation_is_trivial(self):
        t2 = SignedPermutation.generator(2, 2)
        assert comparison_scalar(t2, '-', e2=3).value.render() == '1'

    def test_invalid_side(self):
        with pytest.raises(ValueError):
            comparison_scalar(longest_element(1), '0', e2=0)


class TestMinCosetRep:
    """Representantes mínimos de Ω^M₀·w"""

    def test_longest_modulo_gl2(self):
        rep = min_coset_rep(longest_element(2), LeviShape(0, (2,)))
        assert length(rep) == 3

    def test_minimal_element_is_fixed(self):
        rep = min_coset_rep(SignedPermutation.identity(2), LeviShape(0, (2,)))
        assert rep == SignedPermutation.identity(2)

    def test_not_normalizing(self):
        with pytest.raises(NotNormalizing):
            min_coset_rep(SignedPermutation.generator(2, 2), LeviShape(1, (1,)))

    def test_rank_mismatch(self):
        with pytest.raises(NotNormalizing):
            min_coset_rep(SignedPermutation.identity(2), LeviShape(1, (2,)))

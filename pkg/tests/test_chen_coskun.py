from functools import reduce
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from m0n.chen_coskun import (
    WeightVector,
    cancelled_exponent,
    class_in_basis,
    lambda_numerator,
    lambda_polynomial,
    merged_weights,
    parse_weights,
    pullback_class_closed_form,
    pullback_h_coeff,
    restriction,
    restriction_check,
    weight_vectors as all_weight_vectors,
)
from m0n.classes import class_from_polynomial, pullback_class_from_polynomial, push_down
from m0n.diagonal_mult import is_difference_translation_invariant
from m0n.errors import BadIndex, GcdViolation, InvalidWeights, NotDivisible
from m0n.polyring import exact_divide, primitive_normalize, x
from strategies import weight_vectors


def test_weight_vector_validation():
    assert WeightVector([2, -1, -1]).n == 3
    for bad in ([1], [1, 1], [2, -2], [2, 0, -2]):
        with pytest.raises(InvalidWeights):
            WeightVector(bad)
    assert parse_weights("2,1,-1,-1,-1").a == (2, 1, -1, -1, -1)
    with pytest.raises(InvalidWeights):
        parse_weights("1,a,-1")


def test_smallest_polynomial():
    x1, x2, x3, x4 = (x(i) for i in range(1, 5))
    assert lambda_numerator((1, -1)) == (x3 - x1) * (x4 - x2) - (x4 - x1) * (x3 - x2)
    g = lambda_polynomial((1, -1))
    assert g.degree() == 1 and g == x1 - x2


def test_degree_formula_examples():
    assert lambda_polynomial((1, 1, -1, -1)).degree() == 3
    assert lambda_polynomial((2, 1, -1, -1, -1)).degree() == 5


def test_zero_weight_is_a_spectator():
    assert lambda_polynomial((1, 0, -1)) == lambda_polynomial((1, -1)).rename({2: 3, 3: 4, 4: 5})


def test_pullback_closed_form_example():
    c = pullback_class_closed_form((1, 1, -1, -1))
    assert c.h == 3
    assert c.coeff((5, 6)) == 1
    assert c.coeff((1,)) == 2
    assert c.coeff((1, 5)) == 1
    # I containing both glued markings and something else
    assert c.coeff((1, 5, 6)) == 0
    with pytest.raises(InvalidWeights):
        pullback_class_closed_form((1, -1))
    assert pullback_h_coeff((1, -1)) == 1


def test_class_in_basis_bad_index():
    with pytest.raises(BadIndex):
        class_in_basis((1, 1, -1, -1), 5)


def test_restriction_examples():
    r = restriction((1, 1, -1, -1))
    assert r.merged == (1, 1, -2) and r.agrees and r.stripped_factors == ()
    assert restriction_check((1, 1, 1, -1, -1, -1))
    with pytest.raises(GcdViolation):
        restriction((2, -1, -1))


def test_restriction_with_opposite_signs():
    r = restriction((1, 2, -3))
    assert r.merged == (1, -1)
    assert cancelled_exponent((1, 2, -3)) == 2
    assert r.stripped_factors == ((2, 3, 2), (2, 4, 2))
    assert r.agrees
    assert r.to_json()["agrees"] is True


def test_restriction_exhaustive_small():
    count = 0
    for w in all_weight_vectors(3, 5, 2, 6):
        if reduce(gcd, merged_weights(w), 0) == 1:
            assert restriction_check(w), w.a
            count += 1
    assert count > 100


def test_closed_form_vs_engine_small():
    for w in all_weight_vectors(3, 4, 2, 6):
        assert pullback_class_closed_form(w) == pullback_class_from_polynomial(lambda_polynomial(w), w.n + 2), w.a


def test_weight_vector_generator():
    vs = list(all_weight_vectors(2, 2, 3, 8))
    assert [w.a for w in vs] == [(-1, 1), (1, -1)]
    assert all(0 not in w.a for w in all_weight_vectors(3, 4, 2, 6, allow_zero=False))


# -- properties


@settings(max_examples=40)
@given(weight_vectors(min_n=2, max_n=5))
def test_polynomial_is_invariant_of_expected_degree(w):
    g = lambda_polynomial(w)
    assert is_difference_translation_invariant(g, w.n + 2)
    assert g.degree() == sum(abs(a) for a in w.a) - 1
    # the glued factor divides the numerator exactly once
    quotient = exact_divide(lambda_numerator(w), x(w.n + 1) - x(w.n + 2))
    assert primitive_normalize(quotient) == g
    with pytest.raises(NotDivisible):
        exact_divide(quotient, x(w.n + 1) - x(w.n + 2))


@settings(max_examples=40)
@given(weight_vectors(min_n=2, max_n=5))
def test_negation_symmetry(w):
    assert lambda_polynomial(-w) == lambda_polynomial(w)


@settings(max_examples=40)
@given(weight_vectors(min_n=2, max_n=5), st.data())
def test_permutation_equivariance(w, data):
    perm = data.draw(st.permutations(range(w.n)))
    moved = lambda_polynomial(w.permuted(perm))
    sigma = {i + 1: p + 1 for i, p in enumerate(perm)}
    assert moved == primitive_normalize(lambda_polynomial(w).rename(sigma))


@settings(max_examples=30)
@given(weight_vectors(max_n=5), st.data())
def test_class_in_basis_consistency(w, data):
    r = data.draw(st.integers(1, w.n))
    c = class_in_basis(w, r)
    assert c == push_down(pullback_class_closed_form(w), r)
    assert c == class_from_polynomial(lambda_polynomial(w), w.n + 2, r)
    assert all(coeff > 0 for _, coeff in c.terms)


@settings(max_examples=30)
@given(weight_vectors(max_n=6))
def test_pullback_coefficients_nonnegative(w):
    c = pullback_class_closed_form(w)
    assert c.h >= 1
    assert all(coeff > 0 for _, coeff in c.terms)
    assert c.coeff((w.n + 1, w.n + 2)) == 1

import json
import random
from itertools import combinations, permutations
from pathlib import Path

import pytest
from hypothesis import given, settings

from m0n.chen_coskun import class_in_basis, lambda_polynomial, pullback_class_closed_form
from m0n.classes import (
    DivisorClass,
    class_from_polynomial,
    classes_equal,
    generator_keys,
    index_set,
    pullback_class_from_polynomial,
    push_down,
)
from m0n.diagonal_mult import PartialDiagonal, multiplicity_along, multiplicity_by_substitution
from m0n.errors import BadIndex, BasisMismatch, NotTranslationInvariant
from m0n.hypertree import (
    COMPLETE_QUADRILATERAL,
    automorphism_group_size_brute,
    divisor_polynomial,
    enumerate_irreducible,
)
from m0n.polyring import x
from strategies import weight_vectors

GOLDEN = json.loads((Path(__file__).parent / "data" / "quadrilateral_class.json").read_text())


@pytest.fixture(scope="module")
def quad_poly():
    return divisor_polynomial(COMPLETE_QUADRILATERAL)


def test_index_set_and_keys():
    assert index_set([3, 1, 3]) == (1, 3)
    keys = generator_keys(6, 1)
    assert all(1 not in I and 1 <= len(I) <= 2 for I in keys)
    assert len(keys) == 5 + 10
    assert keys[:5] == [(2,), (3,), (4,), (5,), (6,)]


def test_divisor_class_normalizes_terms():
    c = DivisorClass(6, 1, 2, (((3, 2), 1), ((4,), 2), ((2, 3), 1), ((5,), 0)))
    assert c.terms == (((4,), 2), ((2, 3), 2))
    assert c.coeff([3, 2]) == 2 and c.coeff([5]) == 0


@pytest.mark.parametrize("I", [(1,), (2, 3, 4), (7,), ()])
def test_divisor_class_rejects_bad_keys(I):
    with pytest.raises(ValueError):
        DivisorClass(6, 1, 2, ((I, 1),))


def test_divisor_class_rejects_bad_basis():
    with pytest.raises(BadIndex):
        DivisorClass(6, 7, 2)


def test_json_roundtrip():
    c = DivisorClass(6, 1, 3, (((2, 3), 1), ((4,), 2)))
    data = c.to_json()
    assert data == {"n": 6, "basis_index": 1, "h": 3, "terms": [{"I": [4], "coeff": 2}, {"I": [2, 3], "coeff": 1}]}
    assert DivisorClass.from_json(json.loads(c.dumps())) == c
    assert c.render() == "3*H - 2*E_{4} - 1*E_{2,3}"


def test_golden_quadrilateral(quad_poly):
    assert GOLDEN["hypertree"] == COMPLETE_QUADRILATERAL.to_json()
    pull = pullback_class_from_polynomial(quad_poly, 6)
    assert pull.h == 3
    assert pull == DivisorClass.from_json(GOLDEN["pullback"])
    for r in range(1, 7):
        assert class_from_polynomial(quad_poly, 6, r) == DivisorClass.from_json(GOLDEN["basis"][str(r)])


def test_golden_matches_literal_substitution(quad_poly):
    # independent check of every frozen pullback coefficient
    pull = DivisorClass.from_json(GOLDEN["pullback"])
    full = set(range(1, 7))
    for I in generator_keys(7, 7):
        J = sorted(full - set(I))
        assert pull.coeff(I) == multiplicity_by_substitution(quad_poly, PartialDiagonal(6, J))


def test_quadrilateral_basis_one(quad_poly):
    c = class_from_polynomial(quad_poly, 6, 1)
    assert c.h == multiplicity_along(quad_poly, PartialDiagonal(6, range(2, 7))) == 2
    # quadric through the five points containing the four lines of the blocks' complements
    assert {I for I, _ in c.terms if len(I) == 2} == {(2, 3), (2, 5), (3, 6), (5, 6)}


def test_pullback_requires_invariance():
    with pytest.raises(NotTranslationInvariant):
        pullback_class_from_polynomial(x(1) + x(2), 4)


def test_push_down_simple():
    c = DivisorClass(7, 7, 5, (((1,), 5), ((2,), 3)))
    down = push_down(c, 1)
    assert down == DivisorClass(6, 1, 5)
    with pytest.raises(BadIndex):
        push_down(c, 7)
    with pytest.raises(BasisMismatch):
        push_down(DivisorClass(7, 1, 1), 2)


def test_push_down_keeps_exactly_the_r_keys(quad_poly):
    pull = pullback_class_from_polynomial(quad_poly, 6)
    for r in range(1, 7):
        down = push_down(pull, r)
        expected = {
            tuple(i for i in I if i != r): c for I, c in pull.terms if r in I and 2 <= len(I) <= 3
        }
        assert down.e_coeffs == expected
        assert down.h == pull.coeff((r,))


def test_symmetry_relates_bases(quad_poly):
    base = class_from_polynomial(quad_poly, 6, 1)
    blocks = COMPLETE_QUADRILATERAL.block_set()
    found = 0
    for perm in permutations(range(1, 7)):
        sigma = dict(zip(range(1, 7), perm))
        if COMPLETE_QUADRILATERAL.relabel(sigma).block_set() != blocks:
            continue
        found += 1
        assert class_from_polynomial(quad_poly, 6, sigma[1]) == base.relabel(sigma)
    assert found == automorphism_group_size_brute(COMPLETE_QUADRILATERAL)


def test_classes_equal():
    c = class_in_basis((1, 1, -1, -1), 1)
    assert classes_equal(c, c)
    bumped = DivisorClass(c.n, c.basis_index, c.h, c.terms + (((2,), 1),))
    assert not classes_equal(c, bumped)
    with pytest.raises(BasisMismatch):
        classes_equal(c, class_in_basis((1, 1, -1, -1), 2))


def test_lambda_pullback_matches_closed_form():
    g = lambda_polynomial((1, 1, -1, -1))
    assert pullback_class_from_polynomial(g, 6) == pullback_class_closed_form((1, 1, -1, -1))


def test_fast_class_mode_agrees(quad_poly):
    assert class_from_polynomial(quad_poly, 6, 2, fast=True, rng=random.Random(1)) == class_from_polynomial(
        quad_poly, 6, 2
    )


def test_h_is_multiplicity_of_complement_for_all_hypertrees():
    for n in (6, 7, 8):
        for h in enumerate_irreducible(n):
            g = divisor_polynomial(h)
            assert pullback_class_from_polynomial(g, n).h == g.degree() == h.d - 1
            for r in (1, n):
                c = class_from_polynomial(g, n, r)
                assert c.h == multiplicity_along(g, PartialDiagonal(n, [i for i in range(1, n + 1) if i != r]))
                for I, coeff in c.terms:
                    assert coeff > 0 and r not in I and 1 <= len(I) <= n - 4


@settings(max_examples=25)
@given(weight_vectors(max_n=5))
def test_every_basis_pushes_down_consistently(w):
    g = lambda_polynomial(w)
    n = w.n + 2
    pull = pullback_class_from_polynomial(g, n)
    for r in range(1, n + 1):
        assert class_from_polynomial(g, n, r) == push_down(pull, r)
        total = sum(1 for I, _ in pull.terms if r in I and 2 <= len(I) <= n - 3)
        assert len(push_down(pull, r).terms) == total


def test_generator_count():
    for n in range(5, 9):
        keys = generator_keys(n, 1)
        assert len(keys) == sum(1 for k in range(1, n - 3) for _ in combinations(range(n - 1), k))

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bicyclic.interassociate import (
    InterassociateParams,
    find_idempotents,
    idempotent_formula,
    in_star_core,
    iota,
    iota_inverse,
    star,
    star_closed,
    star_ext,
    star_zero_mult,
    variant,
)
from bicyclic.monoid import ONE, ZERO, Element, multiply, window
from oracles import word_star

P = InterassociateParams
E = Element
small = st.integers(0, 25)
elements = st.builds(Element, small, small)
param_st = st.builds(InterassociateParams, st.integers(0, 6), st.integers(0, 6))


@pytest.mark.parametrize("mn, a, b, expected", [
    ((2, 1), E(0, 1), E(1, 2), E(1, 2)),
    ((1, 2), E(2, 1), E(0, 3), E(2, 5)),
    ((0, 0), E(1, 2), E(3, 4), E(2, 4)),
    ((3, 2), E(0, 3), E(4, 5), E(2, 5)),
])
def test_star_examples(mn, a, b, expected):
    assert star(P(*mn), a, b) == expected
    assert word_star(*mn, a, b) == expected


def test_star_example_closed_forms():
    # q^l p^{j0} * q^n p^m = q^{m-j0+l} p^m and q^n p^m * q^{i0} p^l = q^n p^{n-i0+l}
    m, n = 2, 1
    assert star(P(m, n), E(0, 1), E(n, m)) == E(m - 1 + 0, m)
    m, n = 1, 2
    assert star(P(m, n), E(n, m), E(0, 3)) == E(n, n - 0 + 3)


def test_star_matches_word_definition():
    for m, n in itertools.product(range(3), repeat=2):
        for a, b in itertools.product(window(4), repeat=2):
            assert star(P(m, n), a, b) == word_star(m, n, a, b)


@given(param_st, elements, elements)
def test_closed_form_equals_two_products(params, a, b):
    assert star_closed(params, a, b) == star(params, a, b)


@given(param_st, elements, elements)
def test_variant_with_sandwich_is_star(params, a, b):
    assert variant(params.sandwich, a, b) == star(params, a, b)
    assert InterassociateParams.from_sandwich(params.sandwich) == params


def test_params_reject_negative():
    with pytest.raises(ValueError):
        P(-1, 0)


def test_star_ext_zero_absorbs(params):
    for x in [ZERO] + window(6):
        assert star_ext(params, ZERO, x) is ZERO
        assert star_ext(params, x, ZERO) is ZERO


def test_star_ext_example():
    # qp . qp . qp reduces to qp
    assert word_star(1, 1, (1, 1), (1, 1)) == (1, 1)
    assert star_ext(P(1, 1), E(1, 1), E(1, 1)) == E(1, 1)


@pytest.mark.parametrize("a, b", [(E(2, 3), E(5, 1)), (ONE, ONE), (ZERO, E(1, 1))])
def test_zero_multiplication(a, b):
    assert star_zero_mult(a, b) is ZERO


def test_zero_multiplication_associative():
    pts = [ZERO] + window(4)
    for a, b, c in itertools.product(pts, repeat=3):
        assert star_zero_mult(star_zero_mult(a, b), c) == star_zero_mult(a, star_zero_mult(b, c))


def test_iota_examples():
    assert iota(P(3, 2), E(1, 4)) == E(3, 7)
    for x in window(5):
        assert iota(P(0, 0), x) == x
    assert iota(P(2, 1), ONE) == E(1, 2)


def test_iota_of_one_is_identity_of_core():
    params = P(2, 1)
    e = E(1, 2)
    for x in window(8):
        y = iota(params, x)
        assert star(params, e, y) == y == star(params, y, e)


@pytest.mark.parametrize("mn, x, member", [
    ((3, 2), E(3, 7), True), ((3, 2), E(1, 7), False), ((3, 2), E(2, 2), False), ((0, 0), E(0, 0), True),
])
def test_in_star_core(mn, x, member):
    assert in_star_core(P(*mn), x) is member


def test_core_is_closed_under_star(params):
    core = [x for x in window(8) if in_star_core(params, x)]
    for a, b in itertools.product(core, repeat=2):
        assert in_star_core(params, star(params, a, b))


def test_iota_homomorphism_and_bijection(params):
    for x, y in itertools.product(window(8), repeat=2):
        assert star(params, iota(params, x), iota(params, y)) == iota(params, multiply(x, y))
    image = [iota(params, x) for x in window(15)]
    assert len(set(image)) == len(image)
    for x in window(15 + max(params.m, params.n)):
        if in_star_core(params, x) and x.i <= params.n + 15 and x.j <= params.m + 15:
            assert image.count(x) == 1
            assert iota(params, iota_inverse(params, x)) == x


def test_iota_inverse_rejects_outside():
    with pytest.raises(ValueError):
        iota_inverse(P(3, 2), E(1, 7))


def brute_idempotents(m, n, w):
    return {E(i, j) for i in range(w + 1) for j in range(w + 1)
            if word_star(m, n, (i, j), (i, j)) == (i, j)}


@pytest.mark.parametrize("mn, w, expected", [
    ((0, 0), 3, {E(0, 0), E(1, 1), E(2, 2), E(3, 3)}),
    ((2, 1), 4, {E(1, 2), E(2, 3), E(3, 4)}),
    ((1, 1), 2, {E(1, 1), E(2, 2)}),
])
def test_idempotent_examples(mn, w, expected):
    assert brute_idempotents(*mn, w) == expected
    assert find_idempotents(P(*mn), w) == expected


def test_idempotent_characterisation():
    for m, n in itertools.product(range(4), repeat=2):
        for w in range(1, 13):
            found = find_idempotents(P(m, n), w)
            assert found == idempotent_formula(P(m, n), w)
            assert all(star(P(m, n), e, e) == e for e in found)
    for m, n in [(0, 2), (3, 1)]:
        assert find_idempotents(P(m, n), 7) == brute_idempotents(m, n, 7)


def test_find_idempotents_window_must_be_positive():
    with pytest.raises(ValueError):
        find_idempotents(P(), 0)


@given(param_st, elements, elements, elements)
def test_interassociativity_laws(params, a, b, c):
    assert multiply(a, star(params, b, c)) == star(params, multiply(a, b), c)
    assert star(params, a, multiply(b, c)) == multiply(star(params, a, b), c)
    assert star(params, star(params, a, b), c) == star(params, a, star(params, b, c))

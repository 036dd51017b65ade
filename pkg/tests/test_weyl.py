"""Core operator arithmetic: normal ordering, degrees, symbols, transforms."""

import random
from fractions import Fraction
from math import comb, factorial

import pytest

from conftest import SEEDS
from helpers import (
    check_fourier_involution,
    check_ring_axioms,
    check_word_products,
    oracle_normal_form,
    random_element,
    word_element,
)
from weylkit import (
    Monomial,
    WeylElement,
    bernstein_degree,
    commutator,
    partial_fourier,
    principal_symbol,
    weyl_from_poly,
)
from weylkit.poly import Poly, poly_z, poly_zeta
from weylkit.weyl import PartialFourierSpec, d, normalize, z


def test_defining_relation():
    assert d(1, 2) * z(1, 2) == z(1, 2) * d(1, 2) + WeylElement.one(2)


def test_cross_index_generators_commute():
    for a, b in [(z(1, 3), z(2, 3)), (d(1, 3), d(3, 3)), (d(2, 3), z(3, 3))]:
        assert a * b == b * a


def test_commutator_of_generators():
    m = 3
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            expected = WeylElement.one(m) if i == j else WeylElement.zero(m)
            assert commutator(d(i, m), z(j, m)) == expected
            assert commutator(z(i, m), z(j, m)).is_zero()
            assert commutator(d(i, m), d(j, m)).is_zero()


def test_power_reordering_closed_form():
    # d^p z^q == sum_k C(p,k) C(q,k) k! z^(q-k) d^(p-k)
    for p, q in [(1, 1), (2, 3), (3, 2), (4, 4)]:
        product = d(1, 1, p) * z(1, 1, q)
        expected = WeylElement.zero(1)
        for k in range(min(p, q) + 1):
            coeff = comb(p, k) * comb(q, k) * factorial(k)
            expected = expected + WeylElement.from_monomial(
                Monomial((q - k,), (p - k,)), coeff
            )
        assert product == expected


def test_normalize_matches_oracle():
    word = (("d", 1, 2), ("z", 1, 3), ("d", 2, 1), ("z", 2, 1))
    letters = tuple(
        (kind, index) for kind, index, power in word for _ in range(power)
    )
    engine = normalize(2, word, coeff=Fraction(3, 2))
    oracle = {
        mono: Fraction(3, 2) * c for mono, c in oracle_normal_form(letters, 2).items()
    }
    assert dict(engine.terms) == oracle


def test_normalize_rejects_unknown_kind():
    with pytest.raises(ValueError):
        normalize(1, [("x", 1, 1)])


def test_word_products_match_oracle_sample():
    assert check_word_products(SEEDS["words"], pairs=120) == 120


def test_ring_axioms_sample():
    assert check_ring_axioms(SEEDS["ring"], rounds=25) == 25


def test_commutator_is_a_derivation():
    rng = random.Random("weylkit-derivation")
    for _ in range(20):
        a = random_element(rng, 2)
        b = random_element(rng, 2)
        c = random_element(rng, 2)
        assert commutator(a, b * c) == commutator(a, b) * c + b * commutator(a, c)
        assert commutator(a, b) == -commutator(b, a)


def test_bernstein_degree_basics():
    with pytest.raises(ValueError):
        bernstein_degree(WeylElement.zero(2))
    assert bernstein_degree(WeylElement.one(2)) == 0
    assert bernstein_degree(z(1, 2)) == 1
    assert bernstein_degree(z(1, 2) * d(1, 2)) == 2
    # The commutation rule only drops degree, never raises it.
    assert bernstein_degree(d(1, 2) * z(1, 2)) == 2


def test_bernstein_degree_multiplicative():
    rng = random.Random("weylkit-degree-product")
    for _ in range(25):
        a = random_element(rng, 2)
        b = random_element(rng, 2)
        if a.is_zero() or b.is_zero():
            continue
        assert bernstein_degree(a * b) == bernstein_degree(a) + bernstein_degree(b)


def test_principal_symbol_multiplicative():
    rng = random.Random("weylkit-symbol-product")
    for _ in range(25):
        a = random_element(rng, 2)
        b = random_element(rng, 2)
        if a.is_zero() or b.is_zero():
            continue
        assert principal_symbol(a * b) == principal_symbol(a) * principal_symbol(b)


def test_symbol_forgets_lower_order_terms():
    # sigma(d1 z1) = sigma(z1 d1 + 1) = z1 zeta1
    assert principal_symbol(d(1, 1) * z(1, 1)) == poly_z(1, 1) * poly_zeta(1, 1)


def test_weyl_from_poly_round_trip():
    rng = random.Random("weylkit-symbol-lift")
    for _ in range(20):
        mono = Monomial(
            tuple(rng.randint(0, 2) for _ in range(3)),
            tuple(rng.randint(0, 2) for _ in range(3)),
        )
        symbol = Poly.from_monomial(mono, Fraction(rng.randint(1, 5)))
        assert principal_symbol(weyl_from_poly(symbol)) == symbol


def test_partial_fourier_generator_images():
    spec = PartialFourierSpec(ambient=2, indices=frozenset({2}))
    assert partial_fourier(z(2, 2), spec) == d(2, 2)
    assert partial_fourier(d(2, 2), spec) == -z(2, 2)
    assert partial_fourier(z(1, 2), spec) == z(1, 2)
    assert partial_fourier(d(1, 2), spec) == d(1, 2)


def test_partial_fourier_is_an_algebra_map():
    rng = random.Random("weylkit-fourier-algebra")
    spec = PartialFourierSpec(ambient=3, indices=frozenset({1, 3}))
    for _ in range(20):
        a = random_element(rng, 3)
        b = random_element(rng, 3)
        assert partial_fourier(a * b, spec) == partial_fourier(a, spec) * partial_fourier(b, spec)
        assert partial_fourier(a + b, spec) == partial_fourier(a, spec) + partial_fourier(b, spec)


def test_fourier_involution_sample():
    assert check_fourier_involution(SEEDS["fourier"], rounds=25) == 25


def test_fourier_spec_validates_indices():
    with pytest.raises(ValueError):
        PartialFourierSpec(ambient=2, indices=frozenset({3}))


def test_word_element_round_trip():
    word = (("z", 1), ("d", 2), ("z", 2), ("d", 1))
    assert dict(word_element(word, 2).terms) == oracle_normal_form(word, 2)

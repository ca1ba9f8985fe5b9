import random
from fractions import Fraction

import pytest
from sympy import primerange

from eiscong_lib.bernoulli import (
    CarlitzCase,
    bernoulli_char,
    bernoulli_char_series,
    bernoulli_number,
    bernoulli_polynomial,
    carlitz_certificate,
    staudt_clausen_denominator,
)
from eiscong_lib.dirichlet import (
    construct,
    primitive_characters,
    quadratic_character,
    trivial_character,
)
from eiscong_lib.errors import DomainError


def test_classical_values():
    assert bernoulli_number(0) == 1
    assert bernoulli_number(1) == Fraction(-1, 2)
    assert bernoulli_number(2) == Fraction(1, 6)
    assert bernoulli_number(12) == Fraction(-691, 2730)
    assert bernoulli_number(13) == 0


def test_negative_index():
    with pytest.raises(DomainError) as e:
        bernoulli_number(-1)
    assert e.value.code == "invalid-index"


def test_bernoulli_polynomials():
    assert bernoulli_polynomial(3, Fraction(1, 3)) == Fraction(1, 27)
    assert bernoulli_polynomial(3, Fraction(2, 3)) == Fraction(-1, 27)
    assert bernoulli_polynomial(2, 0) == Fraction(1, 6)


@pytest.mark.parametrize("k", [2, 4, 6, 12])
def test_trivial_character_gives_classical(trivial, k):
    assert bernoulli_char(k, trivial) == bernoulli_number(k)


def test_quadratic_values(quad3, quad4):
    assert bernoulli_char(3, quad3) == Fraction(2, 3)
    assert bernoulli_char(1, quad3) == Fraction(-1, 3)
    assert bernoulli_char(1, quad4) == Fraction(-1, 2)
    assert bernoulli_char(3, quad4) == Fraction(3, 2)


def test_parity_kills_values(quad3, chi5):
    # B_{k,chi} = 0 unless chi(-1) = (-1)^k, for k >= 2
    assert bernoulli_char(2, quad3).is_zero()
    assert bernoulli_char(4, chi5).is_zero()
    assert not bernoulli_char(3, chi5).is_zero()


def test_generating_function_agrees():
    for q in (3, 4, 5, 7, 8):
        for chi in primitive_characters(q):
            for k in range(1, 6):
                assert bernoulli_char(k, chi) == bernoulli_char_series(k, chi)


def test_requires_primitive():
    with pytest.raises(DomainError) as e:
        bernoulli_char(2, trivial_character(3))
    assert e.value.code == "not-primitive"


def test_staudt_clausen():
    assert staudt_clausen_denominator(12) == 2730
    assert staudt_clausen_denominator(2) == 6
    for k in range(2, 31, 2):
        assert bernoulli_number(k).denominator == staudt_clausen_denominator(k), k


def test_bernoulli_char_is_integral_above_k_plus_one():
    rng = random.Random(2024)
    for _ in range(40):
        f = rng.randint(3, 60)
        chars = primitive_characters(f)
        if not chars:
            continue
        chi = rng.choice(chars)
        k = rng.randint(1, 8)
        den = bernoulli_char(k, chi).denominator()
        for ell in primerange(k + 2, 80):
            if f % ell:
                assert den % ell, (chi, k, ell)


def test_carlitz_cases(quad3, quad4):
    assert carlitz_certificate(quad3 * quad4, 2).case_tag is CarlitzCase.TWO_PRIMES
    four = carlitz_certificate(quad4, 3)
    assert four.case_tag is CarlitzCase.FOUR and four.d == 2
    assert carlitz_certificate(quadratic_character(8), 2).case_tag is CarlitzCase.POWER_OF_TWO
    odd = carlitz_certificate(quad3, 3)
    assert odd.case_tag is CarlitzCase.ODD_PRIME and odd.d == 9
    chi9 = construct(9, [(2, 1, 6)])
    power = carlitz_certificate(chi9, 3)
    assert power.case_tag is CarlitzCase.ODD_PRIME_POWER
    assert power.d == 1 - chi9(4)


def test_carlitz_certificate_clears_denominators():
    # away from primes dividing the conductor
    for q in (5, 7, 9, 12, 16):
        for chi in primitive_characters(q):
            for k in range(2, 7):
                cert = carlitz_certificate(chi, k)
                value = cert.d * bernoulli_char(k, chi) * Fraction(1, k)
                for c in value.coeffs:
                    assert all(c.denominator % p for p in (2, 3, 5, 7, 11, 13) if q % p)


def test_carlitz_rejects_trivial(trivial):
    with pytest.raises(DomainError) as e:
        carlitz_certificate(trivial, 4)
    assert e.value.code == "trivial-character"

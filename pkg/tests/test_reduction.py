import random
from fractions import Fraction

import pytest

from eiscong_lib.cyclotomic import CyclotomicNumber, canonicalize
from eiscong_lib.errors import DomainError, NotIntegralError
from eiscong_lib.reduction import (
    Place,
    lift_validate,
    place_above,
    place_conjugate,
    place_extending,
    places_above,
    reduce_at,
    reduce_rational,
    reduce_root_of_unity,
)


def zeta(m, e=1):
    return CyclotomicNumber.root_of_unity(m, e)


def test_first_place_is_smallest_vector():
    assert place_above(5, 4).min_poly == (2, 1)
    assert place_above(7, 3).min_poly == (3, 1)
    assert [p.min_poly for p in places_above(7, 3)] == [(3, 1), (5, 1)]


def test_inert_and_split_degrees():
    # 2 has order 4 modulo 5, so Phi_5 stays irreducible mod 2
    (inert,) = places_above(2, 5)
    assert inert.degree == 4 and inert.field_size == 16
    assert len(places_above(11, 5)) == 4
    assert len(places_above(691, 1)) == 1


def test_bad_primes():
    with pytest.raises(DomainError) as e:
        places_above(9, 4)
    assert e.value.code == "bad-prime"
    with pytest.raises(DomainError) as e:
        places_above(3, 6)
    assert e.value.code == "ramified-unsupported"


def test_reduction_of_roots(quad4):
    w = place_above(5, 4)
    # zeta_4 is a root of x + 2, so it reduces to -2 = 3
    assert reduce_at(zeta(4), w).coeffs == (3,)
    assert reduce_root_of_unity(4, 1, w) == reduce_at(zeta(4), w)
    assert reduce_root_of_unity(2, 1, w).coeffs == (4,)
    assert reduce_at(quad4(3), w).coeffs == (4,)


def test_reduction_is_a_ring_homomorphism():
    rng = random.Random(2)
    for ell, m in ((13, 12), (2, 7), (31, 15)):
        w = place_above(ell, m)
        for _ in range(4):
            a = canonicalize(m, [rng.randint(-9, 9) for _ in range(m)])
            b = canonicalize(
                m, [Fraction(rng.randint(-9, 9), rng.choice((1, 3, 7))) for _ in range(m)]
            )
            if any(c.denominator % ell == 0 for c in b.coeffs):
                continue
            assert reduce_at(a * b, w) == reduce_at(a, w) * reduce_at(b, w)
            assert reduce_at(a + b, w) == reduce_at(a, w) + reduce_at(b, w)


def test_reduction_accepts_subfield_orders():
    w = place_above(7, 12)
    assert reduce_at(zeta(3), w) == reduce_at(zeta(12, 4), w)
    assert reduce_at(CyclotomicNumber.rational(Fraction(1, 2)), w) == reduce_rational(
        Fraction(1, 2), w
    )
    with pytest.raises(DomainError) as e:
        reduce_at(zeta(5), w)
    assert e.value.code == "incompatible-orders"


def test_not_integral():
    w = place_above(5, 4)
    with pytest.raises(NotIntegralError):
        reduce_at(CyclotomicNumber.rational(Fraction(1, 5), 4), w)
    with pytest.raises(NotIntegralError):
        reduce_at(zeta(4) * Fraction(2, 15), w)
    half = reduce_at(zeta(4) * Fraction(1, 2), w)
    assert half + half == reduce_at(zeta(4), w)


def test_field_arithmetic():
    w = place_above(2, 5)
    x = reduce_at(zeta(5), w)
    assert (x**5).is_one()
    assert (x * x.inverse()).is_one()
    assert (x + x).is_zero()
    with pytest.raises(DomainError):
        w.zero().inverse()


def test_place_extension_and_conjugation():
    w = place_above(11, 5)
    big = place_extending(w, 15)
    assert big.m == 15
    # zeta_5 = -c at w = (x + c), so zeta_5 + c vanishes at every place above w
    root_gap = zeta(5) + w.min_poly[0]
    assert reduce_at(root_gap, w).is_zero()
    assert reduce_at(root_gap, big).is_zero()
    assert not reduce_at(zeta(5) + w.min_poly[0] + 1, big).is_zero()
    x = zeta(5) + 3 * zeta(5, 2)
    for a in (2, 3, 4):
        conj = place_conjugate(w, a)
        # sigma_a(x) reduced at sigma_a(w) matches x reduced at w
        assert reduce_at(x.galois(a), conj).coeffs == reduce_at(x, w).coeffs
    assert place_conjugate(w, 1) == w


def test_place_json():
    w = place_above(7, 3)
    assert Place.from_json(w.to_json()) == w
    with pytest.raises(DomainError) as e:
        Place.from_json({"ell": 7, "m": 3, "min_poly": [1, 1]})
    assert e.value.code == "invalid-place"


def test_lift_validation(quad3, chi5):
    assert lift_validate(quad3, 5)
    assert not lift_validate(quad3, 3)
    assert not lift_validate(quad3, 2)
    assert not lift_validate(chi5, 2)
    assert lift_validate(chi5, 3)

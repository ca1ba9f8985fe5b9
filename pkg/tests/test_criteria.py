import itertools

import pytest
from sympy import primerange

from eiscong_lib.criteria import (
    Condition,
    decide_level_raise,
    decide_strong_modularity,
    scan_level_raise,
    serre_type,
    serre_weight,
    verify_cuspidality,
)
from eiscong_lib.dirichlet import (
    construct,
    primitive_characters,
    quadratic_character,
    trivial_character,
)
from eiscong_lib.errors import DomainError
from eiscong_lib.reduction import lift_validate, place_conjugate, places_above

QUAD3 = quadratic_character(3)
QUAD4 = quadratic_character(4)
CHI5 = construct(5, [(2, 1, 4)])
TRIVIAL = trivial_character(1)
ELLS = (7, 11, 13, 17, 19, 23)


def admissible_grid():
    """Every primitive pair of conductor at most 10 with k <= 6 and ell in ELLS."""
    chars = [chi for q in range(1, 11) for chi in primitive_characters(q)]
    for chi1, chi2 in itertools.product(chars, repeat=2):
        for k in range(2, 7):
            if chi1.parity() * chi2.parity() != (-1) ** k:
                continue
            if chi1.modulus * chi2.modulus == 1 and k == 2:
                continue
            for ell in ELLS:
                if ell > k + 1 and lift_validate(chi1, ell) and lift_validate(chi2, ell):
                    yield chi1, chi2, k, ell


def test_serre_weight():
    assert serre_weight(0, 0, 7) == 7
    assert serre_weight(0, 3, 7) == 4
    assert serre_type(TRIVIAL, QUAD4, 3, 7).exponents == (0, 2)
    for k in range(2, 7):
        st = serre_type(TRIVIAL, QUAD4 if k % 2 else TRIVIAL, k, 11)
        assert st.exponents == (0, k - 1)
        assert serre_weight(*st.exponents, 11) == k


def test_ramanujan_691():
    decision = decide_strong_modularity(TRIVIAL, TRIVIAL, 12, 691)
    assert decision.verdict is True
    assert decision.condition is Condition.BERNOULLI_VANISHES
    assert decision.exact_values["bernoulli"].is_zero()


@pytest.mark.parametrize("ell", [17, 491])
def test_weight_twelve_other_primes(ell):
    decision = decide_strong_modularity(TRIVIAL, TRIVIAL, 12, ell)
    assert decision.verdict is False
    assert decision.condition is Condition.NONE


def test_level_one_weight_two_is_never_strongly_modular():
    decision = decide_strong_modularity(TRIVIAL, TRIVIAL, 2, 5)
    assert decision.verdict is False


def test_euler_factor_condition():
    # psi is trivial and 3^6 = 729 = 1 mod 13
    decision = decide_strong_modularity(QUAD3, QUAD3, 6, 13)
    assert decision.verdict is True
    assert decision.condition is Condition.EULER_FACTOR_VANISHES
    assert decision.witness == 3
    assert decision.exact_values["euler_3"].is_one()


def test_serre_type_errors():
    cases = [
        ((TRIVIAL, TRIVIAL, 3, 7), "not-odd"),
        ((TRIVIAL, TRIVIAL, 12, 11), "weight-hypothesis-violated"),
        ((TRIVIAL, QUAD3, 3, 3), "not-a-lift"),
        ((TRIVIAL, TRIVIAL, 12, 15), "bad-prime"),
        ((TRIVIAL, trivial_character(4), 4, 7), "not-primitive"),
    ]
    for args, code in cases:
        with pytest.raises(DomainError) as e:
            decide_strong_modularity(*args)
        assert e.value.code == code


def test_mazur_level_raising():
    assert decide_level_raise(TRIVIAL, TRIVIAL, 2, 5, 11).verdict is True
    decision = decide_level_raise(TRIVIAL, TRIVIAL, 2, 5, 7)
    assert decision.verdict is False
    assert decision.condition is Condition.NONE
    assert scan_level_raise(TRIVIAL, TRIVIAL, 2, 5, 100) == [11, 31, 41, 61, 71]
    assert scan_level_raise(TRIVIAL, TRIVIAL, 2, 5, 10) == []


def test_eta_condition_with_character():
    decision = decide_level_raise(TRIVIAL, QUAD4, 3, 7, 3)
    assert decision.verdict is True
    assert decision.condition is Condition.ETA_MK_UNIT
    assert decision.witness == 3
    assert decision.exact_values["eta_M_Mk"].is_one()
    assert scan_level_raise(TRIVIAL, QUAD4, 3, 7, 50) == [3, 19, 29, 31, 37, 47]


def test_scan_is_thread_count_independent():
    serial = scan_level_raise(TRIVIAL, TRIVIAL, 12, 17, 100)
    assert serial == [13, 47, 67, 89]
    assert scan_level_raise(TRIVIAL, TRIVIAL, 12, 17, 100, threads=4) == serial


def test_level_raise_preconditions():
    with pytest.raises(DomainError) as e:
        decide_level_raise(TRIVIAL, TRIVIAL, 12, 691, 2)
    assert e.value.code == "precondition-violated"
    for M in (2, 7, 9):
        with pytest.raises(DomainError) as e:
            decide_level_raise(TRIVIAL, QUAD4, 3, 7, M)
        assert e.value.code == "bad-prime"


def test_verify_examples():
    assert verify_cuspidality(TRIVIAL, TRIVIAL, 12, 691) is True
    assert verify_cuspidality(TRIVIAL, TRIVIAL, 12, 17) is False
    with pytest.raises(DomainError) as e:
        verify_cuspidality(TRIVIAL, TRIVIAL, 2, 5)
    assert e.value.code == "undefined-series"


def test_strong_modularity_matches_eisenstein_cuspidality():
    for chi1, chi2, k, ell in admissible_grid():
        verdict = decide_strong_modularity(chi1, chi2, k, ell).verdict
        assert verdict == verify_cuspidality(chi1, chi2, k, ell), (chi1, chi2, k, ell)
    for args in ((QUAD3, QUAD3, 6, 13), (TRIVIAL, TRIVIAL, 12, 691)):
        assert decide_strong_modularity(*args).verdict
        assert verify_cuspidality(*args)


def test_level_raising_matches_f2_cuspidality():
    for chi1, chi2, k, ell in admissible_grid():
        if decide_strong_modularity(chi1, chi2, k, ell).verdict:
            continue
        N = chi1.modulus * chi2.modulus
        for M in primerange(2, 51):
            if (N * ell) % M == 0:
                continue
            expected = decide_level_raise(chi1, chi2, k, ell, M).verdict
            actual = verify_cuspidality(chi1, chi2, k, ell, M, "F2")
            assert actual == expected, (chi1, chi2, k, ell, M)


def test_verdicts_transport_along_galois_conjugate_places():
    for chi1, chi2, k in ((TRIVIAL, CHI5, 3), (CHI5, QUAD3, 4), (QUAD4, CHI5, 4)):
        for w in places_above(13, 4):
            base = decide_strong_modularity(chi1, chi2, k, 13, place=w).verdict
            for a in (1, 3):
                moved = place_conjugate(w, a)
                assert moved in places_above(13, 4)
                verdict = decide_strong_modularity(
                    chi1.power(a), chi2.power(a), k, 13, place=moved
                ).verdict
                assert verdict == base


def test_conjugation_symmetry():
    for chi1, chi2, k, ell in admissible_grid():
        direct = decide_strong_modularity(chi1, chi2, k, ell)
        w = place_conjugate(direct.place, -1)
        mirrored = decide_strong_modularity(chi1.conj(), chi2.conj(), k, ell, place=w)
        assert mirrored.verdict == direct.verdict


def test_place_must_match():
    w = places_above(13, 2)[0]
    with pytest.raises(DomainError) as e:
        decide_strong_modularity(TRIVIAL, CHI5, 3, 13, place=w)
    assert e.value.code == "incompatible-orders"

# --- eiscong_lib/bernoulli.py ---
"""
eiscong_lib/bernoulli.py: Classical and generalized Bernoulli numbers.

B_{m,chi} is computed from the Bernoulli polynomials,
    B_{m,chi} = f^(m-1) * sum_{a=1..f} chi(a) * B_m(a/f),
for a primitive character of conductor f. The generating-function expansion
is kept as an independent cross-check.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from sympy import bernoulli, divisors, factorint, isprime

from .cyclotomic import CyclotomicNumber
from .dirichlet import DirichletCharacter
from .errors import DomainError

log = logging.getLogger("eiscong.bern")


@lru_cache(maxsize=None)
def bernoulli_number(m: int) -> Fraction:
    """Classical B_m with B_1 = -1/2."""
    if m < 0:
        raise DomainError("invalid-index", f"Bernoulli index must be non-negative, got {m}")
    if m == 1:
        return Fraction(-1, 2)
    value = bernoulli(m)
    return Fraction(int(value.p), int(value.q))


def bernoulli_polynomial(m: int, x: Fraction) -> Fraction:
    """B_m(x) = sum_j C(m, j) B_j x^(m-j)."""
    x = Fraction(x)
    return sum(
        (math.comb(m, j) * bernoulli_number(j) * x ** (m - j) for j in range(m + 1)),
        Fraction(0),
    )


@lru_cache(maxsize=2048)
def bernoulli_char(m: int, chi: DirichletCharacter) -> CyclotomicNumber:
    """Generalized Bernoulli number B_{m,chi} in Q(zeta_{order(chi)})."""
    if m < 1:
        raise DomainError(
            "invalid-index", f"generalized Bernoulli index must be >= 1, got {m}"
        )
    chi.require_primitive()
    f = chi.modulus
    terms: dict[int, Fraction] = {}
    for a in range(1, f + 1):
        e = chi.exponent(a)
        if e is None:
            continue
        terms[e] = terms.get(e, Fraction(0)) + bernoulli_polynomial(m, Fraction(a, f))
    value = CyclotomicNumber.from_exponents(chi.order, terms) * Fraction(f) ** (m - 1)
    log.debug("B_{%d,chi} for chi mod %d of order %d: %s", m, f, chi.order, value)
    return value


def bernoulli_char_series(m: int, chi: DirichletCharacter) -> CyclotomicNumber:
    """B_{m,chi} by dividing power series in the generating function.

    sum chi(a) e^(at) divided by (e^(ft) - 1)/t, read off at t^m.
    """
    chi.require_primitive()
    f = chi.modulus
    numerator = []
    for j in range(m + 1):
        terms: dict[int, int] = {}
        for a in range(1, f + 1):
            e = chi.exponent(a)
            if e is not None:
                terms[e] = terms.get(e, 0) + a**j
        numerator.append(
            CyclotomicNumber.from_exponents(chi.order, terms) * Fraction(1, math.factorial(j))
        )
    denominator = [Fraction(f ** (j + 1), math.factorial(j + 1)) for j in range(m + 1)]
    quotient: list[CyclotomicNumber] = []
    for j in range(m + 1):
        acc = numerator[j]
        for i in range(1, j + 1):
            acc = acc - quotient[j - i] * denominator[i]
        quotient.append(acc * (1 / denominator[0]))
    return quotient[m] * math.factorial(m)


def staudt_clausen_denominator(k: int) -> int:
    """Product of the primes p with (p - 1) | k."""
    result = 1
    for d in divisors(k):
        if isprime(d + 1):
            result *= d + 1
    return result


class CarlitzCase(str, Enum):
    TWO_PRIMES = "two-prime-divisors"
    FOUR = "conductor-four"
    POWER_OF_TWO = "power-of-two"
    ODD_PRIME = "odd-prime"
    ODD_PRIME_POWER = "odd-prime-power"


@dataclass(frozen=True)
class CarlitzCertificate:
    """Multiplier d making d * B_{k,chi} / k integral away from the conductor."""

    d: CyclotomicNumber
    case_tag: CarlitzCase


def carlitz_certificate(chi: DirichletCharacter, k: int) -> CarlitzCertificate:
    chi.require_primitive()
    if chi.is_trivial():
        raise DomainError(
            "trivial-character", "use the Staudt-Clausen denominator for the trivial character"
        )
    f0 = chi.modulus
    factors = factorint(f0)
    if len(factors) >= 2:
        return CarlitzCertificate(CyclotomicNumber.one(chi.order), CarlitzCase.TWO_PRIMES)
    ((p, n),) = factors.items()
    if f0 == 4:
        return CarlitzCertificate(CyclotomicNumber.rational(2, chi.order), CarlitzCase.FOUR)
    if p == 2:
        return CarlitzCertificate(CyclotomicNumber.one(chi.order), CarlitzCase.POWER_OF_TWO)
    if n == 1:
        return CarlitzCertificate(
            CyclotomicNumber.rational(k * f0, chi.order), CarlitzCase.ODD_PRIME
        )
    return CarlitzCertificate(1 - chi(1 + p), CarlitzCase.ODD_PRIME_POWER)

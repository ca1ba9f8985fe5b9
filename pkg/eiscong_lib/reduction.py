# --- eiscong_lib/reduction.py ---
"""
eiscong_lib/reduction.py: Places of Q(zeta_m) above a prime ell and the
reduction map into the residue field F_{ell^d}.

A place is an irreducible factor g of Phi_m modulo ell; its residue field is
presented as F_ell[x]/(g), so zeta_m reduces to the class of x.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
    gf_add,
    gf_compose_mod,
    gf_factor_sqf,
    gf_from_int_poly,
    gf_mul,
    gf_neg,
    gf_pow_mod,
    gf_rem,
    gf_sub,
)

from .cyclotomic import CyclotomicNumber, cyclotomic_coeffs
from .dirichlet import DirichletCharacter
from .errors import DomainError, NotIntegralError

log = logging.getLogger("eiscong.reduce")


def _high(coeffs) -> list:
    """Ascending coefficients to the descending form galoistools expects."""
    out = list(reversed(coeffs))
    while out and not out[0]:
        out.pop(0)
    return [ZZ(c) for c in out]


def _ascending(poly, d: int) -> tuple[int, ...]:
    out = [int(c) for c in reversed(poly)]
    return tuple(out + [0] * (d - len(out)))


@dataclass(frozen=True)
class Place:
    """A prime above ell in Q(zeta_m), given by a monic factor of Phi_m mod ell."""

    ell: int
    m: int
    min_poly: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.min_poly) - 1

    @property
    def field_size(self) -> int:
        return self.ell**self.degree

    def element(self, coeffs) -> "FiniteFieldElement":
        d = self.degree
        lifted = _high([int(c) % self.ell for c in coeffs])
        reduced = gf_rem(lifted, _high(self.min_poly), self.ell, ZZ)
        return FiniteFieldElement(self, _ascending(reduced, d))

    def scalar(self, value: int) -> "FiniteFieldElement":
        coeffs = [0] * self.degree
        coeffs[0] = value % self.ell
        return FiniteFieldElement(self, tuple(coeffs))

    def zero(self) -> "FiniteFieldElement":
        return self.scalar(0)

    def one(self) -> "FiniteFieldElement":
        return self.scalar(1)

    def to_json(self) -> dict:
        return {"ell": self.ell, "m": self.m, "min_poly": list(self.min_poly)}

    @classmethod
    def from_json(cls, data: dict) -> "Place":
        ell, m = int(data["ell"]), int(data["m"])
        min_poly = tuple(int(c) % ell for c in data["min_poly"])
        if min_poly not in [p.min_poly for p in places_above(ell, m)]:
            raise DomainError(
                "invalid-place", f"{min_poly} is not a factor of Phi_{m} mod {ell}"
            )
        return cls(ell, m, min_poly)

    def __repr__(self) -> str:
        return f"Place(ell={self.ell}, m={self.m}, g={list(self.min_poly)})"


@dataclass(frozen=True)
class FiniteFieldElement:
    """An element of F_ell[x]/(g) in ascending polynomial-basis coordinates."""

    place: Place
    coeffs: tuple[int, ...]

    def _wrap(self, poly) -> "FiniteFieldElement":
        return FiniteFieldElement(self.place, _ascending(poly, self.place.degree))

    def _coerce(self, other) -> "FiniteFieldElement":
        if isinstance(other, FiniteFieldElement):
            if other.place != self.place:
                raise DomainError(
                    "incompatible-orders", "elements of different residue fields"
                )
            return other
        return self.place.scalar(int(other))

    def __add__(self, other) -> "FiniteFieldElement":
        other = self._coerce(other)
        return self._wrap(gf_add(_high(self.coeffs), _high(other.coeffs), self.place.ell, ZZ))

    __radd__ = __add__

    def __sub__(self, other) -> "FiniteFieldElement":
        other = self._coerce(other)
        return self._wrap(gf_sub(_high(self.coeffs), _high(other.coeffs), self.place.ell, ZZ))

    def __rsub__(self, other) -> "FiniteFieldElement":
        return self._coerce(other) - self

    def __neg__(self) -> "FiniteFieldElement":
        return self._wrap(gf_neg(_high(self.coeffs), self.place.ell, ZZ))

    def __mul__(self, other) -> "FiniteFieldElement":
        other = self._coerce(other)
        ell = self.place.ell
        product = gf_mul(_high(self.coeffs), _high(other.coeffs), ell, ZZ)
        return self._wrap(gf_rem(product, _high(self.place.min_poly), ell, ZZ))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "FiniteFieldElement":
        if n < 0:
            return self.inverse() ** (-n)
        ell = self.place.ell
        return self._wrap(
            gf_pow_mod(_high(self.coeffs), n, _high(self.place.min_poly), ell, ZZ)
        )

    def inverse(self) -> "FiniteFieldElement":
        if self.is_zero():
            raise DomainError("division-by-zero", "zero has no inverse in the residue field")
        return self ** (self.place.field_size - 2)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    def __repr__(self) -> str:
        return f"GF({self.place.ell}^{self.place.degree}){list(self.coeffs)}"


@lru_cache(maxsize=None)
def places_above(ell: int, m: int) -> tuple[Place, ...]:
    """Every place of Q(zeta_m) over ell, smallest ascending coefficient vector first."""
    if not isprime(ell):
        raise DomainError("bad-prime", f"{ell} is not prime")
    if m % ell == 0:
        raise DomainError(
            "ramified-unsupported", f"ell={ell} divides the cyclotomic order {m}"
        )
    phi = gf_from_int_poly(list(reversed(cyclotomic_coeffs(m))), ell)
    _, factors = gf_factor_sqf(phi, ell, ZZ)
    vectors = sorted(_ascending(g, len(g)) for g in factors)
    places = tuple(Place(ell, m, v) for v in vectors)
    log.debug(
        "Phi_%d mod %d splits into %d factors of degree %d",
        m,
        ell,
        len(places),
        places[0].degree,
    )
    return places


def place_above(ell: int, m: int) -> Place:
    return places_above(ell, m)[0]


def _root_power_mod(exponent: int, modulus: tuple[int, ...], ell: int) -> list:
    """x^exponent reduced modulo the given ascending polynomial, descending form."""
    return gf_pow_mod([ZZ(1), ZZ(0)], exponent, _high(modulus), ell, ZZ)


def place_extending(place: Place, order: int) -> Place:
    """The first place of Q(zeta_order) lying above the given place of Q(zeta_m)."""
    if order % place.m:
        raise DomainError(
            "incompatible-orders", f"{place.m} does not divide the target order {order}"
        )
    if order == place.m:
        return place
    step = order // place.m
    for candidate in places_above(place.ell, order):
        image = _root_power_mod(step, candidate.min_poly, place.ell)
        modulus = _high(candidate.min_poly)
        value = gf_compose_mod(_high(place.min_poly), image, modulus, place.ell, ZZ)
        if not value:
            return candidate
    raise DomainError("invalid-place", f"no place of Q(zeta_{order}) extends {place}")


def place_conjugate(place: Place, a: int) -> Place:
    """The place sigma_a(w) for the automorphism zeta -> zeta^a."""
    b = pow(a, -1, place.m)
    image = _root_power_mod(b, place.min_poly, place.ell)
    for candidate in places_above(place.ell, place.m):
        value = gf_compose_mod(
            _high(candidate.min_poly), image, _high(place.min_poly), place.ell, ZZ
        )
        if not value:
            return candidate
    raise DomainError("invalid-place", f"no conjugate of {place} under {a}")


def reduce_rational(value: Fraction, place: Place) -> FiniteFieldElement:
    value = Fraction(value)
    if value.denominator % place.ell == 0:
        raise NotIntegralError(f"{value} has ell={place.ell} in its denominator")
    return place.scalar(value.numerator * pow(value.denominator, -1, place.ell))


def reduce_at(x: CyclotomicNumber, place: Place) -> FiniteFieldElement:
    """The image of x in the residue field of the place."""
    if place.m % x.order:
        raise DomainError(
            "incompatible-orders",
            f"order {x.order} does not divide the place's ambient order {place.m}",
        )
    if x.is_rational():
        return reduce_rational(x.as_rational(), place)
    y = x.promote(place.m)
    ell = place.ell
    if y.denominator() % ell == 0:
        raise NotIntegralError(f"{x!r} has ell={ell} in a coefficient denominator")
    residues = [c.numerator * pow(c.denominator, -1, ell) % ell for c in y.coeffs]
    return place.element(residues)


def reduce_root_of_unity(order: int, exponent: int, place: Place) -> FiniteFieldElement:
    """The image of zeta_order^exponent, computed as a power of the class of x."""
    if place.m % order:
        raise DomainError("incompatible-orders", f"order {order} does not divide {place.m}")
    power = (exponent % order) * (place.m // order)
    image = _root_power_mod(power, place.min_poly, place.ell)
    return FiniteFieldElement(place, _ascending(image, place.degree))


def lift_validate(chi: DirichletCharacter, ell: int) -> bool:
    """True when chi is the multiplicative lift of its own reduction modulo ell."""
    return chi.order % ell != 0 and chi.conductor % ell != 0

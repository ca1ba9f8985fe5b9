# --- eiscong_lib/cyclotomic.py ---
"""
eiscong_lib/cyclotomic.py: Exact arithmetic in cyclotomic fields.

A CyclotomicNumber is an element of Q(zeta_m) stored in the power basis
1, zeta_m, ..., zeta_m^(phi(m)-1) with exact rational coefficients. The
representation is always reduced modulo the m-th cyclotomic polynomial, so
two numbers of the same order are equal exactly when their coefficient
tuples are equal. Orders are never minimised automatically.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

import mpmath
from sympy import Matrix, Poly, QQ, Rational, cyclotomic_poly, symbols, totient

from .errors import DomainError

log = logging.getLogger("eiscong.arith")

_X = symbols("x")

RationalLike = int | Fraction


@lru_cache(maxsize=None)
def euler_phi(m: int) -> int:
    """Returns phi(m), the dimension of Q(zeta_m) over Q."""
    return int(totient(m))


@lru_cache(maxsize=None)
def cyclotomic_coeffs(m: int) -> tuple[int, ...]:
    """Ascending integer coefficients of the m-th cyclotomic polynomial."""
    if m < 1:
        raise DomainError("invalid-order", f"cyclotomic order must be positive, got {m}")
    poly = cyclotomic_poly(m, _X, polys=True)
    coeffs = tuple(int(c) for c in reversed(poly.all_coeffs()))
    log.debug("Phi_%d has degree %d", m, len(coeffs) - 1)
    return coeffs


def _scaled(coeffs: Iterable[Fraction]) -> tuple[list[int], int]:
    """Integer numerators over a common denominator."""
    coeffs = list(coeffs)
    den = 1
    for c in coeffs:
        den = math.lcm(den, c.denominator)
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def _reduce(m: int, ints: list[int], den: int) -> "CyclotomicNumber":
    """Reduces sum(ints[e] * zeta_m^e) / den modulo Phi_m; len(ints) <= 2m."""
    if len(ints) > m:
        folded = ints[:m]
        for e in range(m, len(ints)):
            folded[e - m] += ints[e]
        ints = folded
    phi = cyclotomic_coeffs(m)
    d = len(phi) - 1
    support = [(j, p) for j, p in enumerate(phi[:d]) if p]
    # Phi_m is monic: long division never leaves Z
    for i in range(len(ints) - 1, d - 1, -1):
        c = ints[i]
        if c:
            shift = i - d
            for j, p in support:
                ints[shift + j] -= c * p
    ints = ints[:d] + [0] * (d - len(ints))
    return CyclotomicNumber(m, tuple(Fraction(c, den) for c in ints))


def _from_exponents(m: int, terms: Mapping[int, Fraction]) -> "CyclotomicNumber":
    """Builds sum(c * zeta_m^e) from an exponent -> coefficient mapping."""
    den = 1
    for c in terms.values():
        den = math.lcm(den, c.denominator)
    ints = [0] * m
    for e, c in terms.items():
        if c:
            ints[e % m] += c.numerator * (den // c.denominator)
    return _reduce(m, ints, den)


def canonicalize(order: int, poly: Iterable[RationalLike]) -> "CyclotomicNumber":
    """Returns the canonical representative of sum(poly[i] * zeta_order^i)."""
    if order < 1:
        raise DomainError("invalid-order", f"cyclotomic order must be positive, got {order}")
    terms: dict[int, Fraction] = {}
    for i, c in enumerate(poly):
        c = Fraction(c)
        if c:
            e = i % order
            terms[e] = terms.get(e, Fraction(0)) + c
    return _from_exponents(order, terms)


def _to_fraction(text: str) -> Fraction:
    return Fraction(text)


@dataclass(frozen=True, eq=False)
class CyclotomicNumber:
    """An exact element of Q(zeta_order) in canonical power-basis form."""

    order: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.order < 1:
            raise DomainError("invalid-order", f"order must be positive, got {self.order}")
        if len(self.coeffs) != euler_phi(self.order):
            raise DomainError(
                "invalid-order",
                f"expected {euler_phi(self.order)} coefficients for order {self.order}",
            )

    # --- Constructors ---
    @classmethod
    def zero(cls, order: int = 1) -> "CyclotomicNumber":
        return cls(order, (Fraction(0),) * euler_phi(order))

    @classmethod
    def rational(cls, value: RationalLike, order: int = 1) -> "CyclotomicNumber":
        coeffs = [Fraction(0)] * euler_phi(order)
        coeffs[0] = Fraction(value)
        return cls(order, tuple(coeffs))

    @classmethod
    def one(cls, order: int = 1) -> "CyclotomicNumber":
        return cls.rational(1, order)

    @classmethod
    def root_of_unity(cls, order: int, exponent: int = 1) -> "CyclotomicNumber":
        """Returns zeta_order^exponent."""
        return _from_exponents(order, {exponent % order: Fraction(1)})

    @classmethod
    def from_exponents(cls, order: int, terms: Mapping[int, RationalLike]):
        """Returns sum(c * zeta_order^e) for an exponent -> coefficient mapping."""
        return _from_exponents(order, {e: Fraction(c) for e, c in terms.items()})

    # --- Predicates ---
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def is_one(self) -> bool:
        return self.is_rational() and self.coeffs[0] == 1

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise DomainError("incompatible-orders", "value is not rational")
        return self.coeffs[0]

    def denominator(self) -> int:
        """Least common denominator of the power-basis coefficients."""
        den = 1
        for c in self.coeffs:
            den = math.lcm(den, c.denominator)
        return den

    # --- Field changes ---
    def promote(self, order: int) -> "CyclotomicNumber":
        """Re-expresses self in Q(zeta_order) via zeta_m -> zeta_order^(order/m)."""
        if order % self.order:
            raise DomainError(
                "incompatible-orders", f"order {self.order} does not divide {order}"
            )
        if order == self.order:
            return self
        step = order // self.order
        return _from_exponents(order, {i * step: c for i, c in enumerate(self.coeffs) if c})

    def demote(self, order: int) -> "CyclotomicNumber":
        """Expresses self in the subfield Q(zeta_order); only used by tests."""
        if self.order % order:
            raise DomainError(
                "incompatible-orders", f"order {order} does not divide {self.order}"
            )
        if order == self.order:
            return self
        d = euler_phi(order)
        columns = [
            [
                Rational(c.numerator, c.denominator)
                for c in self.root_of_unity(order, j).promote(self.order).coeffs
            ]
            for j in range(d)
        ]
        basis = Matrix(columns).T
        target = Matrix([Rational(c.numerator, c.denominator) for c in self.coeffs])
        try:
            solution, params = basis.gauss_jordan_solve(target)
        except ValueError as e:
            raise DomainError(
                "incompatible-orders", f"value does not lie in Q(zeta_{order})"
            ) from e
        if params.shape[0]:
            solution = solution.subs({p: 0 for p in params})
        return CyclotomicNumber(
            order, tuple(Fraction(int(c.p), int(c.q)) for c in solution)
        )

    def _align(self, other) -> tuple["CyclotomicNumber", "CyclotomicNumber"]:
        if not isinstance(other, CyclotomicNumber):
            other = CyclotomicNumber.rational(Fraction(other), self.order)
        if other.order == self.order:
            return self, other
        common = math.lcm(self.order, other.order)
        return self.promote(common), other.promote(common)

    # --- Ring operations ---
    def __add__(self, other) -> "CyclotomicNumber":
        a, b = self._align(other)
        return CyclotomicNumber(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CyclotomicNumber":
        return CyclotomicNumber(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "CyclotomicNumber":
        a, b = self._align(other)
        return CyclotomicNumber(a.order, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other) -> "CyclotomicNumber":
        return (-self) + other

    def __mul__(self, other) -> "CyclotomicNumber":
        if not isinstance(other, CyclotomicNumber):
            c = Fraction(other)
            return CyclotomicNumber(self.order, tuple(x * c for x in self.coeffs))
        a, b = self._align(other)
        if b.is_rational():
            return a * b.coeffs[0]
        if a.is_rational():
            return b * a.coeffs[0]
        x, dx = _scaled(a.coeffs)
        y, dy = _scaled(b.coeffs)
        d = len(x)
        support = [(j, c) for j, c in enumerate(y) if c]
        product = [0] * (2 * d - 1)
        for i, c in enumerate(x):
            if c:
                for j, e in support:
                    product[i + j] += c * e
        return _reduce(a.order, product, dx * dy)

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        """Exact inverse via the extended gcd with the cyclotomic polynomial."""
        if self.is_zero():
            raise DomainError("division-by-zero", "cannot invert zero")
        if self.is_rational():
            return CyclotomicNumber.rational(1 / self.coeffs[0], self.order)
        num = Poly(
            [Rational(c.numerator, c.denominator) for c in reversed(self.coeffs)],
            _X,
            domain=QQ,
        )
        modulus = Poly(list(reversed(cyclotomic_coeffs(self.order))), _X, domain=QQ)
        inv = num.invert(modulus)
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(inv.all_coeffs())]
        return canonicalize(self.order, coeffs)

    def __truediv__(self, other) -> "CyclotomicNumber":
        if not isinstance(other, CyclotomicNumber):
            c = Fraction(other)
            if not c:
                raise DomainError("division-by-zero", "division by rational zero")
            return self * (1 / c)
        return self * other.inverse()

    def __rtruediv__(self, other) -> "CyclotomicNumber":
        return self.inverse() * other

    def __pow__(self, n: int) -> "CyclotomicNumber":
        if n < 0:
            return self.inverse() ** (-n)
        result = CyclotomicNumber.one(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def galois(self, a: int) -> "CyclotomicNumber":
        """Applies the automorphism zeta_m -> zeta_m^a (a coprime to m)."""
        if math.gcd(a, self.order) != 1:
            raise DomainError(
                "incompatible-orders", f"{a} is not a unit modulo {self.order}"
            )
        return _from_exponents(
            self.order, {i * a: c for i, c in enumerate(self.coeffs) if c}
        )

    def conjugate(self) -> "CyclotomicNumber":
        """Complex conjugation, zeta_m -> zeta_m^-1."""
        return self.galois(-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, (CyclotomicNumber, int, Fraction)):
            return NotImplemented
        a, b = self._align(other)
        return a.coeffs == b.coeffs

    __hash__ = None

    # --- Numerics and serialisation ---
    def embed(self, precision_bits: int = 53) -> complex:
        """Numeric value under zeta_m -> exp(2*pi*i/m)."""
        if precision_bits < 53:
            raise DomainError("invalid-precision", "at least 53 bits are required")
        with mpmath.workprec(precision_bits):
            total = mpmath.mpc(0)
            for j, c in enumerate(self.coeffs):
                if c:
                    root = mpmath.expjpi(mpmath.mpf(2 * j) / self.order)
                    total += mpmath.mpf(c.numerator) / c.denominator * root
            return complex(total)

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CyclotomicNumber":
        return canonicalize(int(data["order"]), [_to_fraction(c) for c in data["coeffs"]])

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            terms.append(str(c) if i == 0 else f"{c}*z{self.order}^{i}")
        return f"Cyclo({' + '.join(terms) or '0'})"

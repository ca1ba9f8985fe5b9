# --- eiscong_lib/eisenstein.py ---
"""
eiscong_lib/eisenstein.py: Eisenstein series E_k^{chi1,chi2}, their q-expansions,
the degeneracy operator, the level-raising combinations F1/F2 and the exact
constant terms at cusps.

For primitive chi1 (conductor f1) and chi2 (conductor f2), E has level
N = f1*f2, weight k, nebentypus chi1*chi2 and expansion
    a_0 = -delta(chi1) * B_{k,chi2} / 2k,
    a_n = sum_{m | n} chi1(n/m) * chi2(m) * m^(k-1).
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from sympy import divisors, isprime, primefactors
from sympy.core.intfunc import igcdex

from .bernoulli import bernoulli_char
from .cyclotomic import CyclotomicNumber
from .dirichlet import DirichletCharacter, gauss_sum
from .errors import DomainError, NotIntegralError
from .reduction import FiniteFieldElement, Place, reduce_at

log = logging.getLogger("eiscong.eis")

DEFAULT_PRECISION = 100


class Variant(str, Enum):
    E = "E"
    F1 = "F1"
    F2 = "F2"


@dataclass(frozen=True)
class QExpansion:
    level: int
    weight: int
    nebentypus: DirichletCharacter
    precision: int
    coeffs: tuple[CyclotomicNumber, ...]

    def __getitem__(self, n: int) -> CyclotomicNumber:
        return self.coeffs[n]

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "weight": self.weight,
            "nebentypus": self.nebentypus.to_json(),
            "precision": self.precision,
            "coeffs": [c.to_json() for c in self.coeffs],
        }


@dataclass(frozen=True)
class ReducedQExpansion:
    place: Place
    coeffs: tuple[FiniteFieldElement, ...]

    def to_json(self) -> dict:
        return {"place": self.place.to_json(), "coeffs": [c.to_json() for c in self.coeffs]}


@dataclass(frozen=True)
class CuspMatrix:
    """gamma = (u beta; v delta) in SL_2(Z)."""

    u: int
    beta: int
    v: int
    delta: int

    def __post_init__(self):
        if self.u * self.delta - self.v * self.beta != 1:
            raise DomainError(
                "invalid-matrix",
                f"({self.u} {self.beta}; {self.v} {self.delta}) has determinant "
                f"{self.u * self.delta - self.v * self.beta}",
            )

    @classmethod
    def completing(cls, u: int, v: int) -> "CuspMatrix":
        """A unimodular matrix with first column (u, v), gcd(u, v) = 1."""
        x, y, g = map(int, igcdex(u, v))
        if g != 1:
            raise DomainError("invalid-matrix", f"gcd({u}, {v}) = {g}")
        # u*x + v*y = 1, so delta = x and beta = -y
        return cls(u, -y, v, x)

    def to_json(self) -> dict:
        return {"u": self.u, "beta": self.beta, "v": self.v, "delta": self.delta}


# --- Series ---
def check_series(chi1: DirichletCharacter, chi2: DirichletCharacter, k: int):
    """Raises unless E_k^{chi1,chi2} is defined."""
    chi1.require_primitive("chi1")
    chi2.require_primitive("chi2")
    if k < 2:
        raise DomainError("undefined-series", f"weight must be at least 2, got {k}")
    if chi1.parity() * chi2.parity() != (-1) ** k:
        raise DomainError(
            "not-odd-compatible",
            f"chi1(-1)chi2(-1) = {chi1.parity() * chi2.parity()} but (-1)^k = {(-1) ** k}",
        )
    if chi1.modulus * chi2.modulus == 1 and k == 2:
        raise DomainError("undefined-series", "no Eisenstein series of level 1 and weight 2")


def coefficient_order(chi1: DirichletCharacter, chi2: DirichletCharacter) -> int:
    return math.lcm(chi1.order, chi2.order)


def eis_qexp(
    chi1: DirichletCharacter,
    chi2: DirichletCharacter,
    k: int,
    precision: int = DEFAULT_PRECISION,
) -> QExpansion:
    """The q-expansion of E_k^{chi1,chi2} up to q^precision."""
    check_series(chi1, chi2, k)
    n = coefficient_order(chi1, chi2)
    terms: list[dict[int, int]] = [{} for _ in range(precision + 1)]
    for m in range(1, precision + 1):
        e2 = chi2.scaled_exponent(m, n)
        if e2 is None:
            continue
        weight = m ** (k - 1)
        for idx in range(m, precision + 1, m):
            e1 = chi1.scaled_exponent(idx // m, n)
            if e1 is None:
                continue
            key = (e1 + e2) % n
            bucket = terms[idx]
            bucket[key] = bucket.get(key, 0) + weight

    if chi1.is_trivial():
        a0 = (bernoulli_char(k, chi2) * Fraction(-1, 2 * k)).promote(n)
    else:
        a0 = CyclotomicNumber.zero(n)
    coeffs = [a0]
    coeffs += [CyclotomicNumber.from_exponents(n, terms[i]) for i in range(1, precision + 1)]
    log.debug(
        "E_%d with conductors (%d, %d): %d coefficients in Q(zeta_%d)",
        k,
        chi1.modulus,
        chi2.modulus,
        precision + 1,
        n,
    )
    return QExpansion(chi1.modulus * chi2.modulus, k, chi1 * chi2, precision, tuple(coeffs))


def hecke_eigenvalue(
    chi1: DirichletCharacter, chi2: DirichletCharacter, k: int, p: int
) -> CyclotomicNumber:
    """chi1(p) + chi2(p) p^(k-1)."""
    return chi1(p) + chi2(p) * p ** (k - 1)


def degeneracy(f: QExpansion, M: int) -> QExpansion:
    """alpha_M f(z) = f(Mz)."""
    if M < 1:
        raise DomainError("bad-level", f"degeneracy index must be positive, got {M}")
    zero = CyclotomicNumber.zero(f.coeffs[0].order)
    coeffs = tuple(f.coeffs[i // M] if i % M == 0 else zero for i in range(f.precision + 1))
    return QExpansion(f.level * M, f.weight, f.nebentypus, f.precision, coeffs)


def _check_raising_prime(chi1: DirichletCharacter, chi2: DirichletCharacter, M: int):
    N = chi1.modulus * chi2.modulus
    if not isprime(M) or N % M == 0:
        raise DomainError("bad-level", f"M={M} must be a prime not dividing N={N}")


def level_raise_combo(
    chi1: DirichletCharacter,
    chi2: DirichletCharacter,
    k: int,
    M: int,
    variant: Variant | str,
    precision: int = DEFAULT_PRECISION,
) -> QExpansion:
    """F1 = E - chi2(M) M^(k-1) alpha_M E  or  F2 = E - chi1(M) alpha_M E."""
    variant = Variant(variant)
    check_series(chi1, chi2, k)
    _check_raising_prime(chi1, chi2, M)
    series = eis_qexp(chi1, chi2, k, precision)
    if variant is Variant.E:
        return series
    shifted = degeneracy(series, M)
    factor = chi2(M) * M ** (k - 1) if variant is Variant.F1 else chi1(M)
    coeffs = tuple(a - factor * b for a, b in zip(series.coeffs, shifted.coeffs))
    return QExpansion(series.level * M, k, series.nebentypus, precision, coeffs)


def reduce_qexp(f: QExpansion, place: Place) -> ReducedQExpansion:
    reduced = []
    for idx, c in enumerate(f.coeffs):
        try:
            reduced.append(reduce_at(c, place))
        except NotIntegralError as e:
            raise NotIntegralError(f"coefficient a_{idx}: {e.detail}", index=idx) from e
    return ReducedQExpansion(place, tuple(reduced))


# --- Constant terms at cusps ---
@dataclass(frozen=True)
class CuspConstantParts:
    """A nonzero cusp constant written as sign * zeta_{xi_order}^xi_exponent * scale * core."""

    sign: int
    xi_order: int
    xi_exponent: int
    scale: Fraction
    core: CyclotomicNumber

    def xi(self) -> CyclotomicNumber:
        return CyclotomicNumber.root_of_unity(self.xi_order, self.xi_exponent) * self.sign

    def value(self) -> CyclotomicNumber:
        return self.xi() * self.scale * self.core


@lru_cache(maxsize=1024)
def cusp_constant_core(
    chi1: DirichletCharacter, chi2: DirichletCharacter, k: int
) -> CyclotomicNumber:
    """The gamma-independent factor

    (f2/f0)^k * W(psi_bar)/W(chi2_bar) * B_{k,psi}/2k * prod_{p | N}(1 - psi_bar(p) p^-k),
    with psi the primitive character attached to chi1_bar * chi2, of conductor f0.
    """
    f0, psi = (chi1.conj() * chi2).primitivize()
    psi_bar = psi.conj()
    f2 = chi2.modulus
    chi2_bar = chi2.conj()
    if psi_bar == chi2_bar:
        ratio = CyclotomicNumber.one()
    else:
        # 1/W(chi2_bar) = chi2(-1) W(chi2) / f2
        ratio = gauss_sum(psi_bar) * gauss_sum(chi2) * Fraction(chi2.parity(), f2)
    euler = CyclotomicNumber.one(psi.order)
    for p in primefactors(chi1.modulus * chi2.modulus):
        euler = euler * (1 - psi_bar(p) * Fraction(1, p**k))
    core = ratio * bernoulli_char(k, psi) * euler * (Fraction(f2, f0) ** k / (2 * k))
    log.debug(
        "Cusp constant core for k=%d, f1=%d, f2=%d, f0=%d computed in Q(zeta_%d)",
        k,
        chi1.modulus,
        f2,
        f0,
        core.order,
    )
    return core


def cusp_constant_parts(
    chi1: DirichletCharacter,
    chi2: DirichletCharacter,
    k: int,
    gamma: CuspMatrix,
    M: int = 1,
) -> CuspConstantParts | None:
    """Decomposes the constant term of alpha_M E at gamma, or None when it vanishes."""
    check_series(chi1, chi2, k)
    if M < 1:
        raise DomainError("bad-level", f"M must be positive, got {M}")
    f1, f2 = chi1.modulus, chi2.modulus
    r = math.gcd(gamma.v, M)
    v_prime, m_prime = gamma.v // r, M // r
    if v_prime % f2:
        return None
    t = v_prime // f2
    if math.gcd(t, f1) > 1:
        return None
    n = coefficient_order(chi1, chi2)
    e_delta = chi2.scaled_exponent(gamma.delta, n)
    e_m = chi2.scaled_exponent(m_prime, n)
    e_t = chi1.scaled_exponent(-t, n)
    if e_delta is None or e_m is None or e_t is None:
        return None
    xi_exponent = (e_delta - e_m + e_t) % n
    return CuspConstantParts(
        sign=-1,
        xi_order=n,
        xi_exponent=xi_exponent,
        scale=Fraction(1, m_prime**k),
        core=cusp_constant_core(chi1, chi2, k),
    )


def cusp_constant(
    chi1: DirichletCharacter,
    chi2: DirichletCharacter,
    k: int,
    gamma: CuspMatrix,
    M: int = 1,
) -> CyclotomicNumber:
    """The constant term of (alpha_M E_k^{chi1,chi2}) |_k gamma."""
    parts = cusp_constant_parts(chi1, chi2, k, gamma, M)
    if parts is None:
        return CyclotomicNumber.zero(coefficient_order(chi1, chi2))
    return parts.value()


def combo_cusp_constant(
    chi1: DirichletCharacter,
    chi2: DirichletCharacter,
    k: int,
    gamma: CuspMatrix,
    M: int,
    variant: Variant | str,
) -> CyclotomicNumber:
    """The constant term at gamma of E, F1 or F2."""
    variant = Variant(variant)
    base = cusp_constant(chi1, chi2, k, gamma, 1)
    if variant is Variant.E:
        return base
    _check_raising_prime(chi1, chi2, M)
    shifted = cusp_constant(chi1, chi2, k, gamma, M)
    factor = chi2(M) * M ** (k - 1) if variant is Variant.F1 else chi1(M)
    return base - factor * shifted


# --- Cusps ---
def cusp_enumerate(level: int) -> list[CuspMatrix]:
    """One matrix per cusp a/c of Gamma_0(level), c | level."""
    if level < 1:
        raise DomainError("bad-level", f"level must be positive, got {level}")
    matrices = []
    for c in divisors(level):
        if c == level:
            matrices.append(CuspMatrix(1, 0, 0, 1))
            continue
        if c == 1:
            matrices.append(CuspMatrix(0, -1, 1, 0))
            continue
        g = math.gcd(c, level // c)
        for a0 in range(1, g + 1):
            if math.gcd(a0, g) != 1:
                continue
            a = a0
            while math.gcd(a, c) != 1:
                a += g
            matrices.append(CuspMatrix.completing(a, c))
    return matrices


def cusp_twists(gamma: CuspMatrix, level: int, f2: int) -> list[CuspMatrix]:
    """Gamma_0(level)-translates of gamma realising every unit class of delta mod f2."""
    if f2 == 1:
        return [gamma]
    twisted = []
    for z in range(1, f2 + 1):
        if math.gcd(z, f2) != 1:
            continue
        z_lift = z
        while math.gcd(z_lift, level) != 1:
            z_lift += f2
        x = pow(z_lift, -1, level) if level > 1 else 1
        y = (x * z_lift - 1) // level
        # (x y; level z_lift) * gamma
        twisted.append(
            CuspMatrix(
                x * gamma.u + y * gamma.v,
                x * gamma.beta + y * gamma.delta,
                level * gamma.u + z_lift * gamma.v,
                level * gamma.beta + z_lift * gamma.delta,
            )
        )
    return twisted

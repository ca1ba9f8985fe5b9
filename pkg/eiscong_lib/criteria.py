# --- eiscong_lib/criteria.py ---
"""
eiscong_lib/criteria.py: Decision procedures for reducible mod-ell representations
chi1 + chi2 * (cyclotomic)^(k-1).

decide_strong_modularity tests whether the representation comes from a cusp
form of its own Serre type; decide_level_raise and scan_level_raise look for
primes M at which it comes from a form of level N*M. verify_cuspidality checks
the same questions from the other side, by reducing the exact constant terms
of the relevant Eisenstein series at every cusp.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

from sympy import isprime, primefactors, primerange

from .bernoulli import bernoulli_char
from .dirichlet import DirichletCharacter
from .eisenstein import (
    Variant,
    check_series,
    cusp_constant_core,
    cusp_constant_parts,
    cusp_enumerate,
    cusp_twists,
)
from .errors import DomainError
from .reduction import (
    FiniteFieldElement,
    Place,
    lift_validate,
    place_above,
    place_extending,
    reduce_at,
    reduce_rational,
    reduce_root_of_unity,
)

log = logging.getLogger("eiscong.criteria")


class Condition(str, Enum):
    BERNOULLI_VANISHES = "bernoulli-vanishes"
    EULER_FACTOR_VANISHES = "euler-factor-vanishes"
    MAZUR_CONGRUENCE = "mazur-congruence"
    ETA_MK_UNIT = "eta-Mk-unit"
    NONE = "none"


@dataclass(frozen=True)
class SerreType:
    N: int
    k: int
    nebentypus: DirichletCharacter
    ell: int
    exponents: tuple[int, int]


@dataclass
class Decision:
    verdict: bool
    condition: Condition
    place: Place
    witness: int | None = None
    exact_values: dict[str, FiniteFieldElement] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "condition": self.condition.value,
            "witness": self.witness,
            "place": self.place.to_json(),
            "exact_values": {k: v.to_json() for k, v in self.exact_values.items()},
        }


def serre_weight(a1: int, a2: int, ell: int) -> int:
    """Serre's weight of chi_ell^a1 + chi_ell^a2 with 0 <= a1 <= a2 <= ell - 2."""
    if (a1, a2) == (0, 0):
        return ell
    return 1 + ell * a1 + a2


def serre_type(
    chi1: DirichletCharacter, chi2: DirichletCharacter, k: int, ell: int
) -> SerreType:
    if not isprime(ell):
        raise DomainError("bad-prime", f"ell={ell} is not prime")
    chi1.require_primitive("chi1")
    chi2.require_primitive("chi2")
    for name, chi in (("chi1", chi1), ("chi2", chi2)):
        if not lift_validate(chi, ell):
            raise DomainError(
                "not-a-lift",
                f"{name} has order {chi.order} and conductor {chi.conductor}, "
                f"not both prime to ell={ell}",
            )
    if k < 2 or ell <= k + 1:
        raise DomainError(
            "weight-hypothesis-violated", f"need 2 <= k and ell > k+1, got k={k}, ell={ell}"
        )
    if chi1.parity() * chi2.parity() != (-1) ** k:
        raise DomainError(
            "not-odd",
            f"chi1(-1)chi2(-1) = {chi1.parity() * chi2.parity()}, (-1)^k = {(-1) ** k}",
        )
    return SerreType(chi1.modulus * chi2.modulus, k, chi1 * chi2, ell, (0, k - 1))


def eta_character(chi1: DirichletCharacter, chi2: DirichletCharacter) -> DirichletCharacter:
    """The primitive character attached to chi1_bar * chi2."""
    return (chi1.conj() * chi2).primitivize()[1]


def _resolve_place(psi: DirichletCharacter, ell: int, place: Place | None) -> Place:
    if place is None:
        return place_above(ell, psi.order)
    if place.ell != ell or place.m != psi.order:
        raise DomainError(
            "incompatible-orders",
            f"place over {place.ell} in Q(zeta_{place.m}) does not match "
            f"ell={ell}, order {psi.order}",
        )
    return place


def decide_strong_modularity(
    chi1: DirichletCharacter,
    chi2: DirichletCharacter,
    k: int,
    ell: int,
    place: Place | None = None,
) -> Decision:
    st = serre_type(chi1, chi2, k, ell)
    psi = eta_character(chi1, chi2)
    w = _resolve_place(psi, ell, place)
    exact = {"bernoulli": reduce_at(bernoulli_char(k, psi), w)}
    decision = Decision(False, Condition.NONE, w, exact_values=exact)

    if (st.N, k) == (1, 2):
        log.info("Level 1, weight 2: no cusp form of this type exists")
        return decision
    if exact["bernoulli"].is_zero():
        decision.verdict, decision.condition = True, Condition.BERNOULLI_VANISHES
    for p in primefactors(st.N):
        value = reduce_at(psi(p), w) * pow(p, k, ell)
        exact[f"euler_{p}"] = value
        log.debug("eta(%d)p^k = %s at %s", p, value, w)
        if not decision.verdict and value.is_one():
            decision.verdict, decision.condition = True, Condition.EULER_FACTOR_VANISHES
            decision.witness = p
    log.info(
        "Strong modularity (N=%d, k=%d, ell=%d): %s via %s",
        st.N,
        k,
        ell,
        decision.verdict,
        decision.condition.value,
    )
    return decision


def level_raise_local_data(
    chi1: DirichletCharacter,
    chi2: DirichletCharacter,
    k: int,
    ell: int,
    M: int,
    place: Place | None = None,
) -> dict[str, FiniteFieldElement]:
    """The reduced values eta(M) M^k and eta(M) M^(k-2)."""
    psi = eta_character(chi1, chi2)
    w = _resolve_place(psi, ell, place)
    eta_m = reduce_at(psi(M), w)
    return {
        "eta_M_Mk": eta_m * pow(M, k, ell),
        "eta_M_Mk2": eta_m * pow(M, k - 2, ell),
    }


def _check_level_raise_prime(N: int, ell: int, M: int):
    if not isprime(M) or (N * ell) % M == 0:
        raise DomainError("bad-prime", f"M={M} must be a prime not dividing N*ell={N * ell}")


def _level_raise(
    chi1: DirichletCharacter,
    chi2: DirichletCharacter,
    k: int,
    ell: int,
    M: int,
    N: int,
    w: Place,
) -> Decision:
    _check_level_raise_prime(N, ell, M)
    exact = level_raise_local_data(chi1, chi2, k, ell, M, w)
    if (N, k) == (1, 2):
        verdict = M % ell == 1
        condition = Condition.MAZUR_CONGRUENCE
    else:
        verdict = exact["eta_M_Mk"].is_one()
        condition = Condition.ETA_MK_UNIT
    log.debug("Level raising at M=%d: %s", M, verdict)
    return Decision(
        verdict,
        condition if verdict else Condition.NONE,
        w,
        witness=M if verdict else None,
        exact_values=exact,
    )


def decide_level_raise(
    chi1: DirichletCharacter,
    chi2: DirichletCharacter,
    k: int,
    ell: int,
    M: int,
    place: Place | None = None,
) -> Decision:
    strong = decide_strong_modularity(chi1, chi2, k, ell, place)
    if strong.verdict:
        raise DomainError(
            "precondition-violated",
            f"the representation is strongly modular ({strong.condition.value})",
        )
    N = chi1.modulus * chi2.modulus
    decision = _level_raise(chi1, chi2, k, ell, M, N, strong.place)
    log.info(
        "Level raising at M=%d (N=%d, k=%d, ell=%d): %s", M, N, k, ell, decision.verdict
    )
    return decision


def scan_level_raise(
    chi1: DirichletCharacter,
    chi2: DirichletCharacter,
    k: int,
    ell: int,
    bound: int,
    threads: int = 1,
    place: Place | None = None,
) -> list[int]:
    """All primes M <= bound, M not dividing N*ell, at which the level can be raised."""
    strong = decide_strong_modularity(chi1, chi2, k, ell, place)
    if strong.verdict:
        raise DomainError(
            "precondition-violated",
            f"the representation is strongly modular ({strong.condition.value})",
        )
    N = chi1.modulus * chi2.modulus
    candidates = [M for M in primerange(2, bound + 1) if (N * ell) % M]
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        verdicts = list(
            pool.map(
                lambda M: _level_raise(chi1, chi2, k, ell, M, N, strong.place).verdict,
                candidates,
            )
        )
    primes = sorted(M for M, ok in zip(candidates, verdicts) if ok)
    log.info("Scan up to %d found %d level-raising primes", bound, len(primes))
    return primes


def verify_cuspidality(
    chi1: DirichletCharacter,
    chi2: DirichletCharacter,
    k: int,
    ell: int,
    M: int = 1,
    variant: Variant | str = Variant.E,
    place: Place | None = None,
) -> bool:
    """True iff the chosen series has constant term 0 mod w at every cusp."""
    variant = Variant(variant)
    st = serre_type(chi1, chi2, k, ell)
    check_series(chi1, chi2, k)
    psi = eta_character(chi1, chi2)
    w = _resolve_place(psi, ell, place)

    f1, f2 = chi1.modulus, chi2.modulus
    if variant is Variant.E:
        M, level = 1, st.N
    else:
        if not isprime(M) or (st.N * ell) % M == 0:
            raise DomainError("bad-level", f"M={M} must be a prime not dividing N*ell")
        level = st.N * M

    order = math.lcm(chi1.order, chi2.order, psi.order, psi.modulus, f2)
    big = place_extending(w, order)
    core = reduce_at(cusp_constant_core(chi1, chi2, k), big)
    if variant is Variant.F1:
        factor = reduce_at(chi2(M), big) * pow(M, k - 1, ell)
    elif variant is Variant.F2:
        factor = reduce_at(chi1(M), big)
    else:
        factor = None

    def reduced(gamma, m) -> FiniteFieldElement:
        parts = cusp_constant_parts(chi1, chi2, k, gamma, m)
        if parts is None:
            return big.zero()
        xi = reduce_root_of_unity(parts.xi_order, parts.xi_exponent, big) * parts.sign
        return xi * reduce_rational(parts.scale, big) * core

    checked = 0
    for gamma in cusp_enumerate(level):
        for twisted in cusp_twists(gamma, level, f2):
            value = reduced(twisted, 1)
            if factor is not None:
                value = value - factor * reduced(twisted, M)
            checked += 1
            if not value.is_zero():
                log.debug("Constant term nonzero at %s", twisted)
                log.info(
                    "%s is not cuspidal mod %s (%d matrices checked)",
                    variant.value,
                    big,
                    checked,
                )
                return False
    log.info("%s is cuspidal mod %s (%d matrices checked)", variant.value, big, checked)
    return True

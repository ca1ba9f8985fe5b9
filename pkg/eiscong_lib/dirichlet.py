# --- eiscong_lib/dirichlet.py ---
"""
eiscong_lib/dirichlet.py: Dirichlet characters and Gauss sums.

A character modulo q stores its full value table: index a-1 holds the
exponent e of zeta_n with chi(a) = zeta_n^e, or None when gcd(a, q) > 1.
Tables are built from a canonical generator system of (Z/q)^x so that the
same generator images always produce the same table.
"""
import itertools
import json
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from sympy import divisors, factorint, primitive_root, totient
from sympy.ntheory.modular import crt

from .cyclotomic import CyclotomicNumber
from .errors import DomainError

log = logging.getLogger("eiscong.chars")


# --- Generator system ---
def _crt_lift(residue: int, pe: int, q: int) -> int:
    """The integer mod q congruent to residue mod pe and to 1 mod q/pe."""
    if q == pe:
        return residue % q
    return int(crt([pe, q // pe], [residue, 1])[0]) % q


@lru_cache(maxsize=None)
def canonical_generators(q: int) -> tuple[tuple[int, int], ...]:
    """Returns the canonical (residue mod q, multiplicative order) generator pairs."""
    if q < 1:
        raise DomainError("invalid-character", f"modulus must be positive, got {q}")
    gens = []
    for p, e in sorted(factorint(q).items()):
        pe = p**e
        if p == 2:
            if e == 2:
                gens.append((_crt_lift(3, pe, q), 2))
            elif e >= 3:
                gens.append((_crt_lift(pe - 1, pe, q), 2))
                gens.append((_crt_lift(5, pe, q), 2 ** (e - 2)))
        else:
            g = int(primitive_root(pe))
            gens.append((_crt_lift(g, pe, q), int(totient(pe))))
    log.debug("Canonical generators mod %d: %s", q, gens)
    return tuple(gens)


@dataclass(frozen=True)
class DirichletCharacter:
    """A Dirichlet character with its full exponent table."""

    modulus: int
    order: int
    values: tuple[int | None, ...]

    # --- Evaluation ---
    def exponent(self, a: int) -> int | None:
        """The exponent of zeta_order at a, or None when a is not a unit."""
        return self.values[(a - 1) % self.modulus]

    def scaled_exponent(self, a: int, order: int) -> int | None:
        """The exponent of chi(a) expressed as a power of zeta_{order}."""
        e = self.values[(a - 1) % self.modulus]
        if e is None:
            return None
        return e * (order // self.order)

    def __call__(self, a: int) -> CyclotomicNumber:
        e = self.exponent(a)
        if e is None:
            return CyclotomicNumber.zero(self.order)
        return CyclotomicNumber.root_of_unity(self.order, e)

    def parity(self) -> int:
        e = self.exponent(-1)
        return 1 if e == 0 else -1

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_even(self) -> bool:
        return self.parity() == 1

    # --- Group operations ---
    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        q = math.lcm(self.modulus, other.modulus)
        n = math.lcm(self.order, other.order)
        values = []
        for a in range(1, q + 1):
            if math.gcd(a, q) > 1:
                values.append(None)
                continue
            values.append(
                (self.scaled_exponent(a, n) + other.scaled_exponent(a, n)) % n
            )
        return _normalized(q, n, values)

    def conj(self) -> "DirichletCharacter":
        """The complex conjugate character."""
        return DirichletCharacter(
            self.modulus,
            self.order,
            tuple(None if e is None else (-e) % self.order for e in self.values),
        )

    def power(self, a: int) -> "DirichletCharacter":
        """chi^a; for a coprime to the order this is the Galois conjugate zeta -> zeta^a."""
        return _normalized(
            self.modulus,
            self.order,
            [None if e is None else (e * a) % self.order for e in self.values],
        )

    # --- Conductor ---
    def primitivize(self) -> tuple[int, "DirichletCharacter"]:
        return _primitivize(self)

    @property
    def conductor(self) -> int:
        return _primitivize(self)[0]

    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    def require_primitive(self, what: str = "character"):
        if not self.is_primitive():
            raise DomainError(
                "not-primitive",
                f"{what} mod {self.modulus} has conductor {self.conductor}",
            )

    # --- Serialisation ---
    def to_json(self) -> dict:
        return {"modulus": self.modulus, "order": self.order, "values": list(self.values)}

    @classmethod
    def from_json(cls, data: dict) -> "DirichletCharacter":
        q, n, values = int(data["modulus"]), int(data["order"]), list(data["values"])
        if q < 1 or n < 1 or len(values) != q:
            raise DomainError("invalid-character", "modulus, order and table disagree")
        for a, e in enumerate(values, start=1):
            if (e is None) != (math.gcd(a, q) > 1 and q > 1):
                raise DomainError("invalid-character", f"bad unit pattern at {a}")
        chi = construct(q, [(g, values[g - 1] % n, n) for g, _ in canonical_generators(q)])
        common = math.lcm(n, chi.order)
        for a, e in enumerate(values, start=1):
            if e is not None and chi.scaled_exponent(a, common) != (e % n) * (common // n):
                raise DomainError("invalid-character", f"table is not multiplicative at {a}")
        return chi

    def __repr__(self) -> str:
        return f"Chi(mod {self.modulus}, order {self.order})"


def _normalized(q: int, n: int, values: list[int | None]) -> DirichletCharacter:
    """Reduces n to the exact order of the value table."""
    g = n
    for e in values:
        if e is not None:
            g = math.gcd(g, e)
    if g > 1:
        values = [None if e is None else e // g for e in values]
        n //= g
    return DirichletCharacter(q, n, tuple(values))


def construct(modulus: int, images: list[tuple[int, int, int]]) -> DirichletCharacter:
    """Builds a character from (generator residue, exponent, root order) images.

    Generators missing from images map to 1.
    """
    gens = canonical_generators(modulus)
    residues = [g for g, _ in gens]
    assigned: dict[int, tuple[int, int]] = {}
    for residue, exponent, root_order in images:
        residue %= modulus
        if residue not in residues:
            raise DomainError(
                "invalid-generator",
                f"{residue} is not a canonical generator modulo {modulus}; "
                f"expected one of {residues}",
            )
        if root_order < 1:
            raise DomainError("invalid-character", "root order must be positive")
        assigned[residue] = (exponent % root_order, root_order)

    n = 1
    for _, root_order in assigned.values():
        n = math.lcm(n, root_order)
    images_n = []
    for g, g_order in gens:
        exponent, root_order = assigned.get(g, (0, 1))
        image_order = root_order // math.gcd(exponent, root_order)
        if g_order % image_order:
            raise DomainError(
                "invalid-character",
                f"image of {g} has order {image_order}, not dividing {g_order}",
            )
        images_n.append(exponent * (n // root_order))

    if modulus == 1:
        return DirichletCharacter(1, 1, (0,))
    values: list[int | None] = [None] * modulus
    orders = [g_order for _, g_order in gens]
    for powers in itertools.product(*(range(o) for o in orders)):
        residue = 1
        exponent = 0
        for (g, _), x, img in zip(gens, powers, images_n):
            residue = residue * pow(g, x, modulus) % modulus
            exponent += x * img
        values[(residue - 1) % modulus] = exponent % n
    return _normalized(modulus, n, values)


def trivial_character(modulus: int = 1) -> DirichletCharacter:
    return construct(modulus, [])


def quadratic_character(modulus: int) -> DirichletCharacter:
    """The character sending every canonical generator to -1."""
    return construct(modulus, [(g, 1, 2) for g, _ in canonical_generators(modulus)])


def characters_mod(q: int) -> list[DirichletCharacter]:
    """All phi(q) characters modulo q, in generator-exponent order."""
    gens = canonical_generators(q)
    chars = []
    for powers in itertools.product(*(range(o) for _, o in gens)):
        chars.append(construct(q, [(g, x, o) for (g, o), x in zip(gens, powers)]))
    return chars


def primitive_characters(q: int) -> list[DirichletCharacter]:
    return [chi for chi in characters_mod(q) if chi.is_primitive()]


@lru_cache(maxsize=4096)
def _primitivize(chi: DirichletCharacter) -> tuple[int, DirichletCharacter]:
    q = chi.modulus
    for f in divisors(q):
        if all(
            chi.values[a - 1] == 0
            for a in range(1 + f, q + 1, f)
            if math.gcd(a, q) == 1
        ):
            break
    if f == q:
        return q, chi
    values: list[int | None] = [None] * f
    for b in range(1, f + 1):
        if math.gcd(b, f) > 1:
            continue
        a = b
        while math.gcd(a, q) > 1:
            a += f
        values[b - 1] = chi.values[a - 1]
    log.debug("Character mod %d has conductor %d", q, f)
    return f, DirichletCharacter(f, chi.order, tuple(values))


@lru_cache(maxsize=4096)
def gauss_sum(chi: DirichletCharacter) -> CyclotomicNumber:
    """W(chi) = sum chi(a) exp(2 pi i a / f) for a primitive character of conductor f."""
    chi.require_primitive()
    f = chi.modulus
    order = math.lcm(chi.order, f)
    terms: dict[int, int] = {}
    for a in range(1, f + 1):
        e = chi.scaled_exponent(a, order)
        if e is None:
            continue
        key = (e + a * (order // f)) % order
        terms[key] = terms.get(key, 0) + 1
    return CyclotomicNumber.from_exponents(order, terms)


# --- Parsing ---
def from_shorthand(text: str) -> DirichletCharacter:
    """Parses `trivial`, `quad:q`, `gen:q:e:o[:e:o...]` or a JSON file path."""
    text = text.strip()
    if text == "trivial":
        return trivial_character(1)
    parts = text.split(":")
    try:
        if parts[0] == "quad" and len(parts) == 2:
            return quadratic_character(int(parts[1]))
        if parts[0] == "gen" and len(parts) >= 2 and len(parts) % 2 == 0:
            q = int(parts[1])
            gens = canonical_generators(q)
            pairs = [(int(parts[i]), int(parts[i + 1])) for i in range(2, len(parts), 2)]
            if len(pairs) > len(gens):
                raise DomainError(
                    "invalid-generator",
                    f"modulus {q} has {len(gens)} canonical generators, got {len(pairs)}",
                )
            return construct(q, [(g, e, o) for (g, _), (e, o) in zip(gens, pairs)])
    except ValueError as e:
        if isinstance(e, DomainError):
            raise
        raise DomainError("invalid-character", f"cannot parse '{text}': {e}") from e
    if Path(text).is_file():
        return from_file(text)
    raise DomainError("invalid-character", f"unrecognised character '{text}'")


def from_file(path: str) -> DirichletCharacter:
    """Loads a character from its JSON encoding on disk."""
    try:
        return DirichletCharacter.from_json(json.loads(Path(path).read_text()))
    except OSError as e:
        raise DomainError("invalid-character", f"cannot read {path}: {e}") from e
    except (json.JSONDecodeError, KeyError, TypeError) as e:
        raise DomainError("invalid-character", f"{path}: {e}") from e

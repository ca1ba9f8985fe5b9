# --- eiscong_lib/oracle.py ---
"""
eiscong_lib/oracle.py: Floating-point cross-checks of the exact formulas.

Everything here is computed by direct summation with numpy and compared
against the complex embedding of the exact values:
- Gauss sums as exponential sums,
- L(k, chi) as truncated Dirichlet series,
- cusp constants as the one-dimensional lattice sum over
  C = {(m, n) != 0 : m*M*f2*u + n*v = 0}, plus a Hurwitz-zeta tail,
- and, for k >= 3, the full two-dimensional slashed lattice sum at z = i*y.
"""
import logging
import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import mpmath
import numpy as np

from .bernoulli import bernoulli_char
from .config import OracleConfig
from .dirichlet import DirichletCharacter, gauss_sum, primitive_characters
from .eisenstein import CuspMatrix, check_series, cusp_constant
from .errors import DomainError

log = logging.getLogger("eiscong.oracle")


def _character_table(chi: DirichletCharacter, conjugate: bool = False) -> np.ndarray:
    """chi(a) for a = 0..q-1 as complex numbers."""
    q = chi.modulus
    table = np.zeros(q, dtype=np.complex128)
    sign = -1.0 if conjugate else 1.0
    for a in range(q):
        e = chi.exponent(a)
        if e is not None:
            table[a] = np.exp(sign * 2j * np.pi * e / chi.order)
    return table


def c_k(k: int) -> complex:
    """C_k = (-2 pi i)^k / (k-1)!."""
    return complex((-2j * math.pi) ** k / math.factorial(k - 1))


def oracle_gauss_sum(chi: DirichletCharacter) -> complex:
    f = chi.modulus
    a = np.arange(1, f + 1)
    values = _character_table(chi)[a % f]
    return complex(np.sum(values * np.exp(2j * np.pi * a / f)))


def oracle_L_value(chi: DirichletCharacter, k: int, cfg: OracleConfig) -> complex:
    """sum_{n <= cutoff} chi(n) n^-k."""
    n = np.arange(1, cfg.cutoff + 1)
    values = _character_table(chi)[n % chi.modulus]
    terms = values / n.astype(np.float64) ** k
    return complex(np.sum(terms[::-1]))


def closed_form_l_value(chi: DirichletCharacter, k: int) -> complex:
    """L(k, chi) = -W(chi) C_k / f^k * B_{k,chi_bar} / 2k for chi(-1) = (-1)^k."""
    chi.require_primitive()
    if chi.parity() != (-1) ** k:
        raise DomainError("not-odd-compatible", f"chi(-1) = {chi.parity()} but k = {k}")
    w = gauss_sum(chi).embed()
    b = bernoulli_char(k, chi.conj()).embed()
    return -w * c_k(k) / chi.modulus**k * b / (2 * k)


def _prefactor(chi2: DirichletCharacter, k: int) -> complex:
    """f2^k / (2 C_k W(chi2_bar)), with the Gauss sum summed numerically."""
    return chi2.modulus**k / (2 * c_k(k) * oracle_gauss_sum(chi2.conj()))


def oracle_cusp_constant(
    chi1: DirichletCharacter,
    chi2: DirichletCharacter,
    k: int,
    gamma: CuspMatrix,
    M: int,
    cfg: OracleConfig,
) -> complex:
    """The constant term of (alpha_M E)|gamma summed over the set C."""
    check_series(chi1, chi2, k)
    f1, f2 = chi1.modulus, chi2.modulus
    a_coef = M * f2 * gamma.u
    b_coef = gamma.v
    g = math.gcd(a_coef, b_coef)
    # C is the line t*(m0, n0), t != 0
    m0, n0 = b_coef // g, -a_coef // g
    d0 = m0 * M * f2 * gamma.beta + n0 * gamma.delta

    period = math.lcm(f1, f2)
    tab1 = _character_table(chi1)
    tab2 = _character_table(chi2, conjugate=True)
    j = np.arange(period)
    s_period = tab1[(j * m0) % f1] * tab2[(j * n0) % f2]
    # head length is a multiple of the period so the tail splits by residue class
    T = max(1, cfg.cutoff // (max(abs(m0), abs(n0)) * period)) * period

    t = np.arange(1, T + 1)
    terms = s_period[t % period] / t.astype(np.float64) ** k
    # t and -t contribute equally under the parity condition
    head = complex(np.sum(terms[::-1]))
    tail = 0j
    for r in range(1, period + 1):
        s = s_period[r % period]
        if s:
            tail += complex(s) * float(mpmath.zeta(k, mpmath.mpf(T + r) / period))
    tail /= period**k
    lattice_sum = 2 * (head + tail) / float(d0) ** k
    log.debug("C-sum with direction (%d, %d), %d terms, tail %.3e", m0, n0, T, abs(tail))
    return complex(_prefactor(chi2, k) * lattice_sum)


def oracle_lattice_2d(
    chi1: DirichletCharacter,
    chi2: DirichletCharacter,
    k: int,
    gamma: CuspMatrix,
    M: int,
    cfg: OracleConfig,
) -> complex:
    """The full slashed series at z = i*im_z; tends to the cusp constant as im_z grows."""
    check_series(chi1, chi2, k)
    if k < 3:
        raise DomainError(
            "weight-two-unsupported", "the two-dimensional sum needs k >= 3 to converge"
        )
    f1, f2 = chi1.modulus, chi2.modulus
    R = cfg.lattice_cutoff
    z = 1j * cfg.im_z
    rng = np.arange(-R, R + 1)
    m, n = np.meshgrid(rng, rng, indexing="ij")
    mask = (m != 0) | (n != 0)
    m, n = m[mask], n[mask]
    chi_table, chi_bar_table = _character_table(chi1), _character_table(chi2, conjugate=True)
    chi_values = chi_table[m % f1] * chi_bar_table[n % f2]
    linear = (m * M * f2 * gamma.u + n * gamma.v).astype(np.float64)
    const = (m * M * f2 * gamma.beta + n * gamma.delta).astype(np.float64)
    total = np.sum(chi_values / (linear * z + const) ** k)
    return complex(_prefactor(chi2, k) * total)


# --- Battery ---
@dataclass
class BatteryRow:
    name: str
    cases: int
    max_gap: float
    tolerance: float
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures and self.max_gap < self.tolerance

    def record(self, label: str, exact: complex, approx: complex):
        gap = abs(exact - approx)
        self.cases += 1
        self.max_gap = max(self.max_gap, gap)
        if not gap < self.tolerance:
            self.failures.append(
                f"{label}: exact={exact:.10g} oracle={approx:.10g} gap={gap:.3e}"
            )

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "cases": self.cases,
            "max_gap": self.max_gap,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "failures": self.failures,
        }


@dataclass
class BatteryReport:
    seed: int
    rows: list[BatteryRow]

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    def to_json(self) -> dict:
        rows = [r.to_json() for r in self.rows]
        return {"seed": self.seed, "passed": self.passed, "rows": rows}


def random_cusp_matrix(rng: random.Random, height: int = 12) -> CuspMatrix:
    while True:
        u, v = rng.randint(-height, height), rng.randint(-height, height)
        if math.gcd(u, v) == 1:
            return CuspMatrix.completing(u, v)


def _primitive_pool(max_conductor: int) -> list[DirichletCharacter]:
    pool = []
    for q in range(1, max_conductor + 1):
        if q % 4 == 2:
            continue
        pool.extend(primitive_characters(q))
    return pool


def _admissible(chi1, chi2, k) -> bool:
    if chi1.parity() * chi2.parity() != (-1) ** k:
        return False
    return not (chi1.modulus * chi2.modulus == 1 and k == 2)


def run_battery(
    seed: int = 0, cfg: OracleConfig | None = None, cases: int = 20, threads: int = 1
) -> BatteryReport:
    """Compares exact values with the oracles on a seeded random sample."""
    cfg = cfg or OracleConfig()
    rng = random.Random(seed)
    pool = _primitive_pool(12)

    samples = []
    while len(samples) < cases:
        chi1, chi2 = rng.choice(pool), rng.choice(pool)
        k = rng.randint(2, 6)
        if _admissible(chi1, chi2, k):
            samples.append((chi1, chi2, k, random_cusp_matrix(rng), rng.choice((1, 2, 3, 5))))

    def cusp_case(sample):
        chi1, chi2, k, gamma, M = sample
        exact = cusp_constant(chi1, chi2, k, gamma, M).embed()
        return exact, oracle_cusp_constant(chi1, chi2, k, gamma, M, cfg)

    cusp_row = BatteryRow("cusp-constants", 0, 0.0, cfg.tolerance)
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool_exec:
        results = list(pool_exec.map(cusp_case, samples))
    for (chi1, chi2, k, gamma, M), (exact, approx) in zip(samples, results):
        label = f"f1={chi1.modulus} f2={chi2.modulus} k={k} M={M} {gamma.to_json()}"
        cusp_row.record(label, exact, approx)

    l_row = BatteryRow("l-values", 0, 0.0, cfg.tolerance)
    for chi in pool:
        for k in range(3, 7):
            if chi.parity() == (-1) ** k:
                l_row.record(
                    f"f={chi.modulus} k={k}",
                    closed_form_l_value(chi, k),
                    oracle_L_value(chi, k, cfg),
                )

    gauss_row = BatteryRow("gauss-sums", 0, 0.0, 1e-9)
    for chi in _primitive_pool(30):
        gauss_row.record(f"f={chi.modulus}", gauss_sum(chi).embed(), oracle_gauss_sum(chi))

    lattice_tol = max(1e-4, math.exp(-2 * math.pi * cfg.im_z) * 100)
    lattice_row = BatteryRow("lattice-2d", 0, 0.0, lattice_tol)
    small = _primitive_pool(4)
    for _ in range(3):
        chi1, chi2 = rng.choice(small), rng.choice(small)
        if not _admissible(chi1, chi2, 4):
            continue
        gamma = random_cusp_matrix(rng, height=2)
        # E|gamma has period f1*f2; its non-constant terms decay like exp(-2 pi y / f1 f2)
        level = chi1.modulus * chi2.modulus
        tall = cfg.model_copy(update={"im_z": cfg.im_z * max(1.0, level / 2)})
        lattice_row.record(
            f"f1={chi1.modulus} f2={chi2.modulus} {gamma.to_json()}",
            oracle_cusp_constant(chi1, chi2, 4, gamma, 1, cfg),
            oracle_lattice_2d(chi1, chi2, 4, gamma, 1, tall),
        )

    report = BatteryReport(seed, [cusp_row, l_row, gauss_row, lattice_row])
    log.info("Oracle battery (seed %d): %s", seed, "passed" if report.passed else "FAILED")
    return report

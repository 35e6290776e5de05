"""GH (generalised Fibonacci) residue sequences modulo m.

A GH sequence starts from an arbitrary seed pair ``(a, b)`` and obeys
``G(n) = G(n-1) + G(n-2)``.  Reduced modulo ``m`` it is purely periodic
because the pair map ``(x, y) -> (y, x + y)`` is invertible, so the period is
the first return of the initial pair.

For prime moduli the period falls into one of two families, decided by the
last decimal digit of ``p``:

* ``p`` ends in 1 or 9: the period divides ``p - 1``
* ``p`` ends in 3 or 7: the period divides ``2p + 2``
* ``p == 5``: the Fibonacci period is 20

Mapping the first family to +1 and the second to -1 over ascending primes
gives the bipolar sequence B(n) produced by :func:`b_sequence`.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass

import numpy as np

from ghseq.errors import GhseqError, InvariantViolation

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

log = logging.getLogger(__name__)

MAX_MODULUS = 2**31 - 1


class PeriodClass(enum.Enum):
    DIVIDES_P_MINUS_ONE = "pm1"
    DIVIDES_TWO_P_PLUS_TWO = "2pp2"
    SPECIAL_FIVE = "special5"

    @property
    def bipolar(self) -> int:
        """+1 for the (p-1) family, -1 for the (2p+2) family."""
        if self is PeriodClass.DIVIDES_P_MINUS_ONE:
            return 1
        if self is PeriodClass.DIVIDES_TWO_P_PLUS_TWO:
            return -1
        raise GhseqError("p = 5 has no +1/-1 assignment")


@dataclass(frozen=True)
class GHParams:
    a: int
    b: int
    m: int

    def __post_init__(self):
        if not isinstance(self.m, (int, np.integer)) or self.m < 2:
            raise GhseqError(f"modulus must be an integer >= 2, got {self.m!r}")
        if self.m > MAX_MODULUS:
            raise GhseqError(f"modulus {self.m} exceeds the supported cap 2**31 - 1")
        if self.a % self.m == 0 and self.b % self.m == 0:
            raise GhseqError(
                f"seed pair ({self.a}, {self.b}) is (0, 0) mod {self.m}; the zero sequence is degenerate"
            )

    @property
    def seed(self) -> tuple[int, int]:
        return self.a % self.m, self.b % self.m


@dataclass(frozen=True)
class PeriodReport:
    modulus: int
    period: int
    period_class: PeriodClass | None
    bound_tight: bool

    CSV_HEADER = "modulus,period,class,bound_tight"

    def csv_row(self) -> str:
        tag = self.period_class.value if self.period_class is not None else "nonprime"
        return f"{self.modulus},{self.period},{tag},{str(self.bound_tight).lower()}"


def gh_residues(params: GHParams, count: int) -> list[int]:
    """First ``count`` terms of the GH sequence reduced modulo ``params.m``."""
    if count < 1:
        raise GhseqError(f"count must be >= 1, got {count}")
    m = params.m
    x, y = params.seed
    out = []
    for _ in range(count):
        out.append(x)
        x, y = y, (x + y) % m
    return out


@njit(cache=False)
def _first_return(x0, y0, m, limit):
    # Conditional subtraction instead of %: both terms are already < m.
    x, y = x0, y0
    n = 0
    while n < limit:
        z = x + y
        if z >= m:
            z -= m
        x, y = y, z
        n += 1
        if x == x0 and y == y0:
            return n
    return -1


def gh_period(params: GHParams) -> int:
    """Exact period of the residue sequence: first return of the seed pair.

    The scan is bounded by ``6m + 2``; should that ever be exceeded it keeps
    going up to ``m**2`` (there are only that many pairs) with a warning.
    """
    x0, y0 = params.seed
    m = params.m
    soft = 6 * m + 2
    n = _first_return(x0, y0, m, soft)
    if n > 0:
        return int(n)
    hard = m * m
    log.warning("period of %s exceeds 6m + 2, continuing scan up to m**2", params)
    n = _first_return(x0, y0, m, hard)
    if n < 0:
        raise InvariantViolation(f"no return of the seed pair within m**2 = {hard} steps for {params}")
    return int(n)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    d = 5
    while d * d <= n:
        if n % d == 0 or n % (d + 2) == 0:
            return False
        d += 6
    return True


def classify_prime(p: int) -> PeriodClass:
    if p == 2 or not is_prime(p):
        raise GhseqError(f"{p} is not an odd prime; the period classification covers odd primes only")
    if p == 5:
        return PeriodClass.SPECIAL_FIVE
    if p % 10 in (1, 9):
        return PeriodClass.DIVIDES_P_MINUS_ONE
    return PeriodClass.DIVIDES_TWO_P_PLUS_TWO


def verify_period_theorem(p: int, seed: tuple[int, int] = (1, 1)) -> PeriodReport:
    """Compute the period mod ``p`` and check it against the digit rule.

    Raises :class:`InvariantViolation` if the period does not divide the
    bound predicted by the class of ``p``.
    """
    cls = classify_prime(p)
    period = gh_period(GHParams(seed[0], seed[1], p))
    if cls is PeriodClass.DIVIDES_P_MINUS_ONE:
        ok = (p - 1) % period == 0
    elif cls is PeriodClass.DIVIDES_TWO_P_PLUS_TWO:
        ok = (2 * p + 2) % period == 0
    elif (seed[0] % p, seed[1] % p) == (1, 1):
        ok = period == 20
    else:
        ok = 20 % period == 0
    if not ok:
        raise InvariantViolation(f"period {period} mod {p} breaks the {cls.value} rule (seed {seed})")
    return PeriodReport(p, period, cls, period == 6 * p)


def theorem_sweep(p_max: int, seed: tuple[int, int] = (1, 1)) -> list[PeriodReport]:
    """:func:`verify_period_theorem` for every odd prime ``p <= p_max``."""
    if p_max < 3:
        return []
    return [verify_period_theorem(p, seed) for p in primes_in_range(3, p_max)]


def primes_in_range(lo: int, hi: int) -> list[int]:
    if lo < 2:
        raise GhseqError(f"lower bound must be >= 2, got {lo}")
    if hi < lo:
        return []
    sieve = np.ones(hi + 1, dtype=bool)
    sieve[:2] = False
    for d in range(2, math.isqrt(hi) + 1):
        if sieve[d]:
            sieve[d * d :: d] = False
    return [int(p) for p in np.flatnonzero(sieve[lo:]) + lo]


def _bn_primes(count: int) -> list[int]:
    # Rosser's bound p_n < n (ln n + ln ln n) for n >= 6, with room for the two skipped primes.
    n = count + 2
    hi = max(30, int(n * (math.log(n) + math.log(math.log(n)))) + 10) if n >= 6 else 30
    while True:
        ps = [p for p in primes_in_range(3, hi) if p != 5]
        if len(ps) >= count:
            return ps[:count]
        hi *= 2


def b_sequence(count: int) -> list[int]:
    """B(n): +1/-1 by period family over the ascending primes 3, 7, 11, 13, ...

    2 and 5 are skipped because neither carries a +1/-1 assignment.
    """
    if count < 1:
        raise GhseqError(f"count must be >= 1, got {count}")
    return [1 if p % 10 in (1, 9) else -1 for p in _bn_primes(count)]


def bn_primes(count: int) -> list[int]:
    """The primes that index the first ``count`` entries of :func:`b_sequence`."""
    if count < 1:
        raise GhseqError(f"count must be >= 1, got {count}")
    return _bn_primes(count)


def _is_two_times_power_of_five(m: int) -> bool:
    if m < 10 or m % 2:
        return False
    m //= 2
    while m % 5 == 0:
        m //= 5
    return m == 1


def composite_bound_sweep(m_max: int) -> list[PeriodReport]:
    """Fibonacci periods for every modulus in ``[2, m_max]``, checked against ``N(m) <= 6m``.

    Raises :class:`InvariantViolation` if any period exceeds ``6m`` or if the
    set of moduli reaching ``6m`` differs from ``{2 * 5**n}``.
    """
    if m_max < 2:
        raise GhseqError(f"m_max must be >= 2, got {m_max}")
    reports = []
    for m in range(2, m_max + 1):
        n = gh_period(GHParams(1, 1, m))
        if n > 6 * m:
            raise InvariantViolation(f"period {n} mod {m} exceeds 6m = {6 * m}")
        tight = n == 6 * m
        if tight != _is_two_times_power_of_five(m):
            raise InvariantViolation(f"modulus {m}: period {n}, tightness disagrees with m = 2 * 5**n rule")
        cls = classify_prime(m) if m != 2 and is_prime(m) else None
        reports.append(PeriodReport(m, n, cls, tight))
    return reports

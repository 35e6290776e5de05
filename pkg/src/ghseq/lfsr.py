"""GF(2) feedback polynomials and Fibonacci-configuration LFSRs.

Polynomials are held as sets of exponents and converted to integer bit
masks (bit ``e`` set for each term ``x**e``) for arithmetic.

Register convention: stage 0 is the input end, stage ``d-1`` the output
end.  Each clock emits stage ``d-1``, shifts every stage one place towards
the output and loads stage 0 with the XOR of stages ``d-1-e`` for every
exponent ``e < d`` of the polynomial.  The output stream then satisfies
``s[n+d] = sum(s[n+e] for e < d)``, i.e. the polynomial is the
characteristic polynomial of the stream.  Seed strings list stage 0 first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ghseq.correlation import bits_to_bipolar
from ghseq.errors import GhseqError, InvariantViolation

MAX_SIMULATED_DEGREE = 24
MAX_MERSENNE_DEGREE = 60


# ---------- GF(2)[x] arithmetic on integer masks


def _deg(a: int) -> int:
    return a.bit_length() - 1


def _mul(a: int, b: int) -> int:
    c = 0
    while b:
        if b & 1:
            c ^= a
        a <<= 1
        b >>= 1
    return c


def _mod(a: int, m: int) -> int:
    dm = _deg(m)
    while a and _deg(a) >= dm:
        a ^= m << (_deg(a) - dm)
    return a


def _divmod(a: int, m: int) -> tuple[int, int]:
    q = 0
    dm = _deg(m)
    while a and _deg(a) >= dm:
        shift = _deg(a) - dm
        q |= 1 << shift
        a ^= m << shift
    return q, a


def _mulmod(a: int, b: int, m: int) -> int:
    return _mod(_mul(a, b), m)


def _powmod(a: int, e: int, m: int) -> int:
    result = 1
    a = _mod(a, m)
    while e:
        if e & 1:
            result = _mulmod(result, a, m)
        a = _mulmod(a, a, m)
        e >>= 1
    return _mod(result, m)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _mod(a, b)
    return a


def _derivative(a: int) -> int:
    # d/dx x^e = e x^(e-1); only odd exponents survive in characteristic 2
    return (a >> 1) & int("01" * (a.bit_length() // 2 + 1), 2)


def _trace_split(f: int, deg: int) -> int:
    """Split a squarefree product of degree-``deg`` irreducibles into a proper factor."""
    r = 2
    while True:
        t, power = 0, _mod(r, f)
        for _ in range(deg):
            t ^= power
            power = _mulmod(power, power, f)
        g = _gcd(f, t)
        if g not in (0, 1) and g != f:
            return g
        r += 1


def find_factor(f: int) -> int | None:
    """A proper factor of ``f`` in GF(2)[x], or ``None`` if ``f`` is irreducible."""
    d = _deg(f)
    if d < 1:
        raise GhseqError("constant polynomials have no factorisation")
    if d == 1:
        return None
    g = _gcd(f, _derivative(f))
    if g != 1:
        # repeated factor (or f' = 0, in which case f is a square)
        return g if g != f else _sqrt(f)
    x_power = 2  # x**(2**i) mod f
    for i in range(1, d // 2 + 1):
        x_power = _mulmod(x_power, x_power, f)
        g = _gcd(f, x_power ^ 2)
        if g != 1:
            return g if g != f else _trace_split(f, i)
    return None


def _sqrt(a: int) -> int:
    # a = b(x)^2 has only even exponents; halve them
    out, e = 0, 0
    while a:
        if a & 1:
            out |= 1 << e
        a >>= 2
        e += 1
    return out


def format_mask(a: int) -> str:
    return ",".join(str(e) for e in range(_deg(a), -1, -1) if (a >> e) & 1)


# ---------- polynomials and registers


@dataclass(frozen=True)
class BinaryPolynomial:
    exponents: frozenset[int]

    def __post_init__(self):
        exps = frozenset(int(e) for e in self.exponents)
        if any(e < 0 for e in exps):
            raise GhseqError("exponents must be non-negative")
        if not exps or max(exps) < 1:
            raise GhseqError("polynomial degree must be >= 1")
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def parse(cls, text: str) -> "BinaryPolynomial":
        """Parse the comma-separated exponent form, e.g. ``"45,4,3,1,0"``."""
        try:
            exps = [int(tok) for tok in text.replace(" ", "").split(",") if tok]
        except ValueError:
            raise GhseqError(f"bad polynomial text {text!r}; expected comma-separated exponents") from None
        if len(set(exps)) != len(exps):
            raise GhseqError(f"repeated exponent in {text!r}")
        return cls(frozenset(exps))

    @classmethod
    def from_mask(cls, mask: int) -> "BinaryPolynomial":
        return cls(frozenset(e for e in range(mask.bit_length()) if (mask >> e) & 1))

    @property
    def degree(self) -> int:
        return max(self.exponents)

    @property
    def mask(self) -> int:
        return sum(1 << e for e in self.exponents)

    @property
    def tap_mask(self) -> int:
        return self.mask ^ (1 << self.degree)

    def __str__(self) -> str:
        return ",".join(str(e) for e in sorted(self.exponents, reverse=True))

    def pretty(self, var: str = "x") -> str:
        terms = []
        for e in sorted(self.exponents, reverse=True):
            terms.append("1" if e == 0 else var if e == 1 else f"{var}^{e}")
        return " + ".join(terms)

    def require_feedback(self) -> None:
        if 0 not in self.exponents:
            raise GhseqError(f"{self} has no constant term; it cannot drive an invertible LFSR")


def parse_seed(seed: str | Sequence[int], degree: int) -> int:
    """Register contents as an integer with stage ``i`` at bit ``degree-1-i``."""
    if isinstance(seed, str):
        if not seed or set(seed) - {"0", "1"}:
            raise GhseqError(f"seed {seed!r} is not a binary string")
        bits = [int(c) for c in seed]
    else:
        bits = [int(b) for b in seed]
        if any(b not in (0, 1) for b in bits):
            raise GhseqError("seed bits must be 0 or 1")
    if len(bits) != degree:
        raise GhseqError(f"seed has {len(bits)} stages but the polynomial has degree {degree}")
    state = 0
    for b in bits:
        state = (state << 1) | b
    if state == 0:
        raise GhseqError("all-zero seed locks the register at zero")
    return state


def default_seed(degree: int) -> str:
    return "1" * degree


@dataclass
class LfsrState:
    poly: BinaryPolynomial
    register: int = field(default=0)

    def __post_init__(self):
        self.poly.require_feedback()
        if not 0 < self.register < (1 << self.poly.degree):
            raise GhseqError("register must be non-zero and fit in the polynomial degree")

    @classmethod
    def seeded(cls, poly: BinaryPolynomial, seed: str | Sequence[int] | None = None) -> "LfsrState":
        if seed is None:
            seed = default_seed(poly.degree)
        return cls(poly, parse_seed(seed, poly.degree))

    @property
    def stages(self) -> str:
        return format(self.register, f"0{self.poly.degree}b")

    def step(self) -> int:
        """Clock once and return the emitted bit."""
        reg = self.register
        out = reg & 1
        fb = (reg & self.poly.tap_mask).bit_count() & 1
        self.register = (reg >> 1) | (fb << (self.poly.degree - 1))
        return out

    def bits(self, count: int) -> list[int]:
        return [self.step() for _ in range(count)]


def lfsr_bits(poly: BinaryPolynomial, seed: str | Sequence[int] | None, count: int) -> list[int]:
    if count < 1:
        raise GhseqError(f"count must be >= 1, got {count}")
    return LfsrState.seeded(poly, seed).bits(count)


def pn_fragment(
    poly: BinaryPolynomial, seed: str | Sequence[int] | None, offset: int, length: int
) -> list[int]:
    """Bits ``[offset, offset + length)`` of the LFSR stream as +/-1 (0 -> +1, 1 -> -1)."""
    if offset < 0:
        raise GhseqError(f"offset must be >= 0, got {offset}")
    if length < 1:
        raise GhseqError(f"length must be >= 1, got {length}")
    if poly.degree <= 20 and offset + length > (1 << poly.degree) - 1:
        raise GhseqError(
            f"window [{offset}, {offset + length}) runs past the maximum period 2^{poly.degree}-1"
        )
    state = LfsrState.seeded(poly, seed)
    for _ in range(offset):
        state.step()
    return bits_to_bipolar(state.bits(length))


def sequence_period(poly: BinaryPolynomial, seed: str | Sequence[int] | None = None) -> int:
    """Period of the register state by direct simulation (degree <= 24)."""
    d = poly.degree
    if d > MAX_SIMULATED_DEGREE:
        raise GhseqError(f"degree {d} is too large to simulate; use poly_order instead")
    state = LfsrState.seeded(poly, seed)
    start = state.register
    limit = (1 << d) - 1
    taps, top = poly.tap_mask, d - 1
    reg = start
    for t in range(1, limit + 1):
        reg = (reg >> 1) | (((reg & taps).bit_count() & 1) << top)
        if reg == start:
            return t
    raise InvariantViolation(f"no state recurrence within 2^{d}-1 steps for {poly}")


def _trial_division(n: int) -> list[int]:
    factors = []
    while n % 2 == 0:
        factors.append(2)
        n //= 2
    d = 3
    while d * d <= n:
        while n % d == 0:
            factors.append(d)
            n //= d
        d += 2
    if n > 1:
        factors.append(n)
    return factors


def factor_mersenne(degree: int) -> list[int]:
    """Prime factors of ``2**degree - 1`` with multiplicity, ascending."""
    if not 1 <= degree <= MAX_MERSENNE_DEGREE:
        raise GhseqError(f"degree must be in [1, {MAX_MERSENNE_DEGREE}], got {degree}")
    return _trial_division((1 << degree) - 1)


def poly_order(poly: BinaryPolynomial) -> int:
    """Multiplicative order of x modulo an irreducible ``poly``.

    Starts from ``2**d - 1`` and strips each prime factor ``q`` while
    ``x**(e/q) == 1`` still holds.  Equals ``2**d - 1`` exactly when the
    polynomial is primitive.
    """
    poly.require_feedback()
    f = poly.mask
    factor = find_factor(f)
    if factor is not None:
        raise GhseqError(f"{poly} is reducible; it has the factor {format_mask(factor)}")
    d = poly.degree
    order = (1 << d) - 1
    for q in sorted(set(factor_mersenne(d))):
        while order % q == 0 and _powmod(2, order // q, f) == 1:
            order //= q
    return order


def is_primitive(poly: BinaryPolynomial) -> bool:
    if 0 not in poly.exponents or find_factor(poly.mask) is not None:
        return False
    return poly_order(poly) == (1 << poly.degree) - 1


def iter_primitive(degree: int, weight: int = 5) -> Iterable[BinaryPolynomial]:
    """Primitive polynomials ``x^d + (weight-2 middle terms) + 1`` in lexicographic order."""
    from itertools import combinations

    for middle in combinations(range(1, degree), weight - 2):
        poly = BinaryPolynomial(frozenset((degree, 0, *middle)))
        if is_primitive(poly):
            yield poly

"""Periodic cross-correlation of bipolar sequences.

``ccf(a, b)[k] = (1/N) * sum_j a[j] * b[(j + k) mod N]``

Lag sums are accumulated as exact integers and divided once, so the values
(and anything printed from them) are bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from typing import Sequence

import numpy as np

from ghseq.errors import GhseqError


def as_bipolar(values: Sequence[int]) -> np.ndarray:
    arr = np.asarray(values, dtype=np.int64)
    if arr.ndim != 1 or arr.size == 0:
        raise GhseqError("a bipolar sequence must be a non-empty 1-D sequence")
    if not np.all((arr == 1) | (arr == -1)):
        raise GhseqError("bipolar sequences may only contain +1 and -1")
    return arr


def bits_to_bipolar(bits: Sequence[int]) -> list[int]:
    """Map 0 -> +1 and 1 -> -1."""
    return [1 - 2 * b for b in bits]


@dataclass(frozen=True)
class CorrelationSeries:
    """Normalised CCF over lags ``0 .. N-1``, stored as integer lag sums."""

    sums: tuple[int, ...]

    def __post_init__(self):
        n = len(self.sums)
        if n == 0:
            raise GhseqError("empty correlation series")
        for s in self.sums:
            if abs(s) > n:
                raise GhseqError(f"lag sum {s} exceeds N = {n}")

    @classmethod
    def from_values(cls, values: Sequence[float]) -> "CorrelationSeries":
        n = len(values)
        sums = []
        for v in values:
            s = Fraction(v).limit_denominator(max(n, 1)) * n
            if s.denominator != 1:
                raise GhseqError(f"value {v} is not a multiple of 1/{n}")
            sums.append(int(s))
        return cls(tuple(sums))

    @property
    def length(self) -> int:
        return len(self.sums)

    @property
    def values(self) -> list[float]:
        n = self.length
        return [s / n for s in self.sums]

    def exact(self, lag: int) -> Fraction:
        return Fraction(self.sums[lag], self.length)

    def __len__(self) -> int:
        return len(self.sums)

    def to_csv(self, comments: Sequence[str] = ()) -> str:
        lines = [f"# {c}" for c in comments]
        lines.append("lag,ccf")
        lines += [f"{k},{format_fixed(Fraction(s, self.length))}" for k, s in enumerate(self.sums)]
        return "\n".join(lines) + "\n"


def format_fixed(x: Fraction | float, places: int = 6) -> str:
    """Fixed-point text with round-half-even applied to the exact value."""
    frac = Fraction(x)
    with localcontext() as ctx:
        ctx.prec = 50
        d = Decimal(frac.numerator) / Decimal(frac.denominator)
        out = d.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN)
    if out.is_zero():
        out = abs(out)
    return f"{out:f}"


def ccf(a: Sequence[int], b: Sequence[int]) -> CorrelationSeries:
    """Periodic (circular) cross-correlation of two equal-length bipolar sequences."""
    x = as_bipolar(a)
    y = as_bipolar(b)
    if x.size != y.size:
        raise GhseqError(f"sequences differ in length: {x.size} vs {y.size}")
    n = x.size
    idx = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    # row k holds b shifted by k
    sums = y[idx.T] @ x
    return CorrelationSeries(tuple(int(s) for s in sums))


def peak_ccf(series: CorrelationSeries, exclude_zero_lag: bool = False, absolute: bool = True) -> float:
    """Largest correlation over the admissible lags.

    Lag 0 is admissible unless ``exclude_zero_lag`` is set (sidelobes of a
    self-correlation).  With ``absolute=False`` the raw maximum is returned
    instead of the maximum magnitude.
    """
    sums = series.sums
    if not sums:
        raise GhseqError("empty correlation series")
    if exclude_zero_lag:
        if len(sums) < 2:
            raise GhseqError("cannot exclude lag 0 from a length-1 series")
        sums = sums[1:]
    top = max(abs(s) for s in sums) if absolute else max(sums)
    return top / series.length


def randomness_measure(series: CorrelationSeries) -> float:
    """``1 - mean |CCF(k)|`` over the non-zero lags ``k = 1 .. N-1``."""
    n = series.length
    if n < 2:
        raise GhseqError("randomness measure needs N >= 2")
    total = sum(abs(s) for s in series.sums[1:])
    return float(1 - Fraction(total, n * (n - 1)))

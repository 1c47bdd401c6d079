"""Witten-Kontsevich intersection numbers <tau_{d_1} ... tau_{d_n}>_g.

Computed with the string and dilaton equations to strip ``tau_0`` and
``tau_1`` insertions, and the DVV (Virasoro) recursion for the rest.
Results are exact :class:`~fractions.Fraction` values cached in a
write-once table shared by all threads.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

_cache: dict[tuple[int, tuple[int, ...]], Fraction] = {}
_lock = threading.Lock()


def _dfact(k: int) -> int:
    """Double factorial with ``(-1)!! = 1``."""
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def _dimension_ok(g: int, degrees: Sequence[int]) -> bool:
    n = len(degrees)
    return n >= 1 and g >= 0 and 2 - 2 * g - n < 0 and sum(degrees) == 3 * g - 3 + n


def intersection_number(g: int, degrees: Iterable[int]) -> Fraction:
    """``<tau_{d_1} ... tau_{d_n}>_g``; zero off the dimension constraint."""
    key = (g, tuple(sorted(degrees, reverse=True)))
    if any(d < 0 for d in key[1]):
        raise ValueError("degrees must be non-negative")
    hit = _cache.get(key)
    if hit is not None:
        return hit
    value = _compute(*key)
    with _lock:
        _cache.setdefault(key, value)
    return _cache[key]


def cache_snapshot() -> dict[tuple[int, tuple[int, ...]], Fraction]:
    with _lock:
        return dict(_cache)


def _compute(g: int, ds: tuple[int, ...]) -> Fraction:
    if not _dimension_ok(g, ds):
        return Fraction(0)
    n = len(ds)
    if g == 0 and n == 3:
        return Fraction(1)
    if g == 1 and ds == (1,):
        return Fraction(1, 24)
    # ds is sorted descending, so zeros and ones sit at the end
    if ds[-1] == 0:
        rest = list(ds[:-1])
        total = Fraction(0)
        for j, d in enumerate(rest):
            if d >= 1:
                total += intersection_number(g, rest[:j] + [d - 1] + rest[j + 1:])
        return total
    if ds[-1] == 1:
        rest = ds[:-1]
        return (2 * g - 2 + len(rest)) * intersection_number(g, rest)
    return _dvv(g, ds)


def _dvv(g: int, ds: tuple[int, ...]) -> Fraction:
    k = ds[0] - 1
    rest = list(ds[1:])
    total = Fraction(0)
    for j, d in enumerate(rest):
        others = rest[:j] + rest[j + 1:]
        coeff = Fraction(_dfact(2 * k + 2 * d + 1), _dfact(2 * d - 1))
        total += coeff * intersection_number(g, [d + k] + others)
    split_total = Fraction(0)
    for a in range(k):
        b = k - 1 - a
        c = _dfact(2 * a + 1) * _dfact(2 * b + 1)
        if g >= 1:
            split_total += c * intersection_number(g - 1, [a, b] + rest)
        m = len(rest)
        for mask in range(1 << m):
            left = [rest[i] for i in range(m) if mask >> i & 1]
            right = [rest[i] for i in range(m) if not mask >> i & 1]
            for g1 in range(g + 1):
                lv = _lookup(g1, [a] + left)
                if lv:
                    split_total += c * lv * _lookup(g - g1, [b] + right)
    total += split_total / 2
    return total / _dfact(2 * k + 3)


def _lookup(g: int, degrees: list[int]) -> Fraction:
    if not _dimension_ok(g, degrees):
        return Fraction(0)
    return intersection_number(g, degrees)


def genus_zero_closed_form(degrees: Sequence[int]) -> Fraction:
    """``(n-3)! / prod d_i!`` -- the string equation solved in genus 0."""
    n = len(degrees)
    if n < 3 or sum(degrees) != n - 3:
        return Fraction(0)
    out = Fraction(math.factorial(n - 3))
    for d in degrees:
        out /= math.factorial(d)
    return out


@dataclass(frozen=True)
class TauCorrelator:
    genus: int
    degrees: tuple[int, ...]

    @property
    def value(self) -> Fraction:
        return intersection_number(self.genus, self.degrees)

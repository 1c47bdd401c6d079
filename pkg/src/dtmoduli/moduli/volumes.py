"""Exact Weil-Petersson volumes of moduli spaces of punctured curves."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .intersection import intersection_number


class UnstableModuliError(ValueError):
    pass


def format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class PiScaledRational:
    """``coeff * pi**pi_power`` with ``pi_power`` even."""

    coeff: Fraction
    pi_power: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        if self.pi_power < 0 or self.pi_power % 2:
            raise ValueError("pi_power must be an even natural number")

    def __add__(self, other: "PiScaledRational") -> "PiScaledRational":
        if not isinstance(other, PiScaledRational):
            return NotImplemented
        if other.pi_power != self.pi_power:
            raise ValueError("cannot add terms with different powers of pi")
        return PiScaledRational(self.coeff + other.coeff, self.pi_power)

    def __mul__(self, other):
        if isinstance(other, PiScaledRational):
            return PiScaledRational(self.coeff * other.coeff, self.pi_power + other.pi_power)
        if isinstance(other, (int, Fraction)):
            return PiScaledRational(self.coeff * other, self.pi_power)
        return NotImplemented

    __rmul__ = __mul__

    def __float__(self) -> float:
        return float(self.coeff) * math.pi**self.pi_power

    def __str__(self) -> str:
        return f"{format_fraction(self.coeff)}*pi^{self.pi_power}"

    def to_json(self) -> dict:
        return {"coeff": format_fraction(self.coeff), "pi_power": self.pi_power, "float": float(self)}


def multi_indices(m: int) -> Iterator[dict[int, int]]:
    """All ``l = (l_2, l_3, ...)`` with ``sum (k-1) l_k = m``, as ``{k: l_k}`` (zeros omitted)."""

    def rec(rem: int, k: int) -> Iterator[dict[int, int]]:
        if rem == 0:
            yield {}
            return
        if k - 1 > rem:
            return
        for c in range(rem // (k - 1), -1, -1):
            for tail in rec(rem - c * (k - 1), k + 1):
                if c:
                    yield {k: c, **tail}
                else:
                    yield tail

    yield from rec(m, 2)


def volume_terms(g: int, n0: int) -> list[tuple[dict[int, int], Fraction, Fraction]]:
    """Per multi-index: ``(l, signed weight, <tau_0^N0 tau_2^l2 ...>_g)``."""
    dim = 3 * g - 3 + n0
    out = []
    for l in multi_indices(dim):
        norm = sum(l.values())
        den = 1
        for i, c in l.items():
            den *= math.factorial(c) * math.factorial(i - 1) ** c
        sign = -1 if (g - 1 + n0 + norm) % 2 else 1
        degrees = [0] * n0 + [i for i, c in sorted(l.items()) for _ in range(c)]
        out.append((l, Fraction(sign, den), intersection_number(g, degrees)))
    return out


def wp_volume(g: int, n0: int) -> PiScaledRational:
    """Weil-Petersson volume of the moduli space of genus ``g`` with ``N0`` punctures.

    Divided by ``N0!`` (unlabelled punctures) and carrying ``pi**(2 dim)``.
    """
    if g < 0 or n0 < 0 or 2 - 2 * g - n0 >= 0:
        raise UnstableModuliError(f"moduli space of genus {g} with {n0} punctures is unstable")
    dim = 3 * g - 3 + n0
    total = sum((w * tau for _, w, tau in volume_terms(g, n0)), Fraction(0))
    return PiScaledRational(total / math.factorial(n0), 2 * dim)


def wp_volume_labeled(g: int, n0: int) -> PiScaledRational:
    """Volume without the ``1/N0!`` normalisation."""
    return wp_volume(g, n0) * math.factorial(n0)

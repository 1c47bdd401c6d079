"""Large-N0 asymptotics of volumes and triangulation counts, scaling exponents."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .intersection import intersection_number
from .special import first_zero_j0, gamma_half_integer, j0_prime
from .volumes import wp_volume

# growth constant of generalized triangulations (duals of trivalent graphs)
E_MU0 = 108 * math.sqrt(3)
B1 = Fraction(1, 48)


class ComplexBranchError(ValueError):
    pass


@dataclass(frozen=True)
class MZConstants:
    j0: float
    C: float
    A: float
    B: dict

    @property
    def growth_base(self) -> float:
        """``C e^{mu0} / pi^2``."""
        return self.C * E_MU0 / math.pi**2


@lru_cache(maxsize=1)
def mz_constants(max_genus: int = 3) -> MZConstants:
    z = first_zero_j0()
    d = j0_prime(z)
    c = -0.5 * z * d
    a = -d / z
    consts = MZConstants(j0=z, C=c, A=a, B={})
    for g in range(max_genus + 1):
        consts.B[g] = _b_genus(g, consts)
    return consts


def _b_genus(g: int, k: MZConstants) -> float:
    if g == 0:
        gam = gamma_half_integer(Fraction(-1, 2))
        return 1.0 / (math.sqrt(k.A) * float(gam) * math.sqrt(k.C))
    if g == 1:
        return float(B1)
    half = Fraction(5 * g - 5, 2)
    gam = gamma_half_integer(half)
    tau = intersection_number(g, [2] * (3 * g - 3))
    num = k.A ** ((g - 1) / 2)
    den = 2 ** (2 * g - 2) * math.factorial(3 * g - 3) * float(gam) * k.C ** float(half)
    return num / den * float(tau)


def b_genus(g: int) -> float:
    """Leading large-N0 volume coefficient ``B_g``.

    ``B_0`` comes out negative because ``Gamma(-1/2) < 0``; it is returned as is.
    """
    if g < 0:
        raise ValueError("genus must be non-negative")
    k = mz_constants()
    if g in k.B:
        return k.B[g]
    return _b_genus(g, k)


def mz_asymptotic_volume(g: int, n0: int) -> float:
    """Leading-order large-N0 estimate of :func:`wp_volume`."""
    if 2 - 2 * g - n0 >= 0:
        raise ValueError("unstable (g, N0)")
    k = mz_constants()
    return (
        math.pi ** (2 * (3 * g - 3 + n0))
        * (n0 + 1) ** ((5 * g - 7) / 2)
        * k.C ** (-n0)
        * b_genus(g)
    )


def puncture_ratios(g: int, n0_values: Sequence[int]) -> list[float]:
    """``VOL(g, N0+1) / VOL(g, N0)`` for each ``N0``."""
    return [float(wp_volume(g, n + 1)) / float(wp_volume(g, n)) for n in n0_values]


def fitted_volume_exponent(g: int, n0_values: Sequence[int]) -> float:
    """Least-squares slope of ``log(VOL C^N0 / pi^{2 dim})`` against ``log(N0+1)``."""
    k = mz_constants()
    xs = np.log([n + 1.0 for n in n0_values])
    ys = []
    for n in n0_values:
        v = wp_volume(g, n)
        # log of the exact coefficient avoids overflow in pi**pi_power
        ys.append(math.log(v.coeff) + n * math.log(k.C) + (v.pi_power - 2 * (3 * g - 3 + n)) * math.log(math.pi))
    slope, _ = np.polyfit(xs, np.array(ys), 1)
    return float(slope)


def card_dt_asymptotic(g: int, n0: int, c_g: float) -> float:
    """Matrix-model growth of the full triangulation count; ``c_g`` is caller-supplied."""
    return 16 * c_g / (3 * math.sqrt(2 * math.pi)) * E_MU0**n0 * n0 ** ((5 * g - 7) / 2)


def card_q_asymptotic(g: int, n0: int, c_g: float) -> float:
    k = mz_constants()
    return c_g / (math.pi ** (6 * g - 6) * b_genus(g)) * k.growth_base**n0


def _exact_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    p, q = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if p * p == x.numerator and q * q == x.denominator:
        return Fraction(p, q)
    return None


def string_susceptibility(c_m, g: int):
    """``gamma = (1-g)/12 (c - 25 - sqrt((25-c)(1-c))) + 2``.

    Exact (``Fraction``) when ``c_m`` is rational with a rational square
    root in the formula, float otherwise.
    """
    if 1 < c_m < 25:
        raise ComplexBranchError(f"c_m = {c_m} lies in (1, 25); the exponent is complex")
    if isinstance(c_m, (int, Fraction)):
        c = Fraction(c_m)
        root = _exact_sqrt((25 - c) * (1 - c))
        if root is not None:
            return Fraction(1 - g, 12) * (c - 25 - root) + 2
    c = float(c_m)
    return (1 - g) / 12 * (c - 25 - math.sqrt((25 - c) * (1 - c))) + 2


def anomaly_coefficient(n: int, sign) -> int:
    """``c_pm(n) = 6n^2 pm 6n + 1``."""
    s = {"+": 1, "-": -1, 1: 1, -1: -1}.get(sign)
    if s is None:
        raise ValueError("sign must be '+', '-', 1 or -1")
    return 6 * n * n + s * 6 * n + 1


@dataclass(frozen=True)
class GenusBoundRow:
    genus: int
    volume: float
    lower: float
    upper: float
    ok: bool


def wp_genus_bound_check(genera: Sequence[int], n0: int, c1: float, c2: float) -> tuple[bool, list[GenusBoundRow]]:
    """Whether ``C1^g (2g)! <= VOL <= C2^g (2g)!`` holds at fixed ``N0`` for each genus."""
    if not 0 < c1 < c2:
        raise ValueError("need 0 < C1 < C2")
    rows = []
    for g in genera:
        if g < 1:
            raise ValueError("the genus bound is only meaningful for g >= 1")
        vol = float(wp_volume(g, n0))
        lo = c1**g * math.factorial(2 * g)
        hi = c2**g * math.factorial(2 * g)
        rows.append(GenusBoundRow(g, vol, lo, hi, lo <= vol <= hi))
    return all(r.ok for r in rows), rows

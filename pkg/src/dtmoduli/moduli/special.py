"""Bessel J0 by its power series and Gamma at half-integers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

SERIES_RADIUS = 4.0


class RootFindingError(RuntimeError):
    pass


def _bessel_series(z: float, order: int) -> float:
    """``J_order(z)`` for ``|z| <= 4`` from the ascending series.

    Past ``k > (z/2)^2`` the terms alternate with decreasing modulus, so the
    truncation error is bounded by the first omitted term.
    """
    if abs(z) > SERIES_RADIUS:
        raise ValueError(f"series evaluation restricted to |z| <= {SERIES_RADIUS}")
    h = z / 2
    term = h**order / math.factorial(order)
    total = term
    k = 0
    while True:
        k += 1
        term *= -(h * h) / (k * (k + order))
        total += term
        if k > h * h and abs(term) < 1e-18 * max(1.0, abs(total)):
            return total


def j0(z: float) -> float:
    return _bessel_series(z, 0)


def j0_prime(z: float) -> float:
    """``J0'(z) = -J1(z)``."""
    return -_bessel_series(z, 1)


def first_zero_j0(lo: float = 2.0, hi: float = 3.0, tol: float = 1e-15) -> float:
    """First positive zero of J0 by bisection on a sign-changing bracket."""
    flo, fhi = j0(lo), j0(hi)
    if flo * fhi > 0:
        raise RootFindingError(f"J0 does not change sign on [{lo}, {hi}]")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = j0(mid)
        if fm == 0 or hi - lo < tol:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    raise RootFindingError("bisection did not converge")


@dataclass(frozen=True)
class HalfIntegerGamma:
    """``Gamma(x) = rational * sqrt(pi)**sqrt_pi_power`` for half-integer ``x``."""

    rational: Fraction
    sqrt_pi_power: int

    def __float__(self) -> float:
        return float(self.rational) * math.sqrt(math.pi) ** self.sqrt_pi_power


def gamma_half_integer(x: Fraction) -> HalfIntegerGamma:
    """Exact Gamma at integers and half-integers (poles raise ``ValueError``)."""
    x = Fraction(x)
    if x.denominator == 1:
        if x <= 0:
            raise ValueError(f"Gamma has a pole at {x}")
        return HalfIntegerGamma(Fraction(math.factorial(int(x) - 1)), 0)
    if x.denominator != 2:
        raise ValueError("only integer and half-integer arguments are supported")
    # start from Gamma(1/2) = sqrt(pi) and step with Gamma(x+1) = x Gamma(x)
    val = Fraction(1)
    y = Fraction(1, 2)
    while y < x:
        val *= y
        y += 1
    while y > x:
        y -= 1
        val /= y
    return HalfIntegerGamma(val, 1)

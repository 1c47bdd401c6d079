"""Local metric geometry: medians of triangles, dual edge lengths, cone charts."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable


class DegenerateTriangleError(ValueError):
    pass


def median_lengths_squared(l1sq, l2sq, l3sq):
    """Squared barycenter-to-side-midpoint lengths from squared sides.

    Exact when given :class:`~fractions.Fraction` inputs.
    """
    m1 = Fraction(1, 18) * l3sq + Fraction(1, 18) * l2sq - Fraction(1, 36) * l1sq
    m2 = Fraction(1, 18) * l1sq + Fraction(1, 18) * l3sq - Fraction(1, 36) * l2sq
    m3 = Fraction(1, 18) * l1sq + Fraction(1, 18) * l2sq - Fraction(1, 36) * l3sq
    if min(m1, m2, m3) <= 0:
        raise DegenerateTriangleError("non-positive median radicand")
    return m1, m2, m3


def edge_lengths_squared(m1sq, m2sq, m3sq):
    l1 = 8 * m3sq + 8 * m2sq - 4 * m1sq
    l2 = 8 * m1sq + 8 * m3sq - 4 * m2sq
    l3 = 8 * m1sq + 8 * m2sq - 4 * m3sq
    if min(l1, l2, l3) <= 0:
        raise DegenerateTriangleError("non-positive side radicand")
    return l1, l2, l3


def _check_triangle(l1: float, l2: float, l3: float) -> None:
    a, b, c = sorted((l1, l2, l3))
    if a <= 0 or a + b <= c:
        raise DegenerateTriangleError(f"({l1}, {l2}, {l3}) violates the strict triangle inequality")


def median_lengths(l1: float, l2: float, l3: float) -> tuple[float, float, float]:
    _check_triangle(l1, l2, l3)
    sq = median_lengths_squared(float(l1) ** 2, float(l2) ** 2, float(l3) ** 2)
    return tuple(math.sqrt(x) for x in sq)


def edge_lengths(m1: float, m2: float, m3: float) -> tuple[float, float, float]:
    sq = edge_lengths_squared(float(m1) ** 2, float(m2) ** 2, float(m3) ** 2)
    out = tuple(math.sqrt(x) for x in sq)
    _check_triangle(*out)
    return out


def dual_edge_length(alpha_sides: tuple[float, float, float], beta_sides: tuple[float, float, float]) -> float:
    """Length of the dual edge joining the barycenters of two adjacent triangles.

    The triangles share side 3 of ``alpha`` and side 1 of ``beta``.
    """
    _check_triangle(*alpha_sides)
    _check_triangle(*beta_sides)
    a1, a2, a3 = alpha_sides
    b1, b2, b3 = beta_sides
    ra = 2 * a1**2 + 2 * a2**2 - a3**2
    rb = 2 * b3**2 + 2 * b2**2 - b1**2
    if ra <= 0 or rb <= 0:
        raise DegenerateTriangleError("non-positive median radicand")
    return (math.sqrt(ra) + math.sqrt(rb)) / 6


def slant_radius(perimeter: float, epsilon: float) -> float:
    """``L / (2 pi - eps)``: radius of the cone chart of a dual cell."""
    theta = 2 * math.pi - epsilon
    if theta <= 0:
        raise ValueError("cone angle must be positive")
    return perimeter / theta


def _zero(t: complex) -> float:
    return 0.0


@dataclass(frozen=True)
class ConeChart:
    """Uniformizing disk around vertex ``vertex`` with a conical metric."""

    vertex: int
    t_center: complex
    epsilon: float
    perimeter: float
    u: Callable[[complex], float] = field(default=_zero, compare=False)

    def __post_init__(self) -> None:
        if not self.epsilon < 2 * math.pi:
            raise ValueError("deficit angle must be below 2 pi")
        if not self.perimeter > 0:
            raise ValueError("perimeter must be positive")

    @property
    def cone_angle(self) -> float:
        return 2 * math.pi - self.epsilon

    @property
    def r(self) -> float:
        return slant_radius(self.perimeter, self.epsilon)

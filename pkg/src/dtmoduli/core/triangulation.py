"""Dynamical triangulations as views on their dual trivalent maps."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .maps import CombinatorialMap, MalformedMapError, genus

MIN_DEGREE_CHOICES = (1, 2, 3)
DEFAULT_MIN_DEGREE = 2


@dataclass(frozen=True)
class CurvatureAssignment:
    """Number of triangles ``q(k)`` incident on each vertex."""

    q: tuple[int, ...]

    def deficit_over_pi(self) -> tuple[Fraction, ...]:
        """Exact deficit angles in units of pi: ``2 - q/3``."""
        return tuple(2 - Fraction(k, 3) for k in self.q)

    @property
    def deficit(self) -> tuple[float, ...]:
        """Deficit angles ``2 pi - q pi/3`` in radians."""
        return tuple(float(e) * math.pi for e in self.deficit_over_pi())

    @property
    def multiset(self) -> tuple[int, ...]:
        return tuple(sorted(self.q))


@dataclass(frozen=True)
class Divisor:
    """Real divisor with coefficient ``theta(k)/2pi - 1`` per vertex."""

    coefficients: tuple

    @property
    def degree(self):
        return sum(self.coefficients, Fraction(0))


@dataclass(frozen=True)
class Triangulation:
    """A generalized dynamical triangulation stored through its dual trivalent map.

    ``dual`` is the ribbon graph of the barycentrically dual polytope; the
    primal map is derived from it.  Vertex ``k`` of the triangulation is
    boundary cycle ``k`` of the dual.
    """

    dual: CombinatorialMap
    min_degree: int = DEFAULT_MIN_DEGREE

    def __post_init__(self) -> None:
        if self.min_degree not in MIN_DEGREE_CHOICES:
            raise ValueError(f"min_degree must be one of {MIN_DEGREE_CHOICES}")
        if not self.dual.is_trivalent():
            raise MalformedMapError("dual map of a triangulation must be trivalent")
        low = min(self.dual.face_degrees)
        if low < self.min_degree:
            raise MalformedMapError(f"vertex of degree {low} below min_degree={self.min_degree}")

    @classmethod
    def from_primal(cls, primal: CombinatorialMap, min_degree: int = DEFAULT_MIN_DEGREE) -> "Triangulation":
        if any(d != 3 for d in primal.face_degrees):
            raise MalformedMapError("every face of a triangulation must be a triangle")
        return cls(dualize_map(primal), min_degree)

    @cached_property
    def map(self) -> CombinatorialMap:
        """The primal map; its faces are the triangles."""
        return dualize_map(self.dual)

    @property
    def f_vector(self) -> tuple[int, int, int]:
        d = self.dual
        return d.num_faces, d.num_edges, d.num_vertices

    @cached_property
    def genus(self) -> int:
        return genus(self.dual)

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus

    @property
    def q(self) -> CurvatureAssignment:
        return CurvatureAssignment(self.dual.face_degrees)


def dualize_map(m: CombinatorialMap) -> CombinatorialMap:
    """Barycentric dual as a map: ``(sigma o alpha, alpha)``; an exact involution."""
    return m.dual()


def dualize(t: Triangulation) -> CombinatorialMap:
    """Trivalent ribbon graph of the polytope dual to ``t``."""
    return dualize_map(t.map)


def codualize(m: CombinatorialMap, min_degree: int = DEFAULT_MIN_DEGREE) -> Triangulation:
    """Inverse of :func:`dualize`."""
    return Triangulation(m, min_degree)


def deficit_and_divisor(t: Triangulation, edge_length: float = 1.0) -> tuple[CurvatureAssignment, Divisor]:
    """Curvature assignment and divisor of the equilateral triangulation.

    Angles do not depend on ``edge_length`` for equilateral triangles; the
    divisor coefficients ``-eps/2pi = q/6 - 1`` are returned exactly.
    """
    if edge_length <= 0:
        raise ValueError("edge length must be positive")
    q = t.q
    return q, Divisor(tuple(-e / 2 for e in q.deficit_over_pi()))


def gauss_bonnet_euler_number(t: Triangulation, div: Divisor):
    """``chi(M) + |Div|``; zero for every Regge or dynamical triangulation."""
    if len(div.coefficients) != t.f_vector[0]:
        raise ValueError("divisor does not match the vertex set of the triangulation")
    return t.euler_characteristic + div.degree


def hex_refine(t: Triangulation) -> Triangulation:
    """Split every triangle into four by inserting a vertex on each edge.

    Built on the dual: each side ``x`` of a triangle contributes four darts,
    ``plus(x)`` and ``minus(x)`` (second and first halves of the split side),
    ``inner(x)`` (the mid-segment side of the corner triangle following ``x``)
    and ``center(x)`` (the matching side of the central triangle).
    """
    d = t.dual
    n = d.dart_count
    sigma, alpha = d.sigma, d.alpha
    plus = lambda x: 4 * x
    minus = lambda x: 4 * x + 1
    inner = lambda x: 4 * x + 2
    center = lambda x: 4 * x + 3
    new_sigma = [0] * (4 * n)
    new_alpha = [0] * (4 * n)
    for x in range(n):
        sx = sigma[x]
        # corner triangle between side x and side sigma(x)
        new_sigma[plus(x)] = minus(sx)
        new_sigma[minus(sx)] = inner(x)
        new_sigma[inner(x)] = plus(x)
        new_sigma[center(x)] = center(sx)
        # halves of glued sides meet with reversed orientation
        new_alpha[plus(x)] = minus(alpha[x])
        new_alpha[minus(x)] = plus(alpha[x])
        new_alpha[inner(x)] = center(x)
        new_alpha[center(x)] = inner(x)
    refined = CombinatorialMap(tuple(new_sigma), tuple(new_alpha))
    return Triangulation(refined, t.min_degree)


def original_vertex_degrees_after_refine(t: Triangulation) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Degrees of original and of inserted vertices in ``hex_refine(t)``.

    An original vertex (boundary cycle of the dual containing dart ``x``)
    corresponds to the refined cycle through ``minus(x)``, since
    ``phi'(minus(x)) = minus(phi(x))``.
    """
    r = hex_refine(t)
    face_of = r.dual.face_of
    degs = r.dual.face_degrees
    original_faces = [face_of[4 * f[0] + 1] for f in t.dual.faces]
    inserted = sorted(set(range(r.dual.num_faces)) - set(original_faces))
    return tuple(degs[i] for i in original_faces), tuple(degs[i] for i in inserted)


def dehn_sommerville_ok(t: Triangulation) -> bool:
    n0, n1, n2 = t.f_vector
    return n0 - n1 + n2 == t.euler_characteristic and 2 * n1 == 3 * n2 and sum(t.q.q) == 3 * n2


def check_q_sequence(q: Sequence[int], n2: int, min_degree: int) -> bool:
    return sum(q) == 3 * n2 and all(k >= min_degree for k in q)

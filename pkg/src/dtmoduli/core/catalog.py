"""Small named maps used in docs, tests and the CLI."""

from __future__ import annotations

from .maps import CombinatorialMap


def trivalent_sigma(n_vertices: int) -> tuple[int, ...]:
    """Standard rotation ``3i+j -> 3i+(j+1) mod 3``."""
    return tuple(3 * (x // 3) + (x % 3 + 1) % 3 for x in range(3 * n_vertices))


def theta() -> CombinatorialMap:
    """Planar theta graph: two trivalent vertices joined by three edges."""
    return CombinatorialMap(trivalent_sigma(2), (3, 5, 4, 0, 2, 1))


def tetrahedron_dual() -> CombinatorialMap:
    """K4 embedded in the sphere; dual to the tetrahedron."""
    return CombinatorialMap(trivalent_sigma(4), (3, 6, 9, 0, 11, 7, 1, 5, 10, 2, 8, 4))


def sphere_loop() -> CombinatorialMap:
    """One vertex, one edge, rotation exchanging the two darts."""
    return CombinatorialMap((1, 0), (1, 0))


def torus_bouquet() -> CombinatorialMap:
    """One vertex with two interleaved loops (genus 1)."""
    return CombinatorialMap((1, 2, 3, 0), (2, 3, 0, 1))

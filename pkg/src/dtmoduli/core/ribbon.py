"""Metric ribbon graphs: edge refinement, automorphisms, Whitehead moves, Chern forms."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .maps import (
    CombinatorialMap,
    MalformedMapError,
    automorphisms,
    find_isomorphism,
    preserves_faces,
)
from .triangulation import Triangulation

EQUILATERAL_DUAL_EDGE = math.sqrt(3) / 3


class WhiteheadError(ValueError):
    pass


@dataclass(frozen=True)
class MetricRibbonGraph:
    """A ribbon graph with a positive length on every edge.

    Edge ``i`` is the ``i``-th alpha-orbit ordered by least dart (see
    :attr:`CombinatorialMap.edges`).  Vertices are trivalent for graphs dual
    to triangulations; a collapsed graph may carry higher-degree vertices.
    """

    map: CombinatorialMap
    lengths: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "lengths", tuple(float(x) for x in self.lengths))
        if len(self.lengths) != self.map.num_edges:
            raise ValueError(f"expected {self.map.num_edges} edge lengths, got {len(self.lengths)}")
        if any(not x > 0 for x in self.lengths):
            raise ValueError("edge lengths must be positive")

    @classmethod
    def equilateral(cls, t: Triangulation, a: float = 1.0) -> "MetricRibbonGraph":
        """Dual polytope of an equilateral triangulation with side ``a``."""
        return cls(t.dual, (EQUILATERAL_DUAL_EDGE * a,) * t.dual.num_edges)

    @cached_property
    def boundary_cycles(self) -> list[tuple[int, ...]]:
        """Edge indices traversed by each boundary cycle, in cyclic order."""
        edge_of = self.map.edge_of
        return [tuple(edge_of[x] for x in f) for f in self.map.faces]

    @cached_property
    def perimeters(self) -> tuple[float, ...]:
        return tuple(math.fsum(self.lengths[e] for e in cyc) for cyc in self.boundary_cycles)

    def boundary_lengths(self, k: int) -> tuple[float, ...]:
        return tuple(self.lengths[e] for e in self.boundary_cycles[k])


def edge_refinement(g: CombinatorialMap) -> CombinatorialMap:
    """Insert a bivalent vertex at the midpoint of every edge.

    Dart ``x`` keeps its label and is paired with the new dart ``n + x`` at
    the midpoint; the midpoint vertex rotates ``n + x -> n + alpha(x)``.
    """
    n = g.dart_count
    sigma = list(g.sigma) + [n + g.alpha[x] for x in range(n)]
    alpha = [n + x for x in range(n)] + list(range(n))
    return CombinatorialMap(tuple(sigma), tuple(alpha), connected=g.connected)


def automorphism_orders(g: CombinatorialMap, labeled_boundaries: bool = True) -> tuple[int, int] | int:
    """``(|Aut|, |Aut_boundary|)`` computed on the edge refinement of ``g``.

    With ``labeled_boundaries=False`` only ``|Aut|`` is returned.
    """
    if not g.is_trivalent():
        raise MalformedMapError("automorphism_orders expects a trivalent map")
    ref = edge_refinement(g)
    n = g.dart_count
    auts = automorphisms(ref)
    # degree separates original vertices from midpoints, so originals map to originals
    restricted = [a[:n] for a in auts]
    assert all(max(r) < n for r in restricted)
    if not labeled_boundaries:
        return len(auts)
    return len(auts), sum(1 for r in restricted if preserves_faces(g, r))


# --- Whitehead moves --------------------------------------------------------

def _compact(g: MetricRibbonGraph, sigma: dict[int, int], alpha: dict[int, int], lengths_by_dart: dict[int, float]):
    keep = sorted(sigma)
    new = {x: i for i, x in enumerate(keep)}
    m = CombinatorialMap(
        tuple(new[sigma[x]] for x in keep),
        tuple(new[alpha[x]] for x in keep),
    )
    lengths = tuple(lengths_by_dart[keep[a]] for a, _ in m.edges)
    return MetricRibbonGraph(m, lengths), new


def whitehead_collapse(g: MetricRibbonGraph, edge: int) -> MetricRibbonGraph:
    """Contract a non-loop edge, merging its endpoints in cyclic order."""
    return collapse_with_pairing(g, edge)[0]


def collapse_with_pairing(g: MetricRibbonGraph, edge: int) -> tuple[MetricRibbonGraph, int]:
    """Collapse ``edge``; also return the pairing dart that undoes it via expand."""
    m = g.map
    a, b = m.edges[edge]
    if m.vertex_of[a] == m.vertex_of[b]:
        raise WhiteheadError(f"edge {edge} is a loop and cannot be collapsed")
    sig = m.sigma

    def rest(x: int) -> list[int]:
        out, y = [], sig[x]
        while y != x:
            out.append(y)
            y = sig[y]
        return out

    merged = rest(a) + rest(b)
    sigma = {x: sig[x] for x in range(m.dart_count) if x not in (a, b)}
    for i, x in enumerate(merged):
        sigma[x] = merged[(i + 1) % len(merged)]
    alpha = {x: m.alpha[x] for x in sigma}
    by_dart = {x: g.lengths[m.edge_of[x]] for x in sigma}
    out, new = _compact(g, sigma, alpha, by_dart)
    pairing = new[sig[a]] if sig[a] != a else new[merged[0]]
    return out, pairing


def whitehead_expand(g: MetricRibbonGraph, vertex_dart: int, pairing: int, length: float) -> MetricRibbonGraph:
    """Split the degree-4 vertex containing ``vertex_dart`` into two trivalent vertices.

    ``pairing`` is a dart ``s`` of that vertex: ``s`` and ``sigma(s)`` go to one
    new vertex, the other two darts to the other, joined by a new edge of the
    given ``length``.
    """
    m = g.map
    v = m.vertex_of[vertex_dart]
    cyc = m.vertices[v]
    if len(cyc) != 4:
        raise WhiteheadError(f"vertex has degree {len(cyc)}, expand needs degree 4")
    if pairing not in cyc:
        raise WhiteheadError(f"pairing dart {pairing} is not at the expanded vertex")
    if not length > 0:
        raise WhiteheadError("new edge length must be positive")
    n = m.dart_count
    x, y = n, n + 1
    s = pairing
    s1 = m.sigma[s]
    s2 = m.sigma[s1]
    s3 = m.sigma[s2]
    sigma = dict(enumerate(m.sigma))
    sigma.update({s: s1, s1: x, x: s, s2: s3, s3: y, y: s2})
    alpha = dict(enumerate(m.alpha))
    alpha.update({x: y, y: x})
    by_dart = {d: g.lengths[m.edge_of[d]] for d in range(n)}
    by_dart[x] = by_dart[y] = float(length)
    return _compact(g, sigma, alpha, by_dart)[0]


def metric_isomorphic(g1: MetricRibbonGraph, g2: MetricRibbonGraph) -> bool:
    return find_isomorphism(g1.map, g2.map, (g1.lengths, g2.lengths)) is not None


# --- combinatorial Chern form -----------------------------------------------

def chern_form_value(
    g: MetricRibbonGraph,
    k: int,
    u: Sequence[float],
    v: Sequence[float],
    start: int = 0,
) -> float:
    """Evaluate ``sum_{a<b<=q-1} d(L_a/L) ^ d(L_b/L)`` of boundary ``k`` on ``(u, v)``.

    ``u`` and ``v`` are tangent vectors in edge-length space (one entry per
    edge).  ``start`` rotates the cyclic ordering of the boundary edges, so the
    last edge in the chosen ordering is the one left out of the sum.
    """
    cyc = g.boundary_cycles[k]
    q = len(cyc)
    if q < 2:
        raise ValueError("boundary cycle needs at least two edges")
    if len(u) != g.map.num_edges or len(v) != g.map.num_edges:
        raise ValueError("perturbations must have one entry per edge")
    order = cyc[start % q:] + cyc[: start % q]
    lengths = [g.lengths[e] for e in order]
    total = math.fsum(lengths)
    du_total = math.fsum(u[e] for e in order)
    dv_total = math.fsum(v[e] for e in order)
    dx_u = [(u[e] * total - l * du_total) / total**2 for e, l in zip(order, lengths)]
    dx_v = [(v[e] * total - l * dv_total) / total**2 for e, l in zip(order, lengths)]
    acc = 0.0
    for a in range(q - 1):
        for b in range(a + 1, q - 1):
            acc += dx_u[a] * dx_v[b] - dx_u[b] * dx_v[a]
    return acc

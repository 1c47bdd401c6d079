"""Charts, transition maps and the quadratic-differential decoration of a metric ribbon graph.

Branch conventions: ``z**(2/3)`` and ``(t - t_k)**((2pi - eps)/2pi)`` use the
principal branch (cut along the negative real axis).  An edge strip is
``0 < Re z < L`` and the upper side ``Im z >= 0`` belongs to the boundary
cycle that traverses the edge, which maps it into the closed unit disk of
that cell.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

from .core.geometry import ConeChart
from .core.ribbon import MetricRibbonGraph
from .core.triangulation import Triangulation

CHART_TOL = 1e-12


class ChartDomainError(ValueError):
    pass


class InconsistencyError(RuntimeError):
    """A relation that holds for every valid triangulation failed."""


# --- local forms ------------------------------------------------------------

@dataclass(frozen=True)
class QuadDifferentialLocal:
    """Canonical local expression of the Jenkins-Strebel differential."""

    kind: str
    perimeter: float | None = None

    def coefficient(self, x: complex) -> complex:
        """``f`` in ``psi = f(x) dx (x) dx`` for the chart's coordinate ``x``."""
        if self.kind == "edge":
            return 1.0
        if self.kind == "vertex":
            return 9 / 4 * x
        if self.kind == "cell":
            if x == 0:
                raise ChartDomainError("double pole at the puncture")
            return -(self.perimeter**2) / (4 * math.pi**2 * x * x)
        raise ValueError(f"unknown chart kind {self.kind!r}")


# --- transition maps --------------------------------------------------------

def glue_vertex(z: complex, branch: int) -> complex:
    """Edge-strip coordinate to the vertex coordinate ``w`` of a trivalent vertex."""
    if branch not in (1, 2, 3):
        raise ValueError("branch must be 1, 2 or 3")
    return cmath.exp(2j * math.pi * (branch - 1) / 3) * complex(z) ** (2 / 3)


def glue_cell(z: complex, nu: int, lengths: Sequence[float]) -> complex:
    """Coordinate of the ``nu``-th boundary strip (1-based) to the cell coordinate ``zeta``."""
    q = len(lengths)
    if not 1 <= nu <= q:
        raise ValueError(f"edge position {nu} outside 1..{q}")
    perimeter = math.fsum(lengths)
    offset = math.fsum(lengths[: nu - 1])
    return cmath.exp(2j * math.pi / perimeter * (offset + z))


def perimeter_integral(g: MetricRibbonGraph, k: int) -> float:
    """Period of ``sqrt(psi)`` around cell ``k``: the sum of its boundary edge lengths."""
    return math.fsum(g.boundary_lengths(k))


def cylinder_metrics(perimeter: float, rho: float) -> tuple[float, float]:
    """Length of a curve around the puncture and area of ``rho < |zeta| < 1``."""
    if not 0 < rho < 1:
        raise ChartDomainError("rho must lie in (0, 1)")
    return perimeter, perimeter**2 / (2 * math.pi) * math.log(1 / rho)


def curve_length_numeric(perimeter: float, radius: float, samples: int = 2048) -> float:
    """``|sqrt(psi)|`` integrated around ``|zeta| = radius`` by the trapezoid rule."""
    total = 0.0
    for i in range(samples):
        th = 2 * math.pi * i / samples
        zeta = radius * cmath.exp(1j * th)
        dz = abs(1j * zeta) * 2 * math.pi / samples
        total += math.sqrt(abs(QuadDifferentialLocal("cell", perimeter).coefficient(zeta))) * dz
    return total


def pole_zero_balance(t: Triangulation) -> bool:
    """Check ``N2 - 2 N0 = 4g - 4`` two ways (counting and Euler plus trivalency)."""
    n0, n1, n2 = t.f_vector
    direct = n2 - 2 * n0
    # simple zeros at trivalent vertices, double poles at cells
    zeros = sum(len(v) - 2 for v in t.dual.vertices)
    poles = 2 * t.dual.num_faces
    if direct != 4 * t.genus - 4 or zeros - poles != 4 * t.genus - 4:
        raise InconsistencyError(f"pole/zero balance fails for f-vector {(n0, n1, n2)} genus {t.genus}")
    return True


def dof_count(t: Triangulation) -> tuple[int, int]:
    """Number of edges ``N1 = 3 N0 + 6g - 6`` and the fiber dimension ``2 N0 + 6g - 6``."""
    n0, n1, _ = t.f_vector
    g = t.genus
    if n1 != 3 * n0 + 6 * g - 6:
        raise InconsistencyError(f"N1 = {n1} differs from 3N0 + 6g - 6 = {3 * n0 + 6 * g - 6}")
    return n1, 2 * n0 + 6 * g - 6


# --- cone charts and the hyperbolic cusp ------------------------------------

def cone_chart_maps(chart: ConeChart, t: complex) -> tuple[float, complex]:
    """Conformal density of the cone metric at ``t`` and the cusp coordinate ``zeta``.

    ``zeta`` is the unnormalized map; any rescaling of the cell coordinate is
    an allowed normalization.
    """
    dt = complex(t) - chart.t_center
    if dt == 0:
        raise ChartDomainError("the cone tip is a singular point of the chart")
    eps = chart.epsilon
    density = math.exp(2 * chart.u(t)) * abs(dt) ** (-2 * eps / (2 * math.pi))
    expo = (2 * math.pi - eps) / (2 * math.pi)
    zeta = cmath.exp(2 * math.pi / chart.perimeter * (2 * math.pi / (2 * math.pi - eps)) * dt**expo)
    return density, zeta


def cone_circumference(chart: ConeChart, radius: float, samples: int = 4096) -> float:
    """Metric length of ``|t - t_k| = radius`` by the trapezoid rule."""
    total = 0.0
    for i in range(samples):
        th = 2 * math.pi * i / samples
        t = chart.t_center + radius * cmath.exp(1j * th)
        density, _ = cone_chart_maps(chart, t)
        total += math.sqrt(density) * radius * 2 * math.pi / samples
    return total


def hyperbolic_disk_density(zeta: complex) -> float:
    """``1 / (|zeta| |ln|zeta||)``: complete constant-curvature metric on the punctured disk."""
    r = abs(zeta)
    if not 0 < r < 1:
        raise ChartDomainError("|zeta| must lie in (0, 1)")
    return 1.0 / (r * abs(math.log(r)))


def gaussian_curvature_fd(zeta: complex, h: float = 1e-4) -> float:
    """``-Laplacian(ln lambda) / lambda^2`` by second-order central differences."""
    f = lambda w: math.log(hyperbolic_disk_density(w))
    lap = (f(zeta + h) + f(zeta - h) + f(zeta + 1j * h) + f(zeta - 1j * h) - 4 * f(zeta)) / h**2
    lam = hyperbolic_disk_density(zeta)
    return -lap / lam**2


# --- atlas ------------------------------------------------------------------

@dataclass(frozen=True)
class ChartAtlas:
    graph: MetricRibbonGraph
    vertex_charts: tuple[dict, ...]
    edge_charts: tuple[dict, ...]
    cell_charts: tuple[dict, ...]

    def to_json(self) -> dict:
        return {
            "vertex_charts": list(self.vertex_charts),
            "edge_charts": list(self.edge_charts),
            "cell_charts": list(self.cell_charts),
        }


def build_atlas(g: MetricRibbonGraph) -> ChartAtlas:
    """One chart per vertex (disk of radius a third of the shortest incident edge),
    per edge (strip of the edge's width) and per cell (punctured unit disk)."""
    m = g.map
    vertex_charts = []
    for i, cyc in enumerate(m.vertices):
        incident = [m.edge_of[x] for x in cyc]
        vertex_charts.append(
            {
                "vertex": i,
                "darts": list(cyc),
                "edges": incident,
                "radius": min(g.lengths[e] for e in incident) / 3,
                "form": "9/4 w dw^2",
            }
        )
    edge_charts = [
        {"edge": i, "darts": list(pair), "width": g.lengths[i], "form": "dz^2"} for i, pair in enumerate(m.edges)
    ]
    cell_charts = [
        {
            "cell": k,
            "edges": list(cyc),
            "perimeter": g.perimeters[k],
            "form": f"-{g.perimeters[k] ** 2!r}/(4 pi^2 zeta^2) dzeta^2",
        }
        for k, cyc in enumerate(g.boundary_cycles)
    ]
    return ChartAtlas(g, tuple(vertex_charts), tuple(edge_charts), tuple(cell_charts))


def atlas_checks(g: MetricRibbonGraph, samples: int = 64) -> dict[str, bool]:
    """Consistency report for the transition maps of ``g``."""
    atlas = build_atlas(g)
    checks = {}
    checks["strip_widths"] = all(
        abs(c["width"] - g.lengths[c["edge"]]) == 0 for c in atlas.edge_charts
    )
    mono = True
    adjacent = True
    lengths_ok = True
    for k in range(len(g.boundary_cycles)):
        ls = g.boundary_lengths(k)
        q = len(ls)
        per = math.fsum(ls)
        for nu in range(1, q + 1):
            if abs(glue_cell(ls[nu - 1], nu, ls) - glue_cell(0, nu % q + 1, ls)) > CHART_TOL:
                adjacent = False
        mono &= abs(glue_cell(per, 1, ls) - glue_cell(0, 1, ls)) <= CHART_TOL
        lengths_ok &= abs(cylinder_metrics(per, 0.5)[0] - perimeter_integral(g, k)) <= CHART_TOL * per
    checks["cell_monodromy"] = mono
    checks["adjacent_strips"] = adjacent
    checks["curve_length_is_perimeter"] = lengths_ok
    checks["vertex_wedges_tile"] = wedges_tile(samples)
    return checks


def wedges_tile(samples: int = 64) -> bool:
    """The three upper-half-plane strip images meet only along their boundary rays."""
    eps = 1e-9
    arcs = []
    for branch in (1, 2, 3):
        args = []
        for i in range(samples + 1):
            th = eps + (math.pi - 2 * eps) * i / samples
            w = glue_vertex(0.5 * cmath.exp(1j * th), branch)
            args.append(cmath.phase(w) % (2 * math.pi))
        arcs.append((min(args), max(args)))
    arcs.sort()
    width = 2 * math.pi / 3
    return all(abs(hi - lo - width) < 1e-6 for lo, hi in arcs) and all(
        arcs[i][1] <= arcs[i + 1][0] + 1e-6 for i in range(2)
    )

"""Isomorph-free generation and weighted counting of dynamical triangulations.

Triangulations are generated through their dual trivalent maps.  Darts of
vertex ``i`` are ``3i, 3i+1, 3i+2`` with the standard rotation, and a map is
built one edge at a time in the order a vertex-block traversal from dart 0
would discover it: the lowest unpaired dart is joined either to a free dart
of an already opened vertex or to the first dart of a new vertex.  Every
connected rooted map appears exactly once this way.  A completed map is kept
only if its alpha array is the least traversal code over all roots, so each
isomorphism class is emitted once and the roots attaining the minimum are
exactly its automorphisms.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .core.maps import CombinatorialMap
from .core.triangulation import MIN_DEGREE_CHOICES, DEFAULT_MIN_DEGREE

log = logging.getLogger(__name__)


class TopologicallyUnstableError(ValueError):
    pass


@dataclass(frozen=True)
class IsoClassRecord:
    canonical_key: bytes
    aut_order: int
    aut_boundary_order: int
    f_vector: tuple[int, int, int]
    curvature_multiset: tuple[int, ...]
    genus: int
    map: CombinatorialMap = field(compare=False, repr=False)

    @property
    def labeled_orbit_size(self) -> int:
        """Number of labelled dart structures (fixed standard rotation) in this class."""
        n2 = self.f_vector[2]
        return 3**n2 * math.factorial(n2) // self.aut_order


@dataclass(frozen=True)
class WeightedCount:
    value: Fraction
    diagnostic: str | None = None

    def labeled(self, n0: int) -> Fraction:
        """Undo the unlabelled normalisation by multiplying with ``N0!``."""
        return self.value * math.factorial(n0)


def check_stability(g: int, n0: int) -> int:
    """Return ``N2 = 2 N0 + 4g - 4`` after checking ``2 - 2g - N0 < 0``."""
    if g < 0 or n0 < 1:
        raise ValueError("genus must be >= 0 and N0 >= 1")
    if 2 - 2 * g - n0 >= 0:
        raise TopologicallyUnstableError(f"topologically unstable: 2 - 2g - N0 = {2 - 2 * g - n0} >= 0")
    return 2 * n0 + 4 * g - 4


def _sig(x: int) -> int:
    return x - x % 3 + (x % 3 + 1) % 3


# --- rooted generation ------------------------------------------------------

@dataclass
class _State:
    alpha: list[int]
    opened: int


def _next_free(st: _State) -> int:
    for d in range(3 * st.opened):
        if st.alpha[d] < 0:
            return d
    return -1


def _children(st: _State, n2: int) -> list[_State]:
    d = _next_free(st)
    out = []
    top = 3 * st.opened
    free = sum(1 for x in range(top) if st.alpha[x] < 0)
    for e in range(d + 1, top):
        if st.alpha[e] < 0 and (free > 2 or st.opened == n2):
            a = list(st.alpha)
            a[d], a[e] = e, d
            out.append(_State(a, st.opened))
    if st.opened < n2:
        a = list(st.alpha)
        a[d], a[top] = top, d
        out.append(_State(a, st.opened + 1))
    return out


def _complete(st: _State, n2: int) -> Iterator[list[int]]:
    alpha = st.alpha
    n = 3 * n2

    def rec(opened: int, free: int) -> Iterator[list[int]]:
        top = 3 * opened
        d = 0
        while d < top and alpha[d] >= 0:
            d += 1
        if d == top:
            if opened == n2:
                yield list(alpha)
            return
        for e in range(d + 1, top):
            if alpha[e] < 0 and (free > 2 or opened == n2):
                alpha[d], alpha[e] = e, d
                yield from rec(opened, free - 2)
                alpha[d] = alpha[e] = -1
        if opened < n2:
            alpha[d], alpha[top] = top, d
            yield from rec(opened + 1, free + 1)
            alpha[d] = alpha[top] = -1

    free = sum(1 for x in range(3 * st.opened) if alpha[x] < 0)
    if n == 0:
        return
    yield from rec(st.opened, free)


def _frontier(n2: int, target: int) -> list[_State]:
    """Split the generation tree into ordered disjoint subtrees."""
    root = _State([-1] * (3 * n2), 1)
    level = [root]
    while len(level) < target:
        nxt = []
        expanded = False
        for st in level:
            if _next_free(st) < 0:
                nxt.append(st)
                continue
            kids = _children(st, n2)
            expanded = True
            nxt.extend(kids)
        level = nxt
        if not expanded:
            break
    return level


def _faces(alpha: Sequence[int]) -> list[list[int]]:
    n = len(alpha)
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        cyc = []
        x = s
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = _sig(alpha[x])
        out.append(cyc)
    return out


def _compare_root(alpha: Sequence[int], root: int) -> tuple[int, list[int] | None]:
    """Compare the traversal code from ``root`` with ``alpha`` (the code from 0).

    Returns ``(-1|0|1, labels)``; labels are only returned on equality.
    """
    n = len(alpha)
    labels = [-1] * n
    order = []

    def open_vertex(y: int) -> None:
        for z in (y, _sig(y), _sig(_sig(y))):
            labels[z] = len(order)
            order.append(z)

    open_vertex(root)
    for i in range(n):
        y = alpha[order[i]]
        if labels[y] < 0:
            open_vertex(y)
        c = labels[y]
        if c != alpha[i]:
            return (-1 if c < alpha[i] else 1), None
    return 0, labels


def _canonical_auts(alpha: Sequence[int]) -> list[list[int]] | None:
    """Automorphisms as relabelings if ``alpha`` is canonical, else ``None``."""
    auts = []
    for root in range(len(alpha)):
        if root == 0:
            auts.append(list(range(len(alpha))))
            continue
        cmp, labels = _compare_root(alpha, root)
        if cmp < 0:
            return None
        if cmp == 0:
            auts.append(labels)
    return auts


def _key(alpha: Sequence[int]) -> bytes:
    n2 = len(alpha) // 3
    return ("-".join(["3"] * n2) + ":" + "-".join(map(str, alpha))).encode()


def _subtree_records(args) -> tuple[list[tuple], int]:
    st, n2, g, n0, min_degree = args
    records = []
    rooted = 0
    for alpha in _complete(st, n2):
        faces = _faces(alpha)
        if len(faces) != n0:
            continue
        if min(len(f) for f in faces) < min_degree:
            continue
        rooted += 1
        auts = _canonical_auts(alpha)
        if auts is None:
            continue
        face_of = {}
        for i, f in enumerate(faces):
            for x in f:
                face_of[x] = i
        aut_b = sum(1 for lab in auts if all(face_of[lab[f[0]]] == i for i, f in enumerate(faces)))
        records.append((tuple(alpha), len(auts), aut_b, tuple(sorted(len(f) for f in faces))))
    return records, rooted


@dataclass
class EnumerationResult:
    records: list[IsoClassRecord]
    rooted_count: int

    @property
    def weighted(self) -> Fraction:
        return sum((Fraction(1, r.aut_boundary_order) for r in self.records), Fraction(0))


def _run(g: int, n0: int, min_degree: int, workers: int = 1) -> EnumerationResult:
    if min_degree not in MIN_DEGREE_CHOICES:
        raise ValueError(f"min_degree must be one of {MIN_DEGREE_CHOICES}")
    n2 = check_stability(g, n0)
    n1 = 3 * n2 // 2
    if workers > 1:
        states = _frontier(n2, 8 * workers)
    else:
        states = [_State([-1] * (3 * n2), 1)]
    jobs = [(st, n2, g, n0, min_degree) for st in states]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_subtree_records, jobs))
    else:
        parts = [_subtree_records(j) for j in jobs]
    records = []
    rooted = 0
    from .core.catalog import trivalent_sigma

    sigma = trivalent_sigma(n2)
    for recs, r in parts:
        rooted += r
        for alpha, aut, aut_b, qs in recs:
            records.append(
                IsoClassRecord(
                    canonical_key=_key(alpha),
                    aut_order=aut,
                    aut_boundary_order=aut_b,
                    f_vector=(n0, n1, n2),
                    curvature_multiset=qs,
                    genus=g,
                    map=CombinatorialMap(sigma, alpha),
                )
            )
    return EnumerationResult(records, rooted)


@lru_cache(maxsize=64)
def _cached(g: int, n0: int, min_degree: int) -> EnumerationResult:
    return _run(g, n0, min_degree)


def enumerate_classes(g: int, n0: int, min_degree: int = DEFAULT_MIN_DEGREE, workers: int = 1) -> EnumerationResult:
    """All classes plus the number of rooted maps that passed the filters."""
    if workers > 1:
        return _run(g, n0, min_degree, workers)
    return _cached(g, n0, min_degree)


def enumerate_dt(g: int, n0: int, min_degree: int = DEFAULT_MIN_DEGREE, workers: int = 1) -> Iterator[IsoClassRecord]:
    """One record per isomorphism class of genus-``g`` triangulations with ``N0`` vertices.

    Only orientation-preserving isomorphisms are quotiented out, so chiral
    mirror images are distinct classes.
    """
    yield from enumerate_classes(g, n0, min_degree, workers).records


def card_dt(g: int, n0: int, min_degree: int = DEFAULT_MIN_DEGREE, workers: int = 1) -> WeightedCount:
    """``sum 1/|Aut_boundary|`` over unlabelled classes."""
    return WeightedCount(enumerate_classes(g, n0, min_degree, workers).weighted)


def card_dt_given_q(g: int, q_multiset: Sequence[int], workers: int = 1) -> WeightedCount:
    """Weighted count restricted to classes whose vertex degrees form ``q_multiset``."""
    qs = tuple(sorted(q_multiset))
    n0 = len(qs)
    n2 = check_stability(g, n0)
    if sum(qs) != 3 * n2:
        msg = f"sum(q) = {sum(qs)} but 3*N2 = {3 * n2}; no triangulation has this curvature assignment"
        log.warning(msg)
        return WeightedCount(Fraction(0), msg)
    if qs[0] < 1:
        return WeightedCount(Fraction(0), "curvature assignments must be positive")
    res = enumerate_classes(g, n0, min(qs[0], 3), workers)
    return WeightedCount(
        sum((Fraction(1, r.aut_boundary_order) for r in res.records if r.curvature_multiset == qs), Fraction(0))
    )


def curvature_multisets(g: int, n0: int, min_degree: int = DEFAULT_MIN_DEGREE) -> Counter:
    """Number of classes per curvature multiset."""
    return Counter(r.curvature_multiset for r in enumerate_dt(g, n0, min_degree))


def count_partitions(total: int, parts: int, minimum: int = 1) -> int:
    """Partitions of ``total`` into exactly ``parts`` parts, each ``>= minimum``."""
    shifted = total - parts * (minimum - 1)
    if parts == 0:
        return 1 if total == 0 else 0
    if shifted < parts:
        return 0
    # p[n][k]: partitions of n into exactly k positive parts
    p = [[0] * (parts + 1) for _ in range(shifted + 1)]
    p[0][0] = 1
    for n in range(1, shifted + 1):
        for k in range(1, min(n, parts) + 1):
            p[n][k] = p[n - 1][k - 1] + p[n - k][k]
    return p[shifted][parts]


def card_q_assignments(g: int, n0: int, min_degree: int = DEFAULT_MIN_DEGREE) -> int:
    n2 = check_stability(g, n0)
    return count_partitions(3 * n2, n0, min_degree)


@dataclass(frozen=True)
class FactorizationRow:
    n0: int
    card_dt: Fraction
    card_q: int
    wp_volume: "PiScaledRational"
    ratio: float
    partition_ok: bool


def factorization_report(g: int, n0_values: Sequence[int], min_degree: int = DEFAULT_MIN_DEGREE) -> list[FactorizationRow]:
    """Exact counts next to the volume; the asymptotic ratio is reported, not asserted."""
    from .moduli.volumes import PiScaledRational, wp_volume  # noqa: F401

    rows = []
    for n0 in n0_values:
        res = enumerate_classes(g, n0, min_degree)
        total = res.weighted
        by_q = Counter()
        for r in res.records:
            by_q[r.curvature_multiset] += Fraction(1, r.aut_boundary_order)
        resum = sum((card_dt_given_q(g, q).value for q in by_q), Fraction(0))
        cq = card_q_assignments(g, n0, min_degree)
        vol = wp_volume(g, n0)
        denom = float(vol) * cq
        ratio = float(total) / denom if denom else math.inf
        rows.append(FactorizationRow(n0, total, cq, vol, ratio, resum == total))
    return rows

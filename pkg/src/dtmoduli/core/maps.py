"""Combinatorial maps encoded by a vertex rotation and an edge involution on darts.

Darts are the integers ``0 .. n-1``.  ``sigma`` rotates darts counterclockwise
around their vertex, ``alpha`` pairs the two darts of an edge.  Boundary (face)
cycles are the orbits of ``phi = sigma o alpha``, i.e. ``phi[x] = sigma[alpha[x]]``.
This convention is used everywhere in the package.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence


class MalformedMapError(ValueError):
    """Raised when permutation data does not describe a valid map."""


Perm = tuple[int, ...]


def orbits(perm: Sequence[int]) -> list[tuple[int, ...]]:
    """Cycles of ``perm``, each starting at its least element, sorted by that element."""
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = perm[x]
        cycles.append(tuple(cyc))
    return cycles


def compose(p: Sequence[int], q: Sequence[int]) -> Perm:
    """Return ``p o q`` (apply ``q`` first)."""
    return tuple(p[q[x]] for x in range(len(q)))


def inverse(p: Sequence[int]) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def perm_from_cycles(cycles: Iterable[Sequence[int]], n: int) -> Perm:
    perm = list(range(n))
    for cyc in cycles:
        for i, x in enumerate(cyc):
            perm[x] = cyc[(i + 1) % len(cyc)]
    return tuple(perm)


@dataclass(frozen=True)
class CombinatorialMap:
    """An oriented map given by ``(sigma, alpha)``.

    Instances are validated on construction and never mutated afterwards.
    """

    sigma: Perm
    alpha: Perm
    connected: bool = field(default=True, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "sigma", tuple(self.sigma))
        object.__setattr__(self, "alpha", tuple(self.alpha))
        n = len(self.sigma)
        if len(self.alpha) != n:
            raise MalformedMapError("sigma and alpha act on different dart sets")
        if n == 0 or n % 2:
            raise MalformedMapError(f"dart count must be even and positive, got {n}")
        for name, p in (("sigma", self.sigma), ("alpha", self.alpha)):
            if sorted(p) != list(range(n)):
                raise MalformedMapError(f"{name} is not a permutation of 0..{n - 1}")
        for x, y in enumerate(self.alpha):
            if y == x or self.alpha[y] != x:
                raise MalformedMapError("alpha must be a fixed-point-free involution")
        if self.connected and not self._is_transitive():
            raise MalformedMapError("map flagged connected but <sigma, alpha> is not transitive")

    def _is_transitive(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in (self.sigma[x], self.alpha[x]):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == self.dart_count

    @property
    def dart_count(self) -> int:
        return len(self.sigma)

    @cached_property
    def phi(self) -> Perm:
        return compose(self.sigma, self.alpha)

    @cached_property
    def vertices(self) -> list[tuple[int, ...]]:
        return orbits(self.sigma)

    @cached_property
    def edges(self) -> list[tuple[int, int]]:
        """Edges as dart pairs, indexed by their least dart (this fixes edge numbering)."""
        return [(c[0], c[1]) for c in orbits(self.alpha)]

    @cached_property
    def faces(self) -> list[tuple[int, ...]]:
        return orbits(self.phi)

    @cached_property
    def edge_of(self) -> tuple[int, ...]:
        idx = [0] * self.dart_count
        for i, (a, b) in enumerate(self.edges):
            idx[a] = idx[b] = i
        return tuple(idx)

    @cached_property
    def vertex_of(self) -> tuple[int, ...]:
        return _orbit_index(self.vertices, self.dart_count)

    @cached_property
    def face_of(self) -> tuple[int, ...]:
        return _orbit_index(self.faces, self.dart_count)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return self.dart_count // 2

    @property
    def num_faces(self) -> int:
        return len(self.faces)

    @property
    def euler_characteristic(self) -> int:
        return self.num_vertices - self.num_edges + self.num_faces

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(v) for v in self.vertices)

    @property
    def face_degrees(self) -> tuple[int, ...]:
        return tuple(len(f) for f in self.faces)

    def is_trivalent(self) -> bool:
        return all(d == 3 for d in self.degrees)

    def dual(self) -> "CombinatorialMap":
        """The dual map ``(sigma o alpha, alpha)``; applying it twice gives back ``self``."""
        return CombinatorialMap(self.phi, self.alpha, connected=self.connected)

    def relabel(self, perm: Sequence[int]) -> "CombinatorialMap":
        """Conjugate by ``perm`` (dart ``x`` becomes ``perm[x]``)."""
        inv = inverse(perm)
        sigma = tuple(perm[self.sigma[inv[y]]] for y in range(self.dart_count))
        alpha = tuple(perm[self.alpha[inv[y]]] for y in range(self.dart_count))
        return CombinatorialMap(sigma, alpha, connected=self.connected)

    @cached_property
    def canonical_code(self) -> tuple[tuple[int, ...], Perm]:
        return canonical_form(self)[0]

    @property
    def canonical_key(self) -> bytes:
        degs, alpha = self.canonical_code
        return ("-".join(map(str, degs)) + ":" + "-".join(map(str, alpha))).encode()

    def is_isomorphic(self, other: "CombinatorialMap") -> bool:
        return self.dart_count == other.dart_count and self.canonical_code == other.canonical_code


def _orbit_index(cycles: Sequence[Sequence[int]], n: int) -> tuple[int, ...]:
    idx = [0] * n
    for i, cyc in enumerate(cycles):
        for x in cyc:
            idx[x] = i
    return tuple(idx)


def genus(m: CombinatorialMap) -> int:
    """Genus from ``V - E + F = 2 - 2g``."""
    if not m.connected:
        raise MalformedMapError("genus is only defined here for connected maps")
    two_g = 2 - m.euler_characteristic
    if two_g < 0 or two_g % 2:
        raise MalformedMapError(f"Euler characteristic {m.euler_characteristic} gives no valid genus")
    return two_g // 2


# --- canonical form ---------------------------------------------------------

def traversal_labels(m: CombinatorialMap, root: int) -> list[int]:
    """Relabel darts by a vertex-block breadth-first traversal from ``root``.

    The root vertex receives consecutive labels following sigma from the root.
    Labels are then scanned in order; the alpha-partner of each dart, if
    unlabelled, opens the next vertex block.  Returns ``labels`` with
    ``labels[dart] = new label``.
    """
    n = m.dart_count
    sigma, alpha = m.sigma, m.alpha
    labels = [-1] * n
    order = []

    def open_vertex(x: int) -> None:
        y = x
        while True:
            labels[y] = len(order)
            order.append(y)
            y = sigma[y]
            if y == x:
                break

    open_vertex(root)
    i = 0
    while i < len(order):
        y = alpha[order[i]]
        if labels[y] < 0:
            open_vertex(y)
        i += 1
    return labels


def _code(m: CombinatorialMap, labels: Sequence[int]) -> tuple[tuple[int, ...], Perm]:
    relabeled = m.relabel(labels)
    return relabeled.degrees, relabeled.alpha


def canonical_form(m: CombinatorialMap) -> tuple[tuple[tuple[int, ...], Perm], list[list[int]]]:
    """Lexicographically least traversal code over all roots.

    Returns ``(code, relabelings)``; every relabeling in the list realises the
    minimal code, and there are exactly ``|Aut(m)|`` of them for a connected map.
    """
    if not m.connected:
        raise MalformedMapError("canonical form requires a connected map")
    best = None
    witnesses: list[list[int]] = []
    for root in range(m.dart_count):
        labels = traversal_labels(m, root)
        code = _code(m, labels)
        if best is None or code < best:
            best, witnesses = code, [labels]
        elif code == best:
            witnesses.append(labels)
    assert best is not None
    return best, witnesses


def automorphisms(m: CombinatorialMap) -> list[Perm]:
    """All dart bijections commuting with sigma and alpha (connected maps only).

    An automorphism is fixed by the image of dart 0, so every candidate image
    is tried and the forced extension is checked.
    """
    n = m.dart_count
    sigma, alpha = m.sigma, m.alpha
    found = []
    for target in range(n):
        image = [-1] * n
        image[0] = target
        stack = [0]
        ok = True
        while stack and ok:
            x = stack.pop()
            for p in (sigma, alpha):
                y, fy = p[x], p[image[x]]
                if image[y] < 0:
                    image[y] = fy
                    stack.append(y)
                elif image[y] != fy:
                    ok = False
                    break
        if ok and len(set(image)) == n:
            found.append(tuple(image))
    return found


def find_isomorphism(
    m1: CombinatorialMap,
    m2: CombinatorialMap,
    edge_labels: tuple[Sequence, Sequence] | None = None,
) -> Perm | None:
    """A dart bijection carrying ``m1`` onto ``m2``, or ``None``.

    ``edge_labels``, when given, holds per-edge data for each map (e.g. lengths)
    that the bijection must preserve.
    """
    n = m1.dart_count
    if n != m2.dart_count or sorted(m1.degrees) != sorted(m2.degrees):
        return None
    for target in range(n):
        image = [-1] * n
        image[0] = target
        stack = [0]
        ok = True
        while stack and ok:
            x = stack.pop()
            for p1, p2 in ((m1.sigma, m2.sigma), (m1.alpha, m2.alpha)):
                y, fy = p1[x], p2[image[x]]
                if image[y] < 0:
                    image[y] = fy
                    stack.append(y)
                elif image[y] != fy:
                    ok = False
                    break
        if not ok or len(set(image)) != n:
            continue
        if edge_labels is not None:
            lab1, lab2 = edge_labels
            if any(lab1[m1.edge_of[x]] != lab2[m2.edge_of[image[x]]] for x in range(n)):
                continue
        return tuple(image)
    return None


def preserves_faces(m: CombinatorialMap, perm: Sequence[int]) -> bool:
    """True when ``perm`` maps every boundary cycle onto itself."""
    face_of = m.face_of
    return all(face_of[perm[f[0]]] == i for i, f in enumerate(m.faces))


# --- text exchange format ---------------------------------------------------

def format_cycles(perm: Sequence[int]) -> str:
    return "".join("(" + ",".join(map(str, c)) + ")" for c in orbits(perm))


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int) -> Perm:
    text = text.strip()
    if _CYCLE.sub("", text).strip():
        raise MalformedMapError(f"bad cycle notation: {text!r}")
    cycles = []
    for body in _CYCLE.findall(text):
        items = [int(tok) for tok in re.split(r"[,\s]+", body.strip()) if tok]
        if any(x < 0 or x >= n for x in items):
            raise MalformedMapError(f"dart out of range in cycle ({body})")
        cycles.append(items)
    flat = [x for c in cycles for x in c]
    if len(flat) != len(set(flat)):
        raise MalformedMapError("a dart appears in more than one cycle")
    return perm_from_cycles(cycles, n)


def dumps(m: CombinatorialMap, lengths: Sequence[float] | None = None) -> str:
    """Serialize to the line-based exchange format."""
    lines = [f"darts={m.dart_count}", f"sigma={format_cycles(m.sigma)}", f"alpha={format_cycles(m.alpha)}"]
    if lengths is not None:
        if len(lengths) != m.num_edges:
            raise ValueError(f"expected {m.num_edges} lengths, got {len(lengths)}")
        lines.append("lengths=" + " ".join(repr(float(x)) for x in lengths))
    return "\n".join(lines) + "\n"


def loads(text: str) -> tuple[CombinatorialMap, tuple[float, ...] | None]:
    """Parse the exchange format; returns the map and optional edge lengths."""
    fields = {}
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise MalformedMapError(f"expected key=value, got {line!r}")
        fields[key.strip()] = value.strip()
    missing = {"darts", "sigma", "alpha"} - fields.keys()
    if missing:
        raise MalformedMapError(f"missing fields: {sorted(missing)}")
    n = int(fields["darts"])
    m = CombinatorialMap(parse_cycles(fields["sigma"], n), parse_cycles(fields["alpha"], n))
    lengths = None
    if "lengths" in fields:
        lengths = tuple(float(x) for x in fields["lengths"].split())
        if len(lengths) != m.num_edges:
            raise MalformedMapError(f"expected {m.num_edges} lengths, got {len(lengths)}")
    return m, lengths

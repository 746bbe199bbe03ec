"""Distances, diameters, bridges and 2-step reachability for mixed graphs
and their orientations.

Undirected edges are traversable both ways, arcs only forward.  Directed
reachability uses bit rows (one big integer per vertex), which keeps the
2-step relation and eccentricity sweeps cheap even for a few hundred
vertices.

All functions are pure; per-source searches are independent, so results
never depend on scheduling.
"""

from __future__ import annotations

import hashlib
import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptyGraphError, OrientationMismatchError, VertexOutOfRangeError
from .graph import MixedGraph, parse_mg, serialize_mg

__all__ = [
    "Orientation",
    "DistanceReport",
    "EccentricityReport",
    "TwoStepMatrix",
    "mixed_distance",
    "mixed_diameter",
    "has_bridge",
    "directed_eccentricities",
    "two_step_matrix",
    "base_graph_digest",
    "orientation_to_mg",
    "orientation_from_mg",
]

INFINITE = math.inf


@dataclass(frozen=True, eq=False)
class Orientation:
    """A full assignment of directions to the undirected edges of ``base``.

    ``forward[i]`` refers to the i-th canonical undirected edge ``(u, v)``
    (``u < v``): True orients it ``u -> v``, False ``v -> u``.  The induced
    digraph has arc set ``base.arcs`` plus the oriented edges.
    """

    base: MixedGraph
    forward: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.forward, dtype=bool)
        if arr.shape != (len(self.base.undirected),):
            raise ValueError("one direction bit per undirected edge required")
        arr.setflags(write=False)
        object.__setattr__(self, "forward", arr)

    def directed_pair(self, i: int) -> tuple[int, int]:
        u, v = self.base.undirected[i]
        return (u, v) if self.forward[i] else (v, u)

    def iter_arcs(self) -> Iterable[tuple[int, int]]:
        """All arcs of the induced digraph (fixed arcs plus oriented edges)."""
        yield from self.base.arcs
        for i, (u, v) in enumerate(self.base.undirected):
            yield (u, v) if self.forward[i] else (v, u)

    def as_digraph(self) -> MixedGraph:
        """The induced digraph as an arcs-only `MixedGraph`."""
        return MixedGraph(self.base.n, (), tuple(sorted(self.iter_arcs())))

    def same_directions(self, other: "Orientation") -> bool:
        return self.base == other.base and bool(
            np.array_equal(self.forward, other.forward)
        )


@dataclass(frozen=True)
class DistanceReport:
    """Hop counts from ``source``; ``None`` marks unreachable vertices."""

    source: int
    dist: tuple[int | None, ...]


@dataclass(frozen=True)
class EccentricityReport:
    """Per-vertex out-eccentricities of a digraph.

    ``diameter`` is the maximum eccentricity (``math.inf`` when some pair
    is unreachable); ``strong`` is True iff every eccentricity is finite.
    """

    ecc: tuple[float, ...]
    diameter: float
    strong: bool


def _neighbors_forward(g: MixedGraph) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in g.undirected:
        adj[u].append(v)
        adj[v].append(u)
    for u, v in g.arcs:
        adj[u].append(v)
    for lst in adj:
        lst.sort()
    return adj


def mixed_distance(g: MixedGraph, source: int) -> DistanceReport:
    """Breadth-first hop counts: undirected edges both ways, arcs forward."""
    if not 0 <= source < g.n:
        raise VertexOutOfRangeError(source, g.n)
    adj = _neighbors_forward(g)
    dist: list[int | None] = [None] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u]
        for w in adj[u]:
            if dist[w] is None:
                dist[w] = du + 1
                queue.append(w)
    return DistanceReport(source, tuple(dist))


def mixed_diameter(g: MixedGraph) -> float:
    """Largest distance over ordered pairs; ``math.inf`` if any pair is
    unreachable.  The 1-vertex graph has diameter 0; the empty graph is an
    error."""
    if g.n == 0:
        raise EmptyGraphError("diameter of the empty graph is undefined")
    best = 0
    for source in range(g.n):
        for d in mixed_distance(g, source).dist:
            if d is None:
                return INFINITE
            best = max(best, d)
    return best


def _weakly_connected(n: int, edges: Iterable[tuple[int, int]]) -> bool:
    if n == 0:
        return True
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = [False] * n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    return count == n


def _mixed_connected(g: MixedGraph) -> bool:
    return all(
        d is not None for s in range(g.n) for d in mixed_distance(g, s).dist
    )


def has_bridge(
    g: MixedGraph, *, mixed_reachability: bool = False
) -> tuple[int, int] | None:
    """First undirected edge (lexicographic) whose removal disconnects the
    graph, or None.

    Connectivity defaults to the weak sense (arcs traversable both ways for
    the test), matching the usual pairing of bridges with strong
    orientability of the underlying structure.  With
    ``mixed_reachability=True``, "connected" instead means every ordered
    pair is reachable along undirected edges and forward arcs.
    """
    for edge in g.undirected:
        remaining = tuple(e for e in g.undirected if e != edge)
        if mixed_reachability:
            reduced = MixedGraph(g.n, remaining, g.arcs)
            if not _mixed_connected(reduced):
                return edge
        else:
            if not _weakly_connected(g.n, list(remaining) + list(g.arcs)):
                return edge
    return None


def _arc_rows(d: Orientation | MixedGraph) -> tuple[int, list[int], list[int]]:
    """(n, out_rows, in_rows) bit rows of the induced digraph."""
    if isinstance(d, Orientation):
        n = d.base.n
        arcs = d.iter_arcs()
    else:
        if d.undirected:
            raise ValueError("expected an orientation or an arcs-only graph")
        n = d.n
        arcs = iter(d.arcs)
    out_rows = [0] * n
    in_rows = [0] * n
    for u, v in arcs:
        out_rows[u] |= 1 << v
        in_rows[v] |= 1 << u
    return n, out_rows, in_rows


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _eccentricity(out_rows: Sequence[int], n: int, source: int) -> float:
    full = (1 << n) - 1
    reached = 1 << source
    frontier = out_rows[source] & ~reached
    ecc = 0
    while frontier:
        ecc += 1
        reached |= frontier
        if reached == full:
            return ecc
        nxt = 0
        for w in _bits(frontier):
            nxt |= out_rows[w]
        frontier = nxt & ~reached
    return ecc if reached == full else INFINITE


def directed_eccentricities(d: Orientation | MixedGraph) -> EccentricityReport:
    """Forward-BFS out-eccentricity of every vertex of the induced digraph."""
    n, out_rows, _ = _arc_rows(d)
    if n == 0:
        raise EmptyGraphError("eccentricities of the empty graph are undefined")
    ecc = tuple(_eccentricity(out_rows, n, s) for s in range(n))
    diameter = max(ecc)
    return EccentricityReport(ecc, diameter, diameter is not INFINITE)


@dataclass(frozen=True)
class TwoStepMatrix:
    """Reachability-within-two-arcs relation of a digraph.

    ``reaches(u, v)`` is True iff the arc ``u -> v`` exists or some ``w``
    has arcs ``u -> w`` and ``w -> v``.  The digraph has diameter <= 2 iff
    the relation is total off the diagonal.
    """

    n: int
    out_rows: tuple[int, ...]
    in_rows: tuple[int, ...]

    def reaches(self, u: int, v: int) -> bool:
        if u == v:
            return True
        return bool(
            (self.out_rows[u] >> v) & 1
            or self.out_rows[u] & self.in_rows[v]
        )

    @cached_property
    def total_off_diagonal(self) -> bool:
        full = (1 << self.n) - 1
        for u in range(self.n):
            row = self.out_rows[u]
            reach = row
            for w in _bits(row):
                reach |= self.out_rows[w]
            if reach | (1 << u) != full:
                return False
        return True


def two_step_matrix(d: Orientation | MixedGraph) -> TwoStepMatrix:
    """Arcs-or-two-step reachability relation, built from bit rows."""
    n, out_rows, in_rows = _arc_rows(d)
    return TwoStepMatrix(n, tuple(out_rows), tuple(in_rows))


# -- orientation files --------------------------------------------------

def base_graph_digest(g: MixedGraph) -> str:
    """SHA-256 of the canonical ``.mg`` serialization."""
    return hashlib.sha256(serialize_mg(g).encode("utf-8")).hexdigest()


def orientation_to_mg(o: Orientation) -> str:
    """Orientation file: a ``.mg`` digraph with every edge as an ``a`` line
    plus a comment naming the base graph hash."""
    lines = [
        "mgraph 1",
        f"# base-sha256 {base_graph_digest(o.base)}",
        f"n {o.base.n}",
    ]
    lines.extend(f"a {u} {v}" for u, v in sorted(o.iter_arcs()))
    return "\n".join(lines) + "\n"


def orientation_from_mg(base: MixedGraph, text: str | bytes) -> Orientation:
    """Rebuild an `Orientation` of ``base`` from an orientation file.

    The file must contain exactly the arcs of ``base`` plus one direction
    for each undirected edge; a ``# base-sha256`` comment, when present,
    must match ``base``.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    for raw in text.split("\n"):
        stripped = raw.strip()
        if stripped.startswith("#") and "base-sha256" in stripped:
            digest = stripped.split()[-1]
            if digest != base_graph_digest(base):
                raise OrientationMismatchError(
                    "orientation file names a different base graph"
                )
    dig = parse_mg(text)
    if dig.n != base.n or dig.undirected:
        raise OrientationMismatchError("orientation file is not a digraph of the base")
    arcs = dig.arc_set
    expected_fixed = base.arc_set
    if not expected_fixed <= arcs:
        raise OrientationMismatchError("orientation file is missing fixed arcs")
    forward = np.zeros(len(base.undirected), dtype=bool)
    used = set(expected_fixed)
    for i, (u, v) in enumerate(base.undirected):
        fwd = (u, v) in arcs
        bwd = (v, u) in arcs
        if fwd == bwd:
            raise OrientationMismatchError(
                f"edge ({u}, {v}) must appear in exactly one direction"
            )
        forward[i] = fwd
        used.add((u, v) if fwd else (v, u))
    if used != arcs:
        raise OrientationMismatchError("orientation file has extra arcs")
    return Orientation(base, forward)

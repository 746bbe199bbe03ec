"""Mixed graphs: immutable representation, validation, degree and ratio
arithmetic, and the ``.mg`` text format.

A mixed graph has ``n`` vertices labelled ``0..n-1``, a set of undirected
edges (unordered pairs) and a set of arcs (ordered pairs).  Loops are
forbidden, and every unordered pair carries at most one of: an undirected
edge, an arc one way, or an arc the other way (no digons).  Under that rule
the out-, in- and undirected neighbourhoods of a vertex are pairwise
disjoint, so ``degree = out + in + un`` holds exactly.

``.mg`` format (UTF-8, LF line endings)::

    mgraph 1
    n <N>
    e <u> <v>     # undirected edge
    a <u> <v>     # arc u -> v

``#`` starts a comment, blank lines are ignored, vertices are base-10
integers in ``0..N-1``.  ``serialize_mg`` emits the canonical form: header,
``n`` line, undirected edges sorted with ``u < v``, then arcs sorted;
``parse_mg`` inverts it bit-exactly.

All ratio arithmetic uses exact rationals (`fractions.Fraction`).
`MixedGraph` values are immutable after `validate`; every operation here is
pure and safe for unrestricted concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable

from .errors import (
    LoopEdgeError,
    MgSyntaxError,
    ParallelEdgeError,
    VertexOutOfRangeError,
)

__all__ = [
    "MixedGraph",
    "DegreeSummary",
    "MixedRatio",
    "RatioViolation",
    "validate",
    "degrees",
    "min_mixed_ratio",
    "check_mixed_ratio",
    "parse_mg",
    "serialize_mg",
]


@dataclass(frozen=True)
class MixedGraph:
    """Immutable mixed graph in canonical form.

    ``undirected`` holds pairs ``(u, v)`` with ``u < v``, sorted; ``arcs``
    holds ordered pairs, sorted.  Construct through :func:`validate` or
    :func:`parse_mg`; the constructor itself performs no checking.
    """

    n: int
    undirected: tuple[tuple[int, int], ...]
    arcs: tuple[tuple[int, int], ...]

    @cached_property
    def out_sets(self) -> tuple[frozenset[int], ...]:
        sets: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.arcs:
            sets[u].add(v)
        return tuple(frozenset(s) for s in sets)

    @cached_property
    def in_sets(self) -> tuple[frozenset[int], ...]:
        sets: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.arcs:
            sets[v].add(u)
        return tuple(frozenset(s) for s in sets)

    @cached_property
    def und_sets(self) -> tuple[frozenset[int], ...]:
        sets: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.undirected:
            sets[u].add(v)
            sets[v].add(u)
        return tuple(frozenset(s) for s in sets)

    @cached_property
    def und_index(self) -> dict[tuple[int, int], int]:
        """Canonical edge index: position of each ``(u, v)``, ``u < v``."""
        return {pair: i for i, pair in enumerate(self.undirected)}

    @cached_property
    def arc_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.arcs)

    @cached_property
    def min_degree(self) -> int:
        if self.n == 0:
            return 0
        return min(degrees(self, u).degree for u in range(self.n))

    @cached_property
    def max_degree(self) -> int:
        if self.n == 0:
            return 0
        return max(degrees(self, u).degree for u in range(self.n))


@dataclass(frozen=True)
class DegreeSummary:
    """Per-vertex degree counts; ``degree = out + in + un`` always."""

    out_degree: int
    in_degree: int
    un_degree: int
    degree: int

    def __post_init__(self):
        assert self.degree == self.out_degree + self.in_degree + self.un_degree


@dataclass(frozen=True)
class MixedRatio:
    """Caps ``(c1, c2)``: every vertex must satisfy ``out <= c1*degree``
    and ``in <= c2*degree``."""

    c1: Fraction
    c2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c1", Fraction(self.c1))
        object.__setattr__(self, "c2", Fraction(self.c2))
        for value in (self.c1, self.c2):
            if not 0 <= value <= 1:
                raise ValueError(f"ratio component {value} outside [0, 1]")


@dataclass(frozen=True)
class RatioViolation:
    vertex: int
    out_ratio: Fraction
    in_ratio: Fraction


def _check_vertex(x: int, n: int) -> None:
    if not 0 <= x < n:
        raise VertexOutOfRangeError(x, n)


def validate(
    n: int,
    undirected: Iterable[tuple[int, int]] = (),
    arcs: Iterable[tuple[int, int]] = (),
) -> MixedGraph:
    """Build a canonical `MixedGraph`, rejecting loops, out-of-range
    vertices and any two edges on the same unordered pair.

    Duplicate listings of the same edge or arc are deduplicated before the
    parallel-edge check.
    """
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    und: set[tuple[int, int]] = set()
    for u, v in undirected:
        _check_vertex(u, n)
        _check_vertex(v, n)
        if u == v:
            raise LoopEdgeError(u)
        und.add((u, v) if u < v else (v, u))
    arc: set[tuple[int, int]] = set()
    for u, v in arcs:
        _check_vertex(u, n)
        _check_vertex(v, n)
        if u == v:
            raise LoopEdgeError(u)
        arc.add((u, v))
    seen: set[tuple[int, int]] = set(und)
    for u, v in sorted(arc):
        pair = (u, v) if u < v else (v, u)
        if pair in seen:
            raise ParallelEdgeError(u, v)
        seen.add(pair)
    return MixedGraph(n, tuple(sorted(und)), tuple(sorted(arc)))


def degrees(g: MixedGraph, u: int) -> DegreeSummary:
    """Out/in/undirected degree counts of vertex ``u``."""
    _check_vertex(u, g.n)
    out = len(g.out_sets[u])
    inn = len(g.in_sets[u])
    un = len(g.und_sets[u])
    return DegreeSummary(out, inn, un, out + inn + un)


def min_mixed_ratio(g: MixedGraph) -> MixedRatio:
    """Componentwise-smallest caps ``(c1, c2)`` that the graph satisfies.

    Vertices of degree zero contribute ``(0, 0)`` (the defining
    inequalities hold vacuously for them).
    """
    c1 = Fraction(0)
    c2 = Fraction(0)
    for u in range(g.n):
        d = degrees(g, u)
        if d.degree == 0:
            continue
        c1 = max(c1, Fraction(d.out_degree, d.degree))
        c2 = max(c2, Fraction(d.in_degree, d.degree))
    return MixedRatio(c1, c2)


def check_mixed_ratio(g: MixedGraph, r: MixedRatio) -> list[RatioViolation]:
    """Vertices exceeding either cap, with their exact degree ratios.

    Empty iff ``min_mixed_ratio(g) <= r`` componentwise.
    """
    violations = []
    for u in range(g.n):
        d = degrees(g, u)
        if d.degree == 0:
            continue
        out_ratio = Fraction(d.out_degree, d.degree)
        in_ratio = Fraction(d.in_degree, d.degree)
        if out_ratio > r.c1 or in_ratio > r.c2:
            violations.append(RatioViolation(u, out_ratio, in_ratio))
    return violations


def parse_mg(text: str | bytes) -> MixedGraph:
    """Parse ``.mg`` text and validate the result.

    Raises `MgSyntaxError` with a 1-based line number on malformed input.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    n: int | None = None
    undirected: list[tuple[int, int]] = []
    arcs: list[tuple[int, int]] = []
    saw_header = False
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if not saw_header:
            if fields != ["mgraph", "1"]:
                raise MgSyntaxError(lineno, "expected header 'mgraph 1'")
            saw_header = True
            continue
        directive = fields[0]
        if directive == "n":
            if n is not None:
                raise MgSyntaxError(lineno, "duplicate 'n' line")
            if len(fields) != 2:
                raise MgSyntaxError(lineno, "expected 'n <N>'")
            try:
                n = int(fields[1])
            except ValueError:
                raise MgSyntaxError(lineno, f"bad vertex count {fields[1]!r}")
            if n < 0:
                raise MgSyntaxError(lineno, "vertex count must be non-negative")
        elif directive in ("e", "a"):
            if n is None:
                raise MgSyntaxError(lineno, "'n' line must precede edges")
            if len(fields) != 3:
                raise MgSyntaxError(lineno, f"expected '{directive} <u> <v>'")
            try:
                u, v = int(fields[1]), int(fields[2])
            except ValueError:
                raise MgSyntaxError(lineno, "vertices must be integers")
            (undirected if directive == "e" else arcs).append((u, v))
        else:
            raise MgSyntaxError(lineno, f"unknown directive {directive!r}")
    if not saw_header:
        raise MgSyntaxError(1, "empty input")
    if n is None:
        raise MgSyntaxError(1, "missing 'n' line")
    return validate(n, undirected, arcs)


def serialize_mg(g: MixedGraph) -> str:
    """Canonical ``.mg`` text; ``parse_mg`` inverts it bit-exactly."""
    lines = ["mgraph 1", f"n {g.n}"]
    lines.extend(f"e {u} {v}" for u, v in g.undirected)
    lines.extend(f"a {u} {v}" for u, v in g.arcs)
    return "\n".join(lines) + "\n"

"""Generators and certifiers for the extremal mixed-graph families whose
minimum degree sits near the diameter-2 threshold while every orientation
still has directed diameter at least 3.

The construction partitions the vertices into three blocks B1, B2, B3 and a
padding block X = X1..X5.  Each of B1, B2, B3 and X is an undirected
clique; arcs run from every B-vertex to every X2-vertex and from every
X4-vertex to every B-vertex; undirected complete bipartite edges join
B1 u B2 with X1 and B2 u B3 with X5.  Finally, |B2| = 3m and each
2m-subset S of B2 is wired to one dedicated vertex u_S in B1 and one v_S
in B3 (undirected edges to every vertex of S); |B1| = |B3| = C(3m, m)
makes that a bijection.

Two size regimes exist, selected by comparing the undirected margin
``1 - c1 - c2`` against ``min(c1,c2) * (2 - c1 - c2)``: padding sizes scale
with ``a_m / (c (2-c1-c2))`` in the min-scaled variant and with
``a_m / (1-c1-c2)`` in the margin-scaled one, where ``a_m = C(3m,m)+2m-1``.
All cardinalities are computed as exact rationals and must come out as
non-negative integers; nothing is ever rounded.

The killer property: any orientation leaves the smallest B1-vertex ``u``
with at most m of its 2m B2-edges pointing one way, so some 2m-subset R of
B2 avoids that side entirely and the partner vertex v_R cannot be reached
from (or cannot reach) ``u`` within two steps.  `certify_diameter_ge3`
materializes that witness pair per orientation and re-checks it by a
directed search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import comb

from .errors import (
    CertificateFailedError,
    InfeasibleRatioError,
    NegativeSizeError,
    NonIntegralError,
    NotExtremalError,
    ZeroCError,
)
from .graph import DegreeSummary, MixedGraph, MixedRatio, degrees, validate
from .metrics import Orientation

__all__ = [
    "VertexClass",
    "SizeVariant",
    "ExtremalParams",
    "ClassSizes",
    "ExtremalLayout",
    "ClosedForms",
    "RobbinsInterval",
    "Witness",
    "DegreeTableReport",
    "cardinalities",
    "smallest_integral_m",
    "build_extremal",
    "expected_degree_row",
    "verify_degree_table",
    "closed_forms",
    "log_term_sides",
    "robbins_interval",
    "certify_diameter_ge3",
    "colex_rank",
    "colex_unrank",
]


class VertexClass(Enum):
    B1 = "B1"
    B2 = "B2"
    B3 = "B3"
    X1 = "X1"
    X2 = "X2"
    X3 = "X3"
    X4 = "X4"
    X5 = "X5"


_CLASS_ORDER = tuple(VertexClass)


class SizeVariant(Enum):
    """Which closed-form size table applies.

    MIN_SCALED: padding proportional to ``a_m / (c (2-c1-c2))``; applies
    when ``(1-c1-c2) / (c (2-c1-c2)) >= 1``.  MARGIN_SCALED: padding
    proportional to ``a_m / (1-c1-c2)``, used otherwise (and requiring
    ``c1 + c2 < 1``).
    """

    MIN_SCALED = "min-scaled"
    MARGIN_SCALED = "margin-scaled"


@dataclass(frozen=True)
class ExtremalParams:
    """Mixed-ratio caps (both components positive) plus the size index m."""

    ratio: MixedRatio
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be a positive integer")
        if min(self.ratio.c1, self.ratio.c2) == 0:
            raise ZeroCError("construction needs min(c1, c2) > 0")

    @property
    def c(self) -> Fraction:
        return min(self.ratio.c1, self.ratio.c2)

    @property
    def sigma(self) -> Fraction:
        return self.ratio.c1 + self.ratio.c2

    @property
    def a_m(self) -> int:
        return comb(3 * self.m, self.m) + 2 * self.m - 1


@dataclass(frozen=True)
class ClassSizes:
    variant: SizeVariant
    sizes: dict[VertexClass, int]
    n: int


def _raw_sizes(p: ExtremalParams) -> tuple[SizeVariant, dict[VertexClass, Fraction]]:
    c, sigma, m = p.c, p.sigma, p.m
    a = Fraction(p.a_m)
    big = comb(3 * m, m)
    selector = (1 - sigma) / (c * (2 - sigma))
    if selector >= 1:
        variant = SizeVariant.MIN_SCALED
        scale = c * (2 - sigma)
        x1 = ((2 - 2 * sigma) / scale - 1) * a
        x2 = 2 * p.ratio.c1 / scale * a
        x4 = 2 * p.ratio.c2 / scale * a
        x3 = 2 / c - 1
    else:
        variant = SizeVariant.MARGIN_SCALED
        if sigma >= 1:
            raise InfeasibleRatioError(
                "margin-scaled sizes need c1 + c2 < 1"
            )
        margin = 1 - sigma
        x1 = a
        x2 = 2 * p.ratio.c1 / margin * a
        x4 = 2 * p.ratio.c2 / margin * a
        x3 = 2 / margin + 1
    sizes = {
        VertexClass.B1: Fraction(big),
        VertexClass.B2: Fraction(3 * m),
        VertexClass.B3: Fraction(big),
        VertexClass.X1: x1,
        VertexClass.X2: x2,
        VertexClass.X3: x3,
        VertexClass.X4: x4,
        VertexClass.X5: x1,
    }
    return variant, sizes


def cardinalities(p: ExtremalParams) -> ClassSizes:
    """Exact class sizes for the selected variant.

    Raises `NonIntegralError` (listing every fractional class, plus the
    smallest feasible m up to a search limit) or `NegativeSizeError` when
    the requested parameters do not produce a graph.
    """
    variant, raw = _raw_sizes(p)
    fractional = [
        (cls.value, value)
        for cls, value in raw.items()
        if value.denominator != 1
    ]
    if fractional:
        raise NonIntegralError(fractional, suggested_m=smallest_integral_m(p.ratio))
    negative = [(cls.value, value) for cls, value in raw.items() if value < 0]
    if negative:
        raise NegativeSizeError(
            ", ".join(f"{label}={value}" for label, value in negative)
        )
    sizes = {cls: int(value) for cls, value in raw.items()}
    return ClassSizes(variant, sizes, sum(sizes.values()))


def smallest_integral_m(r: MixedRatio, limit: int = 64) -> int | None:
    """Smallest m <= limit whose class sizes are all integral, or None."""
    for m in range(1, limit + 1):
        try:
            _, raw = _raw_sizes(ExtremalParams(r, m))
        except InfeasibleRatioError:
            return None
        if all(v.denominator == 1 and v >= 0 for v in raw.values()):
            return m
    return None


# -- colexicographic subset ranking --------------------------------------

def colex_rank(positions: tuple[int, ...]) -> int:
    """Rank of a sorted k-subset of non-negative integers in colex order."""
    return sum(comb(s, i + 1) for i, s in enumerate(positions))


def colex_unrank(rank: int, k: int, n: int) -> tuple[int, ...]:
    """Inverse of `colex_rank` over k-subsets of ``0..n-1``."""
    out: list[int] = []
    r = rank
    a = n - 1
    for i in range(k, 0, -1):
        while comb(a, i) > r:
            a -= 1
        out.append(a)
        r -= comb(a, i)
        a -= 1
    return tuple(reversed(out))


@dataclass(frozen=True)
class ExtremalLayout:
    """A built instance: the graph, the class of each vertex, and the
    subset gadget.

    Vertices are laid out contiguously in class order B1, B2, B3, X1..X5.
    The B1 (and B3) vertex at offset r within its class is wired to the
    2m-subset of B2 with colex rank r.
    """

    params: ExtremalParams
    graph: MixedGraph
    class_of: tuple[VertexClass, ...]
    starts: dict[VertexClass, int]
    sizes: ClassSizes

    @property
    def m(self) -> int:
        return self.params.m

    def vertices_of(self, cls: VertexClass) -> range:
        start = self.starts[cls]
        return range(start, start + self.sizes.sizes[cls])

    def gadget_rank(self, vertex: int) -> int:
        cls = self.class_of[vertex]
        if cls not in (VertexClass.B1, VertexClass.B3):
            raise NotExtremalError(f"vertex {vertex} carries no gadget rank")
        return vertex - self.starts[cls]

    def gadget_subset(self, rank: int) -> tuple[int, ...]:
        """B2 vertex ids of the 2m-subset with the given colex rank."""
        b2 = self.starts[VertexClass.B2]
        positions = colex_unrank(rank, 2 * self.m, 3 * self.m)
        return tuple(b2 + pos for pos in positions)

    def partner_for_subset(
        self, positions: tuple[int, ...], side: VertexClass
    ) -> int:
        """The B1 or B3 vertex wired to the given B2 subset (positions are
        offsets within B2)."""
        return self.starts[side] + colex_rank(positions)

    def classes_text(self) -> str:
        """Sidecar text: ``<vertex> <class> [<rank>]`` per line."""
        lines = []
        for vertex, cls in enumerate(self.class_of):
            if cls in (VertexClass.B1, VertexClass.B3):
                lines.append(f"{vertex} {cls.value} {self.gadget_rank(vertex)}")
            else:
                lines.append(f"{vertex} {cls.value}")
        return "\n".join(lines) + "\n"


def build_extremal(p: ExtremalParams) -> ExtremalLayout:
    """Materialize the instance for ``p`` and validate it."""
    sizes = cardinalities(p)
    starts: dict[VertexClass, int] = {}
    class_of: list[VertexClass] = []
    cursor = 0
    for cls in _CLASS_ORDER:
        starts[cls] = cursor
        count = sizes.sizes[cls]
        class_of.extend([cls] * count)
        cursor += count
    n = cursor

    b = [v for cls in (VertexClass.B1, VertexClass.B2, VertexClass.B3)
         for v in range(starts[cls], starts[cls] + sizes.sizes[cls])]
    x_start = starts[VertexClass.X1]
    x_vertices = range(x_start, n)

    undirected: list[tuple[int, int]] = []
    for cls in (VertexClass.B1, VertexClass.B2, VertexClass.B3):
        lo = starts[cls]
        undirected.extend(combinations(range(lo, lo + sizes.sizes[cls]), 2))
    undirected.extend(combinations(x_vertices, 2))

    def block(cls: VertexClass) -> range:
        lo = starts[cls]
        return range(lo, lo + sizes.sizes[cls])

    for left in (VertexClass.B1, VertexClass.B2):
        for u in block(left):
            for x in block(VertexClass.X1):
                undirected.append((u, x))
    for left in (VertexClass.B2, VertexClass.B3):
        for u in block(left):
            for x in block(VertexClass.X5):
                undirected.append((u, x))

    m = p.m
    b2_start = starts[VertexClass.B2]
    for positions in combinations(range(3 * m), 2 * m):
        rank = colex_rank(positions)
        u_s = starts[VertexClass.B1] + rank
        v_s = starts[VertexClass.B3] + rank
        for pos in positions:
            s_vertex = b2_start + pos
            undirected.append((u_s, s_vertex))
            undirected.append((v_s, s_vertex))

    arcs: list[tuple[int, int]] = []
    for u in b:
        for x in block(VertexClass.X2):
            arcs.append((u, x))
    for x in block(VertexClass.X4):
        for u in b:
            arcs.append((x, u))

    graph = validate(n, undirected, arcs)
    return ExtremalLayout(p, graph, tuple(class_of), starts, sizes)


def layout_from_parts(
    params: ExtremalParams,
    graph: MixedGraph,
    class_of: tuple[VertexClass, ...],
    ranks: dict[int, int],
) -> ExtremalLayout:
    """Reassemble a layout from a graph plus sidecar data, checking the
    pieces for consistency (`NotExtremalError` otherwise)."""
    sizes = cardinalities(params)
    if len(class_of) != graph.n or sizes.n != graph.n:
        raise NotExtremalError("class labels do not cover the graph")
    starts: dict[VertexClass, int] = {}
    cursor = 0
    for cls in _CLASS_ORDER:
        starts[cls] = cursor
        expected = sizes.sizes[cls]
        chunk = class_of[cursor : cursor + expected]
        if list(chunk) != [cls] * expected:
            raise NotExtremalError(f"vertices of class {cls.value} not contiguous")
        cursor += expected
    layout = ExtremalLayout(params, graph, class_of, starts, sizes)
    m = params.m
    for cls in (VertexClass.B1, VertexClass.B3):
        for vertex in layout.vertices_of(cls):
            rank = ranks.get(vertex)
            if rank != vertex - starts[cls]:
                raise NotExtremalError(
                    f"vertex {vertex} has gadget rank {rank}, expected"
                    f" {vertex - starts[cls]}"
                )
            subset = set(layout.gadget_subset(vertex - starts[cls]))
            b2 = set(layout.vertices_of(VertexClass.B2))
            if graph.und_sets[vertex] & b2 != subset:
                raise NotExtremalError(
                    f"vertex {vertex} is not wired to its 2m-subset"
                )
    if len(set(layout.vertices_of(VertexClass.B2))) != 3 * m:
        raise NotExtremalError("middle block must have 3m vertices")
    return layout


def parse_classes_text(text: str) -> tuple[tuple[VertexClass, ...], dict[int, int]]:
    """Parse sidecar lines ``<vertex> <class> [<rank>]``."""
    entries: dict[int, VertexClass] = {}
    ranks: dict[int, int] = {}
    for raw in text.split("\n"):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) not in (2, 3):
            raise NotExtremalError(f"bad class line {line!r}")
        vertex = int(fields[0])
        try:
            cls = VertexClass(fields[1])
        except ValueError:
            raise NotExtremalError(f"unknown class {fields[1]!r}")
        entries[vertex] = cls
        if len(fields) == 3:
            ranks[vertex] = int(fields[2])
    if set(entries) != set(range(len(entries))):
        raise NotExtremalError("class lines must cover vertices 0..n-1")
    class_of = tuple(entries[v] for v in range(len(entries)))
    return class_of, ranks


# -- degree tables --------------------------------------------------------

def expected_degree_row(p: ExtremalParams, cls: VertexClass) -> DegreeSummary:
    """Closed-form (out, in, un, degree) for one class, exact."""
    sizes = cardinalities(p)
    c1, c2 = p.ratio.c1, p.ratio.c2
    c, sigma, m = p.c, p.sigma, p.m
    a = Fraction(p.a_m)
    big = comb(3 * m, m)
    into_x2 = Fraction(2 * big + 3 * m)

    if sizes.variant is SizeVariant.MIN_SCALED:
        scale = c * (2 - sigma)
        b_out = 2 * c1 / scale * a
        b_in = 2 * c2 / scale * a
        rows = {
            VertexClass.B1: (b_out, b_in, (2 - 2 * sigma) / scale * a),
            VertexClass.B2: (
                b_out,
                b_in,
                ((4 - 4 * sigma) / scale - 1) * a + Fraction(big, 3) + m,
            ),
            VertexClass.B3: (b_out, b_in, (2 - 2 * sigma) / scale * a),
            VertexClass.X1: (0, 0, (2 - c) / c * (big + 2 * m) + m),
            VertexClass.X2: (0, into_x2, (1 - c) / c * (2 * big + 4 * m)),
            VertexClass.X3: (0, 0, (1 - c) / c * (2 * big + 4 * m)),
            VertexClass.X4: (into_x2, 0, (1 - c) / c * (2 * big + 4 * m)),
            VertexClass.X5: (0, 0, (2 - c) / c * (big + 2 * m) + m),
        }
    else:
        margin = 1 - sigma
        b_out = 2 * c1 / margin * a
        b_in = 2 * c2 / margin * a
        rows = {
            VertexClass.B1: (b_out, b_in, 2 * a),
            VertexClass.B2: (b_out, b_in, 3 * a + Fraction(big, 3) + m),
            VertexClass.B3: (b_out, b_in, 2 * a),
            VertexClass.X1: (0, 0, (3 - sigma) / margin * (big + 2 * m) + m),
            VertexClass.X2: (0, into_x2, (2 * big + 4 * m) / margin),
            VertexClass.X3: (0, 0, (2 * big + 4 * m) / margin),
            VertexClass.X4: (into_x2, 0, (2 * big + 4 * m) / margin),
            VertexClass.X5: (0, 0, (3 - sigma) / margin * (big + 2 * m) + m),
        }
    out, inn, un = (Fraction(x) for x in rows[cls])
    for label, value in (("out", out), ("in", inn), ("un", un)):
        if value.denominator != 1:
            raise NonIntegralError([(f"{cls.value}.{label}", value)])
    return DegreeSummary(int(out), int(inn), int(un), int(out + inn + un))


@dataclass(frozen=True)
class DegreeTableReport:
    mismatches: tuple[tuple[int, DegreeSummary, DegreeSummary], ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def verify_degree_table(layout: ExtremalLayout) -> DegreeTableReport:
    """Compare every vertex's actual degree summary against the closed-form
    row of its class; mismatches are report content, never errors."""
    expected = {
        cls: expected_degree_row(layout.params, cls) for cls in _CLASS_ORDER
    }
    mismatches = []
    for vertex in range(layout.graph.n):
        actual = degrees(layout.graph, vertex)
        want = expected[layout.class_of[vertex]]
        if actual != want:
            mismatches.append((vertex, actual, want))
    return DegreeTableReport(tuple(mismatches))


@dataclass(frozen=True)
class ClosedForms:
    n: int
    delta: int
    identity_holds: bool


def closed_forms(p: ExtremalParams) -> ClosedForms:
    """Order and minimum degree of the instance in closed form, plus an
    exact check of the identity tying delta to n, m and the variant
    constant."""
    sizes = cardinalities(p)
    c, sigma, m = p.c, p.sigma, p.m
    a = Fraction(p.a_m)
    big = comb(3 * m, m)
    if sizes.variant is SizeVariant.MIN_SCALED:
        n_formula = Fraction(2) / c * (big + 2 * m) - m + 1
        delta = 2 * a / (c * (2 - sigma))
        constant = (c + 2) / (c * (2 - sigma))
    else:
        n_formula = (2 - sigma) / (1 - sigma) * (2 * big + 4 * m) - m + 1
        delta = 2 * a / (1 - sigma)
        constant = (5 - 3 * sigma) / ((1 - sigma) * (2 - sigma))
    assert n_formula == sizes.n, "class sizes disagree with the order formula"
    assert delta.denominator == 1
    identity = delta == Fraction(sizes.n, 1) / (2 - sigma) + Fraction(m) / (
        2 - sigma
    ) - constant
    return ClosedForms(sizes.n, int(delta), identity)


def log_term_sides(p: ExtremalParams) -> tuple[float, float]:
    """Both sides of the logarithmic lower-bound comparison for inspection:
    (actual minimum degree, n/(2-c1-c2) + (2/(2-c1-c2)) ln n / (2 ln(27/4))).

    The inequality itself only kicks in for large m, so it is reported, not
    asserted.
    """
    forms = closed_forms(p)
    span = float(2 - p.sigma)
    rhs = forms.n / span + (2.0 / span) * math.log(forms.n) / (2.0 * math.log(27.0 / 4.0))
    return float(forms.delta), rhs


@dataclass(frozen=True)
class RobbinsInterval:
    """Two-sided enclosure of C(3m, m) from factorial bounds with explicit
    error exponents."""

    m: int
    lower: float
    upper: float

    def contains(self, value: int) -> bool:
        return self.lower < value < self.upper


def robbins_interval(m: int) -> RobbinsInterval:
    """Evaluate ``(sqrt(3) / (2 sqrt(pi m))) (27/4)^m e^(g1 - g2 - g3)`` at
    the extreme admissible error exponents:
    ``1/(36m+1) < g1 < 1/(36m)``, ``1/(12m+1) < g2 < 1/(12m)``,
    ``1/(24m+1) < g3 < 1/(24m)``."""
    if m < 1:
        raise ValueError("m must be positive")
    base = math.sqrt(3.0) / (2.0 * math.sqrt(math.pi * m)) * (27.0 / 4.0) ** m
    lower = base * math.exp(1.0 / (36 * m + 1) - 1.0 / (12 * m) - 1.0 / (24 * m))
    upper = base * math.exp(1.0 / (36 * m) - 1.0 / (12 * m + 1) - 1.0 / (24 * m + 1))
    return RobbinsInterval(m, lower, upper)


# -- per-orientation certificate ------------------------------------------

@dataclass(frozen=True)
class Witness:
    """An ordered pair at directed distance >= 3 in a given orientation.

    ``blocked_mid`` is the 2m-subset R of the middle block that separates
    the pair; ``side`` records which branch produced it ("out" when the
    source's forward edges into its subset were the minority, "in"
    otherwise).
    """

    source: int
    target: int
    blocked_mid: frozenset[int]
    side: str


def _oriented_out(d: Orientation, a: int, b: int) -> bool:
    """True iff the induced digraph has the arc a -> b."""
    g = d.base
    if (a, b) in g.arc_set:
        return True
    pair = (a, b) if a < b else (b, a)
    idx = g.und_index.get(pair)
    if idx is None:
        return False
    return bool(d.forward[idx]) == (a < b)


def certify_diameter_ge3(layout: ExtremalLayout, d: Orientation) -> Witness:
    """Produce and confirm a witness pair at directed distance >= 3.

    Let ``u`` be the smallest B1 vertex and S its 2m-subset of B2.  The
    orientation splits S into forward and backward edges; the side with at
    most m edges (ties go to the out side) leaves at least 2m vertices of
    B2 untouched, and the colex-smallest such 2m-subset R names the partner
    v_R in B3.  On the out side the witness is (u, v_R), on the in side
    (v_R, u).  The padding block is then checked explicitly: the source's
    forward reach into X and the target's backward reach from X must be
    disjoint, so no X-vertex can be a midpoint.  A directed search
    truncated at two hops re-confirms the pair before it is returned.
    """
    if d.base is not layout.graph and d.base != layout.graph:
        raise NotExtremalError("orientation does not orient this layout's graph")
    if not layout.sizes.sizes[VertexClass.B1]:
        raise NotExtremalError("layout has no B1 vertices")
    m = layout.m
    u = layout.starts[VertexClass.B1]
    subset = layout.gadget_subset(0)
    out_mid = [w for w in subset if _oriented_out(d, u, w)]
    b2 = list(layout.vertices_of(VertexClass.B2))
    b2_start = layout.starts[VertexClass.B2]
    if len(out_mid) <= m:
        side = "out"
        blocked = set(out_mid)
    else:
        side = "in"
        blocked = {w for w in subset if _oriented_out(d, w, u)}
    available = sorted(w for w in b2 if w not in blocked)
    if len(available) < 2 * m:
        raise CertificateFailedError("middle block split violates the 2m budget")
    r_vertices = tuple(available[: 2 * m])
    r_positions = tuple(w - b2_start for w in r_vertices)
    v_r = layout.partner_for_subset(r_positions, VertexClass.B3)
    source, target = (u, v_r) if side == "out" else (v_r, u)

    x_vertices = set(range(layout.starts[VertexClass.X1], layout.graph.n))
    g = layout.graph
    forward_x = {
        w
        for w in (g.und_sets[source] | g.out_sets[source]) & x_vertices
        if _oriented_out(d, source, w)
    }
    backward_x = {
        w
        for w in (g.und_sets[target] | g.in_sets[target]) & x_vertices
        if _oriented_out(d, w, target)
    }
    if forward_x & backward_x:
        raise CertificateFailedError("padding block admits a directed midpoint")

    # Directed confirmation, truncated at two hops from the source.
    first_hop = [
        w
        for w in (g.und_sets[source] | g.out_sets[source])
        if _oriented_out(d, source, w)
    ]
    if target in first_hop:
        raise CertificateFailedError("witness pair is adjacent in the digraph")
    for w in first_hop:
        if _oriented_out(d, w, target):
            raise CertificateFailedError("witness pair admits a directed 2-path")
    return Witness(source, target, frozenset(r_vertices), side)


def perturbed_layout(layout: ExtremalLayout, graph: MixedGraph) -> ExtremalLayout:
    """Same classes over a modified graph (for table-verification tests)."""
    return replace(layout, graph=graph)

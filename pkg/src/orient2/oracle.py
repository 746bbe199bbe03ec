"""Brute-force ground truth on small instances: exact oriented diameters
and exact failure probabilities by exhausting all ``2^k`` orientations.

Enumeration walks orientations in Gray-code order, so each step flips a
single edge and updates two bit rows instead of rebuilding the digraph.
Probabilities are dyadic rationals computed with big integers; no floating
point enters the oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceededError, VertexOutOfRangeError, SameVertexError
from .graph import MixedGraph
from .metrics import INFINITE, _bits, _eccentricity

__all__ = [
    "OracleBudget",
    "oriented_diameter_exact",
    "pair_failure_bruteforce",
    "diam2_failure_probability_bruteforce",
]


@dataclass(frozen=True)
class OracleBudget:
    """Caps on exhaustive work: ``2^max_undirected`` orientations and
    ``max_n`` vertices for all-pairs checks."""

    max_undirected: int = 22
    max_n: int = 64

    def __post_init__(self):
        if self.max_undirected <= 0 or self.max_n <= 0:
            raise ValueError("budget caps must be positive")


def _check_budget(g: MixedGraph, b: OracleBudget, k: int) -> None:
    if k > b.max_undirected:
        raise BudgetExceededError(
            f"{k} undirected edges exceed enumeration cap {b.max_undirected}"
        )
    if g.n > b.max_n:
        raise BudgetExceededError(f"order {g.n} exceeds cap {b.max_n}")


class _GrayRows:
    """Out/in bit rows maintained under Gray-code edge flips.

    State 0 orients every undirected edge low -> high; flipping edge ``j``
    reverses it.  Successive Gray codes differ in one bit, so advancing the
    enumeration touches exactly two rows per side.
    """

    def __init__(self, g: MixedGraph):
        self.n = g.n
        self.edges = g.undirected
        self.out_rows = [0] * g.n
        self.in_rows = [0] * g.n
        for u, v in g.arcs:
            self.out_rows[u] |= 1 << v
            self.in_rows[v] |= 1 << u
        for u, v in self.edges:
            self.out_rows[u] |= 1 << v
            self.in_rows[v] |= 1 << u
        self.state = 0

    def flip(self, j: int) -> None:
        u, v = self.edges[j]
        bit = 1 << j
        if self.state & bit:  # currently high -> low, restore low -> high
            src, dst = v, u
        else:
            src, dst = u, v
        self.state ^= bit
        self.out_rows[src] &= ~(1 << dst)
        self.in_rows[dst] &= ~(1 << src)
        self.out_rows[dst] |= 1 << src
        self.in_rows[src] |= 1 << dst

    def step(self, counter: int) -> None:
        """Advance from Gray code of ``counter`` to ``counter + 1``."""
        self.flip(((counter + 1) & -(counter + 1)).bit_length() - 1)


def _directed_diameter(rows: _GrayRows) -> float:
    best = 0
    for s in range(rows.n):
        ecc = _eccentricity(rows.out_rows, rows.n, s)
        if ecc == INFINITE:
            return INFINITE
        best = max(best, ecc)
    return best


def oriented_diameter_exact(
    g: MixedGraph, b: OracleBudget = OracleBudget()
) -> int | None:
    """Minimum directed diameter over all strong orientations, or None when
    no orientation is strongly connected.

    Exhausts all ``2^k`` orientations; stops early once the smallest
    achievable value is reached (diameter 1 needs complete arc coverage,
    impossible alongside undirected edges, so the floor is 2 for n >= 2).
    """
    k = len(g.undirected)
    _check_budget(g, b, k)
    if g.n == 0:
        raise ValueError("diameter of the empty graph is undefined")
    if g.n == 1:
        return 0
    floor = 1 if len(g.arcs) == g.n * (g.n - 1) else 2
    rows = _GrayRows(g)
    best: float = INFINITE
    for counter in range(1 << k):
        if counter:
            rows.step(counter - 1)
        diameter = _directed_diameter(rows)
        if diameter < best:
            best = diameter
            if best <= floor:
                break
    return None if best is INFINITE else int(best)


def pair_failure_bruteforce(
    g: MixedGraph, u: int, v: int, b: OracleBudget = OracleBudget()
) -> Fraction:
    """Exact probability, over uniform independent orientation, that no
    vertex ``w`` completes a directed 2-path ``u -> w -> v``.

    Only the undirected edges incident to the pair's common-neighbour
    structure vary the event, so just those are enumerated (and counted
    against the budget).
    """
    for x in (u, v):
        if not 0 <= x < g.n:
            raise VertexOutOfRangeError(x, g.n)
    if u == v:
        raise SameVertexError(f"ordered pair needs distinct vertices, got {u}")
    # Per candidate w: the first hop is fixed (arc u->w) or an edge index,
    # same for the second hop; w drops out when either hop is impossible.
    relevant: dict[tuple[int, int], int] = {}

    def edge_slot(a: int, c: int) -> int | None:
        pair = (a, c) if a < c else (c, a)
        if pair not in g.und_index:
            return None
        return relevant.setdefault(pair, len(relevant))

    witnesses: list[tuple[int | None, bool, int | None, bool]] = []
    for w in range(g.n):
        if w == u or w == v:
            continue
        if w in g.out_sets[u]:
            first: tuple[int | None, bool] | None = (None, True)
        elif w in g.und_sets[u]:
            first = (edge_slot(u, w), u < w)
        else:
            first = None
        if first is None:
            continue
        if v in g.out_sets[w]:
            second: tuple[int | None, bool] | None = (None, True)
        elif v in g.und_sets[w]:
            second = (edge_slot(w, v), w < v)
        else:
            second = None
        if second is None:
            continue
        if first[0] is None and second[0] is None:
            return Fraction(0)  # fixed 2-path, failure impossible
        witnesses.append((first[0], first[1], second[0], second[1]))

    k = len(relevant)
    _check_budget(g, b, k)
    failures = 0
    for mask in range(1 << k):
        ok = True
        for slot1, fwd1, slot2, fwd2 in witnesses:
            hop1 = slot1 is None or bool((mask >> slot1) & 1) == fwd1
            hop2 = slot2 is None or bool((mask >> slot2) & 1) == fwd2
            if hop1 and hop2:
                ok = False
                break
        if ok:
            failures += 1
    return Fraction(failures, 1 << k)


def _covers_all_within_two(rows: _GrayRows) -> bool:
    full = (1 << rows.n) - 1
    for s in range(rows.n):
        row = rows.out_rows[s]
        reach = row
        for w in _bits(row):
            reach |= rows.out_rows[w]
        if reach | (1 << s) != full:
            return False
    return True


def diam2_failure_probability_bruteforce(
    g: MixedGraph, b: OracleBudget = OracleBudget()
) -> Fraction:
    """Exact probability that a uniform random orientation leaves some
    ordered pair at directed distance above 2 (length-1 arcs count as
    covered, matching the Las Vegas acceptance test)."""
    k = len(g.undirected)
    _check_budget(g, b, k)
    if g.n < 2:
        return Fraction(0)
    rows = _GrayRows(g)
    failures = 0
    for counter in range(1 << k):
        if counter:
            rows.step(counter - 1)
        if not _covers_all_within_two(rows):
            failures += 1
    return Fraction(failures, 1 << k)

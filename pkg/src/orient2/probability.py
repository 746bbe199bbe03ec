"""Random-orientation machinery: ordered-pair classification, exact failure
probabilities, the first-moment bound and its degree threshold, and the Las
Vegas search for a diameter-2 orientation.

For an ordered pair ``(u, v)`` of a mixed graph, a uniform random
orientation fails the pair when no directed 2-path ``u -> w -> v`` appears.
The failure probability factors exactly over the common neighbours of the
pair, giving ``(1/2)^(b1+b2) * (3/4)^b3`` (see `pair_classes`).  Summing
over all ordered pairs yields ``xi``, the expected number of failing pairs;
by Markov's inequality a random orientation covers every pair with
probability at least ``1 - xi``, which drives `las_vegas_diam2`.

``xi`` deliberately counts only 2-paths through intermediates, while the
search's success check also accepts length-1 arcs, so ``xi`` stays a valid
upper bound on the failure probability of each try.

Edge directions come from a SplitMix64 stream evaluated at (seed, canonical
edge index), so any single edge's direction is computable in O(1) and a
seed fully determines the orientation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import (
    ExhaustedError,
    InfeasibleRatioError,
    PreconditionFailedError,
    SameVertexError,
    VertexOutOfRangeError,
)
from .graph import MixedGraph, MixedRatio
from .metrics import INFINITE, Orientation, directed_eccentricities, two_step_matrix

__all__ = [
    "PairClasses",
    "ThresholdBound",
    "XiResult",
    "pair_classes",
    "pair_failure_probability",
    "xi_exact",
    "xi_upper_bound",
    "sufficient_min_degree",
    "sample_orientation",
    "las_vegas_diam2",
]

EXACT_XI_MAX_ORDER = 64

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(*parts: int) -> int:
    """SplitMix64 finalizer folded over ``parts``; uniform 64-bit output."""
    acc = 0
    for p in parts:
        acc = (acc + (p & _MASK64) + _GAMMA) & _MASK64
        acc = (acc ^ (acc >> 30)) * _MIX1 & _MASK64
        acc = (acc ^ (acc >> 27)) * _MIX2 & _MASK64
        acc ^= acc >> 31
    return acc


def _direction_bits(seed: int, k: int) -> np.ndarray:
    """Direction bit for edge indices ``0..k-1`` under ``seed`` (vectorized
    SplitMix64, identical to ``mix64(seed, index)``'s top bit)."""
    idx = np.arange(k, dtype=np.uint64)
    acc = np.uint64(_seed_round(seed))
    z = acc + idx + np.uint64(_GAMMA)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    z ^= z >> np.uint64(31)
    return (z >> np.uint64(63)).astype(bool)


def _seed_round(seed: int) -> int:
    acc = (0 + (seed & _MASK64) + _GAMMA) & _MASK64
    acc = (acc ^ (acc >> 30)) * _MIX1 & _MASK64
    acc = (acc ^ (acc >> 27)) * _MIX2 & _MASK64
    return acc ^ (acc >> 31)


def edge_direction_bit(seed: int, index: int) -> bool:
    """Scalar twin of `_direction_bits`: direction of one edge in O(1)."""
    return bool(mix64(seed, index) >> 63)


@dataclass(frozen=True)
class PairClasses:
    """Common-neighbour breakdown of an ordered pair ``(u, v)``.

    ``shortcut`` is True when some fixed 2-path ``u -> w -> v`` already
    exists (failure probability 0); the counts are then unused and zero.
    Otherwise ``b1`` counts out-neighbours of ``u`` undirected to ``v``,
    ``b2`` undirected neighbours of ``u`` pointing into ``v``, and ``b3``
    vertices undirected to both.
    """

    shortcut: bool
    b1: int
    b2: int
    b3: int

    @property
    def b(self) -> int:
        return self.b1 + self.b2 + self.b3


def pair_classes(g: MixedGraph, u: int, v: int) -> PairClasses:
    """Classify the common neighbours that can complete ``u -> w -> v``."""
    for x in (u, v):
        if not 0 <= x < g.n:
            raise VertexOutOfRangeError(x, g.n)
    if u == v:
        raise SameVertexError(f"ordered pair needs distinct vertices, got {u}")
    if g.out_sets[u] & g.in_sets[v]:
        return PairClasses(True, 0, 0, 0)
    b1 = len(g.out_sets[u] & g.und_sets[v])
    b2 = len(g.und_sets[u] & g.in_sets[v])
    b3 = len(g.und_sets[u] & g.und_sets[v])
    return PairClasses(False, b1, b2, b3)


def pair_failure_probability(pc: PairClasses) -> Fraction:
    """Exact probability that a uniform random orientation leaves the pair
    without a directed 2-path: ``(1/2)^(b1+b2) * (3/4)^b3``, or 0 on a
    shortcut."""
    if pc.shortcut:
        return Fraction(0)
    return Fraction(1, 2) ** (pc.b1 + pc.b2) * Fraction(3, 4) ** pc.b3


_LN_HALF = math.log(0.5)
_LN_3_4 = math.log(0.75)


@dataclass(frozen=True)
class XiResult:
    """Expected number of ordered pairs without a directed 2-path.

    ``exact`` is the rational value for graphs of order at most
    `EXACT_XI_MAX_ORDER` and None beyond; ``value`` is always set, computed
    in log space with exactly rounded summation (relative error well under
    1e-12).  ``conclusive`` flags ``value < 1``, where Markov's inequality
    guarantees a covering orientation exists.
    """

    n: int
    exact: Optional[Fraction]
    value: float
    conclusive: bool


def xi_exact(g: MixedGraph) -> XiResult:
    """Sum of `pair_failure_probability` over all ordered pairs."""
    if g.n < 2:
        raise PreconditionFailedError("need at least two vertices")
    keep_exact = g.n <= EXACT_XI_MAX_ORDER
    total = Fraction(0)
    terms = []
    for u in range(g.n):
        for v in range(g.n):
            if u == v:
                continue
            pc = pair_classes(g, u, v)
            if pc.shortcut:
                continue
            if keep_exact:
                total += pair_failure_probability(pc)
            terms.append(math.exp((pc.b1 + pc.b2) * _LN_HALF + pc.b3 * _LN_3_4))
    value = math.fsum(terms)
    exact = total if keep_exact else None
    if exact is not None:
        value = float(exact)
    return XiResult(g.n, exact, value, value < 1.0)


@dataclass(frozen=True)
class ThresholdBound:
    """First-moment degree threshold data at order ``n`` and caps ``ratio``.

    ``sufficient_delta`` is the real value
    ``n/(2-c1-c2) + (2/(2-c1-c2)) * ln(n)/ln(4/3)``; any minimum degree at
    or above it forces the first-moment bound below 1 and hence a
    diameter-2 orientation.  ``vacuous`` flags a ceiling beyond ``n-1``
    (no graph of this order can satisfy the bound).  When a concrete
    ``delta`` was supplied, ``xi_bound = n^2 (3/4)^((2-c1-c2)*delta - n)``
    and ``conclusive`` flags ``xi_bound < 1``; ``slack`` is
    ``delta - n/2``.
    """

    n: int
    ratio: MixedRatio
    sufficient_delta: float
    sufficient_ceiling: int
    vacuous: bool
    slack: float
    delta: Optional[int] = None
    xi_bound: Optional[float] = None
    xi_bound_exact: Optional[Fraction] = None
    conclusive: Optional[bool] = None


def _two_minus_sigma(r: MixedRatio) -> Fraction:
    span = 2 - r.c1 - r.c2
    if span <= 0:
        raise InfeasibleRatioError("c1 + c2 must be strictly below 2")
    return span


def sufficient_min_degree(n: int, r: MixedRatio) -> ThresholdBound:
    """Minimum degree guaranteeing a diameter-2 orientation at order ``n``.

    Derived from requiring ``n^2 (3/4)^((2-c1-c2)*delta - n) < 1``; the
    reported value is exactly ``(n + 2 ln n / ln(4/3)) / (2-c1-c2)``.
    """
    if n < 2:
        raise PreconditionFailedError("threshold needs order at least 2")
    span = _two_minus_sigma(r)
    value = (n + 2.0 * math.log(n) / math.log(4.0 / 3.0)) / float(span)
    ceiling = math.ceil(value)
    return ThresholdBound(
        n=n,
        ratio=r,
        sufficient_delta=value,
        sufficient_ceiling=ceiling,
        vacuous=ceiling > n - 1,
        slack=value - n / 2.0,
    )


def xi_upper_bound(n: int, delta: int, r: MixedRatio) -> ThresholdBound:
    """Closed-form bound ``n^2 (3/4)^((2-c1-c2)*delta - n)`` on the
    first-moment sum of any graph with these parameters.

    Requires ``delta >= n/2`` (so the slack ``delta - n/2`` is
    non-negative) and ``c1 + c2 < 2``.
    """
    span = _two_minus_sigma(r)
    if 2 * delta < n:
        raise PreconditionFailedError("bound requires min degree >= n/2")
    base = sufficient_min_degree(n, r)
    exponent = span * delta - n
    log_value = 2.0 * math.log(n) + float(exponent) * _LN_3_4
    value = math.exp(log_value) if log_value < 700.0 else INFINITE
    exact = None
    if exponent.denominator == 1:
        exact = Fraction(n * n) * Fraction(3, 4) ** int(exponent)
        if abs(log_value) < 700.0:
            value = float(exact)
    return ThresholdBound(
        n=n,
        ratio=r,
        sufficient_delta=base.sufficient_delta,
        sufficient_ceiling=base.sufficient_ceiling,
        vacuous=base.vacuous,
        slack=delta - n / 2.0,
        delta=delta,
        xi_bound=value,
        xi_bound_exact=exact,
        conclusive=value < 1.0,
    )


def sample_orientation(g: MixedGraph, seed: int) -> Orientation:
    """Orient every undirected edge independently, each direction with
    probability exactly 1/2, from the SplitMix64 stream at ``seed``."""
    return Orientation(g, _direction_bits(seed, len(g.undirected)))


def _run_try(g: MixedGraph, seed: int, i: int):
    d = sample_orientation(g, seed + i)
    if two_step_matrix(d).total_off_diagonal:
        return d, 2 if g.n > 1 else 0
    report = directed_eccentricities(d)
    return None, report.diameter


def las_vegas_diam2(
    g: MixedGraph, max_tries: int, seed: int, jobs: int = 1
) -> Orientation:
    """Sample orientations (try ``i`` uses ``seed + i``) until one has
    directed diameter at most 2; the first success by try index is
    returned, so the result is independent of worker count.

    Success is checked with `two_step_matrix`, which accepts length-1 arcs
    as well as 2-paths.  Raises `ExhaustedError` carrying the best directed
    diameter observed once ``max_tries`` samples all fail.
    """
    if max_tries < 1:
        raise PreconditionFailedError("max_tries must be positive")
    best = INFINITE
    if jobs <= 1:
        for i in range(max_tries):
            d, diameter = _run_try(g, seed, i)
            if d is not None:
                return d
            best = min(best, diameter)
        raise ExhaustedError(max_tries, best)
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        for start in range(0, max_tries, jobs):
            chunk = range(start, min(start + jobs, max_tries))
            results = list(pool.map(lambda i: _run_try(g, seed, i), chunk))
            for d, diameter in results:
                if d is not None:
                    return d
                best = min(best, diameter)
    raise ExhaustedError(max_tries, best)

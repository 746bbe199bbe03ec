"""Empirical experiments around the degree threshold, plus the closing
bound calculators for oriented radius and diameter.

The random model is an artifact decision (no canonical random mixed graph
exists): each unordered pair appears independently with probability ``p``,
each present pair becomes an arc with probability ``q`` (direction
uniform), and a deterministic repair pass then un-directs excess arcs in
ascending vertex order until the requested ratio caps hold.  Un-directing
never changes a vertex's total degree and only lowers out/in degrees, so a
single ascending pass suffices.

Sweeps are deterministic given their parameters and seed: per-trial seeds
are mixed from (seed, row index, trial index), and aggregation is plain
counting, so worker count never changes the output bytes.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from fractions import Fraction

import random

from .errors import EmptyGridError, ExhaustedError, RejectionExhaustedError
from .graph import MixedGraph, MixedRatio, degrees, validate
from .probability import las_vegas_diam2, mix64, xi_exact

__all__ = [
    "ExperimentRow",
    "random_mixed_graph",
    "threshold_sweep",
    "rows_to_csv",
    "section3_bounds",
    "CSV_COLUMNS",
]

REJECTION_CAP = 1000

CSV_COLUMNS = (
    "n",
    "c1",
    "c2",
    "delta_target",
    "trials",
    "tries_per_trial",
    "successes",
    "mean_tries_to_success",
    "xi_mean",
    "seed",
)


@dataclass(frozen=True)
class ExperimentRow:
    n: int
    c1: Fraction
    c2: Fraction
    delta_target: int
    trials: int
    tries_per_trial: int
    successes: int
    mean_tries_to_success: float
    xi_mean: float
    seed: int

    def __post_init__(self):
        assert 0 <= self.successes <= self.trials


def random_mixed_graph(
    n: int, p: float, q: float, r: MixedRatio, seed: int
) -> MixedGraph:
    """Binomial mixed graph repaired to satisfy ``check_mixed_ratio(., r)``."""
    if not (0 <= p <= 1 and 0 <= q <= 1):
        raise ValueError("probabilities must lie in [0, 1]")
    rng = random.Random(seed)
    und: set[tuple[int, int]] = set()
    out_adj: list[set[int]] = [set() for _ in range(n)]
    in_adj: list[set[int]] = [set() for _ in range(n)]
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() >= p:
                continue
            if rng.random() < q:
                if rng.random() < 0.5:
                    out_adj[u].add(v)
                    in_adj[v].add(u)
                else:
                    out_adj[v].add(u)
                    in_adj[u].add(v)
            else:
                und.add((u, v))

    # Total degree never changes below, so freeze it once.
    und_count = [0] * n
    for a, c in und:
        und_count[a] += 1
        und_count[c] += 1
    total = [len(out_adj[u]) + len(in_adj[u]) + und_count[u] for u in range(n)]

    def undirect(a: int, c: int) -> None:
        out_adj[a].discard(c)
        in_adj[c].discard(a)
        und.add((a, c) if a < c else (c, a))

    for u in range(n):
        cap_out = r.c1 * total[u]
        for v in sorted(out_adj[u]):
            if len(out_adj[u]) <= cap_out:
                break
            undirect(u, v)
        cap_in = r.c2 * total[u]
        for v in sorted(in_adj[u]):
            if len(in_adj[u]) <= cap_in:
                break
            undirect(v, u)

    arcs = [(u, v) for u in range(n) for v in out_adj[u]]
    return validate(n, und, arcs)


def _run_trial(
    n: int,
    p: float,
    q: float,
    r: MixedRatio,
    delta_target: int,
    tries: int,
    trial_seed: int,
) -> tuple[bool, int, float]:
    """(succeeded, tries used on success else 0, xi of the sampled graph)."""
    g = None
    for attempt in range(REJECTION_CAP):
        candidate = random_mixed_graph(n, p, q, r, mix64(trial_seed, attempt))
        if candidate.min_degree >= delta_target:
            g = candidate
            break
    if g is None:
        raise RejectionExhaustedError(n, delta_target, REJECTION_CAP)
    xi = xi_exact(g).value
    lv_seed = mix64(trial_seed, 1 << 40)
    # single-try calls walk the same seed schedule lv_seed + i as one
    # max_tries call would, while exposing which try succeeded
    for i in range(tries):
        try:
            las_vegas_diam2(g, 1, lv_seed + i)
            return True, i + 1, xi
        except ExhaustedError:
            continue
    return False, 0, xi


def threshold_sweep(
    ns: list[int],
    r: MixedRatio,
    deltas: list[int],
    trials: int,
    tries: int,
    seed: int,
    p: float,
    q: float,
    jobs: int = 1,
) -> list[ExperimentRow]:
    """One row per (n, delta_target) grid point, in grid order.

    Each trial rejection-samples a graph with min degree at or above the
    target (up to `REJECTION_CAP` attempts), runs the Las Vegas search, and
    records success plus the graph's first-moment value.
    """
    if not ns or not deltas:
        raise EmptyGridError("sweep needs at least one n and one delta")
    if trials < 1 or tries < 1:
        raise ValueError("trials and tries must be positive")
    grid = [(n, d) for n in ns for d in deltas]
    rows: list[ExperimentRow] = []
    for row_idx, (n, delta_target) in enumerate(grid):
        trial_seeds = [mix64(seed, row_idx, t) for t in range(trials)]

        def one(ts: int) -> tuple[bool, int, float]:
            return _run_trial(n, p, q, r, delta_target, tries, ts)

        if jobs <= 1:
            outcomes = [one(ts) for ts in trial_seeds]
        else:
            from concurrent.futures import ThreadPoolExecutor

            with ThreadPoolExecutor(max_workers=jobs) as pool:
                outcomes = list(pool.map(one, trial_seeds))
        successes = sum(1 for ok, _, _ in outcomes if ok)
        used = [t for ok, t, _ in outcomes if ok]
        mean_tries = sum(used) / len(used) if used else float("nan")
        xi_mean = sum(x for _, _, x in outcomes) / trials
        rows.append(
            ExperimentRow(
                n=n,
                c1=r.c1,
                c2=r.c2,
                delta_target=delta_target,
                trials=trials,
                tries_per_trial=tries,
                successes=successes,
                mean_tries_to_success=mean_tries,
                xi_mean=xi_mean,
                seed=seed,
            )
        )
    return rows


def _fmt(value) -> str:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def rows_to_csv(rows: list[ExperimentRow]) -> str:
    """Versioned CSV: ``schema=1`` line, header, then one line per row."""
    out = io.StringIO()
    out.write("schema=1\n")
    out.write(",".join(CSV_COLUMNS) + "\n")
    for row in rows:
        out.write(",".join(_fmt(getattr(row, col)) for col in CSV_COLUMNS) + "\n")
    return out.getvalue()


def section3_bounds(kind: str, value: int) -> tuple[Fraction, Fraction]:
    """Exact enclosures for the best orientation radius/diameter achievable
    from a bridgeless input of the given radius r or diameter d:
    ``r^2 + r <= g <= 1.5 r^2 + r + 1`` and
    ``d^2/2 + d <= f <= 3 d^2 + 2 d + 2``."""
    if value < 1:
        raise ValueError("radius/diameter must be at least 1")
    v = Fraction(value)
    if kind == "radius":
        return v * v + v, Fraction(3, 2) * v * v + v + 1
    if kind == "diameter":
        return v * v / 2 + v, 3 * v * v + 2 * v + 2
    raise ValueError("kind must be 'radius' or 'diameter'")

"""Exact query-cost recursion of the layered search algorithm.

The algorithm on a sublattice with coordinate spans d_1..d_n and layer
weights W_1 < ... < W_{K+1} (W_{K+1} = floor(span/2)):

* if two consecutive weights collide, it falls back to classical DP,
  costing one query per edge of the sublattice;
* otherwise it pays the two-sided precalculation up to weight W_1 and,
  for each level k, a composed search over monotone vertex chains
  v(k) <= ... <= v(K+1) through the layers, where each chain carries the
  recursive cost of the sublattice between v(k) and v(k+1); composing
  searches turns the per-level sums into one square root of the summed
  squared chain costs.

So  cost = precalc + 2 * sum_k sqrt( sum_chains cost(sub)^2 ).

``simulate_cost_naive`` enumerates chains vertex by vertex (tiny
instances); ``simulate_cost_profile`` computes the same number by
memoizing on difference profiles and aggregating chain multiplicities
with per-coordinate difference markers.  Both count a query once per
edge at the classical bottom.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .lattice import cut_edge_count
from .optimizer import AlphaSchedule
from .polynomials import LatticeProfile, iter_layer_tuples

NAIVE_STATE_BUDGET = 10**5
PROFILE_MEMO_BUDGET = 10**6


@dataclass(frozen=True)
class CostSchedule:
    """Level fractions plus the weight rounding mode.

    With ``flooring`` the level weights are floor(sum_d alpha_{k,d} d n_d);
    otherwise they round to the nearest integer.  The middle layer always
    sits at floor(span / 2).
    """

    schedule: AlphaSchedule
    flooring: bool = True

    @property
    def K(self) -> int:
        return self.schedule.K


@dataclass
class CostDetail:
    total: float
    depth: int
    precalc: float
    streams: tuple[float, ...]
    classical: bool


@dataclass
class CostReport:
    profile: LatticeProfile
    total: float
    precalc: float
    search_levels: list[float]
    depth: int
    memo_size: int
    weights: list[int]
    classical_fallback: bool


class MemoBudgetError(RuntimeError):
    pass


def _level_weights(profile: LatticeProfile, cost_schedule: CostSchedule) -> list[int]:
    alpha = cost_schedule.schedule.alpha
    weights = []
    for k in range(cost_schedule.K):
        y = sum(
            alpha[k][d - 1] * d * profile.counts[d]
            for d in range(1, profile.D + 1)
            if profile.counts[d]
        )
        weights.append(math.floor(y) if cost_schedule.flooring else math.floor(y + 0.5))
    weights.append(profile.span // 2)
    return weights


def classical_edge_count(profile: LatticeProfile) -> int:
    """Queries of the classical DP: one per directed edge."""
    verts = profile.num_vertices()
    return sum(
        count * d * (verts // (d + 1)) for d, count in enumerate(profile.counts)
    )


def _precalc_queries(profile: LatticeProfile, W1: int) -> int:
    """Two-sided precalculation: incoming edges of weights 1..W1, doubled."""
    return 2 * sum(cut_edge_count(profile, w) for w in range(W1))


def _normalize(counts) -> tuple[int, ...]:
    """Memo key: drop inert zero-span coordinates and trailing empty digits."""
    cs = list(counts)
    cs[0] = 0
    while len(cs) > 1 and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _require_schedule_covers(profile: LatticeProfile, cost_schedule: CostSchedule):
    if cost_schedule.schedule.D < profile.D:
        raise ValueError(
            f"schedule covers digits up to {cost_schedule.schedule.D}, "
            f"profile needs {profile.D}"
        )


def _report(profile, detail: CostDetail, memo_size, weights) -> CostReport:
    return CostReport(
        profile=profile,
        total=detail.total,
        precalc=detail.precalc,
        search_levels=[2.0 * s for s in detail.streams],
        depth=detail.depth,
        memo_size=memo_size,
        weights=weights,
        classical_fallback=detail.classical,
    )


def simulate_cost_profile(
    profile: LatticeProfile,
    cost_schedule: CostSchedule,
    memo_budget: int = PROFILE_MEMO_BUDGET,
) -> CostReport:
    """Cost recursion memoized on difference profiles.

    Chain multiplicities come from a sparse product over coordinates of
    the per-level value tuples, keyed by (layer weights, difference
    counts); only keys with weights at most the targets survive.
    """
    _require_schedule_covers(profile, cost_schedule)
    K = cost_schedule.K
    memo: dict[tuple[int, ...], CostDetail] = {}

    def chain_sums(counts: tuple[int, ...], weights: list[int], k: int):
        """Map difference profile -> number of monotone chains k..K+1."""
        targets = tuple(weights[k - 1 :])
        levels = len(targets)
        D_here = len(counts) - 1
        acc: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {
            ((0,) * levels, (0,) * (D_here + 1)): 1
        }
        for d in range(len(counts)):
            step = list(iter_layer_tuples(d, k, K))
            for _ in range(counts[d]):
                nxt: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}
                for (w, m), mult in acc.items():
                    for gap, tup in step:
                        w2 = tuple(a + b for a, b in zip(w, tup))
                        if any(a > t for a, t in zip(w2, targets)):
                            continue
                        m2 = list(m)
                        m2[gap] += 1
                        key = (w2, tuple(m2))
                        nxt[key] = nxt.get(key, 0) + mult
                if len(nxt) > memo_budget:
                    raise MemoBudgetError(
                        f"chain aggregation exceeded {memo_budget} keys"
                    )
                acc = nxt
        return {m: mult for (w, m), mult in acc.items() if w == targets}

    def cost(counts: tuple[int, ...]) -> CostDetail:
        counts = _normalize(counts)
        if counts in memo:
            return memo[counts]
        if len(memo) >= memo_budget:
            raise MemoBudgetError(f"profile memo exceeded {memo_budget} entries")
        prof = LatticeProfile(counts)
        span = prof.span
        if span == 0:
            detail = CostDetail(0.0, 0, 0.0, (), False)
        else:
            weights = _level_weights(prof, cost_schedule)
            if any(a >= b for a, b in zip(weights, weights[1:])):
                detail = CostDetail(
                    float(classical_edge_count(prof)), 0, 0.0, (), True
                )
            else:
                precalc = float(_precalc_queries(prof, weights[0]))
                depth = 0
                streams = []
                for k in range(1, K + 1):
                    squares = 0.0
                    for m, mult in chain_sums(counts, weights, k).items():
                        sub = cost(m)
                        if sub.total:
                            squares += mult * sub.total * sub.total
                            depth = max(depth, sub.depth)
                    streams.append(math.sqrt(squares))
                total = precalc + 2.0 * sum(streams)
                detail = CostDetail(total, depth + 1, precalc, tuple(streams), False)
        memo[counts] = detail
        return detail

    detail = cost(_normalize(profile.counts))
    weights = _level_weights(profile, cost_schedule) if profile.span else []
    return _report(profile, detail, len(memo), weights)


def simulate_cost_naive(
    profile: LatticeProfile,
    cost_schedule: CostSchedule,
    state_budget: int = NAIVE_STATE_BUDGET,
) -> CostReport:
    """Cost recursion with explicit chain enumeration (tiny instances).

    Independent of the profile aggregation: layers are materialized as
    vertex tuples and chains checked coordinatewise.
    """
    _require_schedule_covers(profile, cost_schedule)
    if profile.num_vertices() > state_budget:
        raise ValueError(
            f"instance too large for explicit enumeration "
            f"({profile.num_vertices()} > {state_budget} states)"
        )
    K = cost_schedule.K
    memo: dict[tuple[int, ...], CostDetail] = {}

    def cost(dims: tuple[int, ...]) -> CostDetail:
        key = tuple(sorted(d for d in dims if d > 0))
        if key in memo:
            return memo[key]
        span = sum(key)
        if span == 0:
            detail = CostDetail(0.0, 0, 0.0, (), False)
        else:
            prof = LatticeProfile.from_dims(key)
            weights = _level_weights(prof, cost_schedule)
            verts = list(itertools.product(*(range(d + 1) for d in key)))
            if any(a >= b for a, b in zip(weights, weights[1:])):
                edges = sum(sum(1 for c in v if c > 0) for v in verts)
                detail = CostDetail(float(edges), 0, 0.0, (), True)
            else:
                precalc = 2.0 * sum(
                    sum(1 for c in v if c > 0)
                    for v in verts
                    if 1 <= sum(v) <= weights[0]
                )
                depth = 0
                streams = []
                for k in range(1, K + 1):
                    level_sets = [
                        [v for v in verts if sum(v) == w] for w in weights[k - 1 :]
                    ]
                    squares = 0.0
                    for chain in itertools.product(*level_sets):
                        if not all(
                            all(a <= b for a, b in zip(u, v))
                            for u, v in zip(chain, chain[1:])
                        ):
                            continue
                        diff = tuple(b - a for a, b in zip(chain[0], chain[1]))
                        sub = cost(diff)
                        if sub.total:
                            squares += sub.total * sub.total
                            depth = max(depth, sub.depth)
                    streams.append(math.sqrt(squares))
                total = precalc + 2.0 * sum(streams)
                detail = CostDetail(total, depth + 1, precalc, tuple(streams), False)
        memo[key] = detail
        return detail

    detail = cost(profile.dims())
    weights = _level_weights(profile, cost_schedule) if profile.span else []
    return _report(profile, detail, len(memo), weights)


def compare_to_ansatz(
    profile: LatticeProfile,
    cost_schedule: CostSchedule,
    T: tuple[float, ...],
) -> float:
    """Simulated cost over the product ansatz prod_d T_d^{n_d}.

    ``T`` holds T_1..T_D for the digits the profile uses.  An empty
    profile has cost 0 and ratio 0.
    """
    if profile.n == 0 or profile.span == 0:
        return 0.0
    if len(T) < profile.D:
        raise ValueError(f"need T_1..T_{profile.D}")
    report = simulate_cost_profile(profile, cost_schedule)
    ansatz = 1.0
    for d in range(1, profile.D + 1):
        ansatz *= T[d - 1] ** profile.counts[d]
    return report.total / ansatz

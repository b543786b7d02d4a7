"""Exact Set Multicover solvers.

SMC asks for the fewest sets (repetition allowed) from a family over [n]
covering every element at least D times.  Three routes:

* ``smc_dp``       -- DP over demand vectors x in {0..D}^n:
                      dp(x) = 1 + min_S dp(max(x - chi(S), 0)).
* ``smc_dp_pairs`` -- the pair-state reduction over (x, S) whose
                      transitions decrement one coordinate at a time,
                      walking the lattice transition graph edge by edge.
* ``smc_bruteforce`` -- iterative deepening over multisets of sets.

Demand vectors are indexed mixed-radix; missing transitions saturate at
INFEASIBLE, a distinguished value safe under minimum and +1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

INFEASIBLE = np.iinfo(np.int64).max // 2  # saturating "no finite cover"


@dataclass(frozen=True)
class SmcInstance:
    """Element count n, subsets of [n] (1-based elements), demand D."""

    n: int
    sets: tuple[frozenset[int], ...]
    D: int

    def __post_init__(self):
        if self.n < 0 or self.D < 0:
            raise ValueError("need n >= 0 and D >= 0")
        for s in self.sets:
            if not s:
                raise ValueError("sets must be non-empty")
            if not all(1 <= e <= self.n for e in s):
                raise ValueError(f"set {sorted(s)} leaves [1, {self.n}]")

    @staticmethod
    def make(n: int, sets: Sequence[Sequence[int]], D: int) -> "SmcInstance":
        return SmcInstance(n, tuple(frozenset(s) for s in sets), D)

    @property
    def m(self) -> int:
        return len(self.sets)

    def coverable(self) -> bool:
        """Every element belongs to at least one set (or nothing is demanded)."""
        if self.D == 0 or self.n == 0:
            return True
        covered = set().union(*self.sets) if self.sets else set()
        return all(i in covered for i in range(1, self.n + 1))

    def to_json(self) -> str:
        return json.dumps(
            {"n": self.n, "D": self.D, "sets": [sorted(s) for s in self.sets]}
        )

    @staticmethod
    def from_json(text: str) -> "SmcInstance":
        data = json.loads(text)
        return SmcInstance.make(int(data["n"]), data["sets"], int(data["D"]))


def _digit_arrays(n: int, D: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(radix, digits[state, coord], weight[state]) for {0..D}^n states."""
    radix = (D + 1) ** np.arange(n, dtype=np.int64)
    size = (D + 1) ** n
    idx = np.arange(size, dtype=np.int64)
    digits = (idx[:, None] // radix[None, :]) % (D + 1)
    return radix, digits, digits.sum(axis=1)


def smc_dp(instance: SmcInstance) -> int | None:
    """Minimal cover size via the demand-vector DP; None if infeasible.

    States are processed by total demand weight; a set application maps
    x to x' with x'_i = max(0, x_i - chi(S)_i), strictly reducing the
    weight whenever the set touches a positive demand.
    """
    n, D = instance.n, instance.D
    if D == 0 or n == 0:
        return 0
    if not instance.coverable():
        return None
    radix, digits, weight = _digit_arrays(n, D)
    masks = [
        np.array([1 if (i + 1) in s else 0 for i in range(n)], dtype=np.int64)
        for s in instance.sets
    ]
    dp = np.full((D + 1) ** n, INFEASIBLE, dtype=np.int64)
    dp[0] = 0
    for w in range(1, n * D + 1):
        sel = np.nonzero(weight == w)[0]
        if len(sel) == 0:
            continue
        best = np.full(len(sel), INFEASIBLE, dtype=np.int64)
        dsel = digits[sel]
        for mask in masks:
            drop = ((dsel > 0) & (mask[None, :] > 0)) @ radix
            covered = drop > 0  # the set must reduce something
            target = sel - drop
            cand = np.where(covered, dp[target] + 1, INFEASIBLE)
            best = np.minimum(best, cand)
        dp[sel] = best
    answer = int(dp[-1])
    return None if answer >= INFEASIBLE else answer


def smc_dp_pairs(instance: SmcInstance) -> int | None:
    """Minimal cover size via the pair-state reduction; None if infeasible.

    A selection of set S is unrolled into unit steps covering its
    positive-demand elements in increasing order, so every transition
    decrements exactly one coordinate and the state graph is the lattice
    transition graph.  The state is (x, S, p) with p the progress of the
    active selection inside sorted(S): the progress register keeps one
    selection from covering the same element twice, which the bare pivot
    min{i in S : x_i > 0} cannot rule out once demands exceed 1.

    dp(x, S, p): x = 0 costs 0; the free step covers the least element of
    S at or past p with positive demand; an exhausted selection pays 1
    and switches to the best set whose pivot exists.  The answer charges
    the first selection too.
    """
    n, D, m = instance.n, instance.D, instance.m
    if D == 0 or n == 0:
        return 0
    if not instance.coverable():
        return None
    radix, digits, weight = _digit_arrays(n, D)
    elems = [np.array(sorted(s)) - 1 for s in instance.sets]  # 0-based coords
    size = (D + 1) ** n
    width = max(len(e) for e in elems) + 1
    dp = np.full((size, m, width), INFEASIBLE, dtype=np.int64)
    dp[0, :, :] = 0

    def switch_value(state: int, row: np.ndarray) -> int:
        best = INFEASIBLE
        for j, coords in enumerate(elems):
            pos = coords[row[coords] > 0]
            if len(pos):
                q = int(np.nonzero(coords == pos[0])[0][0])
                best = min(best, dp[state - radix[pos[0]], j, q + 1] + 1)
        return best

    order = np.argsort(weight, kind="stable")
    for state in order[weight[order] > 0]:
        row = digits[state]
        switch = switch_value(state, row)
        for j, coords in enumerate(elems):
            for p in range(len(coords), -1, -1):
                tail = coords[p:]
                pos = tail[row[tail] > 0]
                if len(pos):
                    q = p + int(np.nonzero(tail == pos[0])[0][0])
                    dp[state, j, p] = dp[state - radix[pos[0]], j, q + 1]
                else:
                    dp[state, j, p] = switch
    answer = int(switch_value(size - 1, digits[-1]))
    return None if answer >= INFEASIBLE else answer


def iter_pair_transitions(
    instance: SmcInstance,
) -> Iterator[tuple[tuple[tuple[int, ...], int], tuple[tuple[int, ...], int]]]:
    """Transitions ((x, S) -> (x', T)) the pair reduction relies on.

    Progress registers are dropped from the yielded states; what matters
    structurally is that every transition is a unit step of the demand
    vector.
    """
    n, D, m = instance.n, instance.D, instance.m
    if D == 0 or n == 0:
        return
    radix, digits, weight = _digit_arrays(n, D)
    elems = [np.array(sorted(s)) - 1 for s in instance.sets]
    for state in range(1, (D + 1) ** n):
        row = digits[state]
        for j, coords in enumerate(elems):
            # free steps from any progress position of the active set
            for p in range(len(coords)):
                tail = coords[p:]
                pos = tail[row[tail] > 0]
                if len(pos):
                    target = state - radix[pos[0]]
                    yield (tuple(row), j), (tuple(digits[target]), j)
            # paid switches to every set whose pivot exists
            for t, tcoords in enumerate(elems):
                pos = tcoords[row[tcoords] > 0]
                if len(pos):
                    target = state - radix[pos[0]]
                    yield (tuple(row), j), (tuple(digits[target]), t)


def smc_bruteforce(instance: SmcInstance, k_max: int = 8) -> int | None:
    """Iterative deepening over multisets of sets; exact up to k_max.

    Returns the minimal cover size, or None when it exceeds ``k_max``
    (in particular for infeasible instances).
    """
    n, D = instance.n, instance.D
    if D == 0 or n == 0:
        return 0
    masks = [
        tuple(1 if (i + 1) in s else 0 for i in range(n)) for s in instance.sets
    ]
    if not masks:
        return None

    def covers(demand: tuple[int, ...], k: int, start: int) -> bool:
        if all(d == 0 for d in demand):
            return True
        if k == 0:
            return False
        if sum(demand) > k * max(sum(m) for m in masks):
            return False
        for j in range(start, len(masks)):
            reduced = tuple(
                max(0, d - c) for d, c in zip(demand, masks[j])
            )
            # a set touching no positive demand never helps
            if reduced != demand and covers(reduced, k - 1, j):
                return True
        return False

    full = tuple(D for _ in range(n))
    for k in range(k_max + 1):
        if covers(full, k, 0):
            return k
    return None

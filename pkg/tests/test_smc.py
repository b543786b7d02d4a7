import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lattice_speedup.smc import (
    SmcInstance,
    iter_pair_transitions,
    smc_bruteforce,
    smc_dp,
    smc_dp_pairs,
)


def inst(n, sets, D):
    return SmcInstance.make(n, sets, D)


def test_disjoint_singletons():
    assert smc_dp(inst(2, [[1], [2]], 1)) == 2


def test_full_set_twice():
    for n in (1, 3, 5):
        assert smc_dp(inst(n, [list(range(1, n + 1))], 2)) == 2


def test_triangle_cover():
    # three pair-sets over three elements, demand 2: brute force says 3
    instance = inst(3, [[1, 2], [2, 3], [1, 3]], 2)
    assert smc_bruteforce(instance) == 3
    assert smc_dp(instance) == 3
    assert smc_dp_pairs(instance) == 3


def test_pairs_reproduces_dp_examples():
    cases = [
        inst(2, [[1], [2]], 1),
        inst(3, [[1, 2, 3]], 2),
        inst(3, [[1, 2], [2, 3], [1, 3]], 2),
    ]
    for c in cases:
        assert smc_dp_pairs(c) == smc_dp(c)


def test_single_set_instances():
    # a single set must be [n] to be feasible; then the answer is D
    assert smc_dp(inst(3, [[1, 2, 3]], 4)) == 4
    assert smc_dp(inst(3, [[1, 2]], 2)) is None
    assert smc_dp_pairs(inst(3, [[1, 2]], 2)) is None


def test_demand_zero():
    assert smc_dp(inst(3, [[1]], 0)) == 0
    assert smc_dp_pairs(inst(3, [[1]], 0)) == 0
    assert smc_bruteforce(inst(3, [[1]], 0)) == 0


def test_infeasible_exceeds_any_budget():
    instance = inst(2, [[1]], 1)
    assert smc_dp(instance) is None
    assert smc_dp_pairs(instance) is None
    assert smc_bruteforce(instance, k_max=6) is None


def test_pair_transitions_step_one_coordinate():
    instance = inst(3, [[1, 2], [2, 3]], 2)
    seen = 0
    for (x, _), (y, _) in iter_pair_transitions(instance):
        diffs = [a - b for a, b in zip(x, y)]
        assert sum(diffs) == 1
        assert diffs.count(1) == 1 and diffs.count(0) == len(x) - 1
        seen += 1
    assert seen > 0


def random_instances(rng_seed, count, n_max=4, m_max=4, D_max=3):
    import random

    rng = random.Random(rng_seed)
    out = []
    while len(out) < count:
        n = rng.randint(1, n_max)
        m = rng.randint(1, m_max)
        D = rng.randint(0, D_max)
        sets = []
        for _ in range(m):
            members = [i for i in range(1, n + 1) if rng.random() < 0.5]
            if not members:
                members = [rng.randint(1, n)]
            sets.append(members)
        out.append(inst(n, sets, D))
    return out


def test_three_solvers_agree_on_random_grid():
    for instance in random_instances(11, 200):
        a = smc_dp(instance)
        b = smc_dp_pairs(instance)
        assert a == b, instance
        brute = smc_bruteforce(instance, k_max=8)
        if a is None or a > 8:
            assert brute is None
        else:
            assert brute == a, instance


def test_dp_monotone_in_demand():
    # componentwise larger demand vector cannot need fewer sets; checked
    # through scaling D on a fixed family
    sets = [[1, 2], [2, 3], [3, 4], [1, 4]]
    answers = [smc_dp(inst(4, sets, D)) for D in range(0, 4)]
    assert answers == sorted(answers)


@given(st.integers(0, 3), st.integers(1, 3))
@settings(max_examples=40, deadline=None)
def test_answer_at_most_D_times_single_cover(D, seed):
    for instance in random_instances(seed, 5, n_max=3, m_max=3, D_max=0):
        base = SmcInstance(instance.n, instance.sets, 1)
        scaled = SmcInstance(instance.n, instance.sets, D)
        one = smc_dp(base)
        many = smc_dp(scaled)
        if one is None:
            assert D == 0 or many is None
        elif many is not None:
            assert many <= D * one
            max_size = max(len(s) for s in scaled.sets)
            assert many >= -(-D * scaled.n // max_size)  # ceil lower bound


def test_validation():
    with pytest.raises(ValueError):
        SmcInstance.make(2, [[]], 1)
    with pytest.raises(ValueError):
        SmcInstance.make(2, [[3]], 1)


def test_json_roundtrip():
    instance = inst(4, [[1, 2], [3, 4]], 2)
    again = SmcInstance.from_json(instance.to_json())
    assert again == instance
    assert smc_dp(again) == smc_dp(instance)

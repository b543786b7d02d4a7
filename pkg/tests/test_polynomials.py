import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lattice_speedup.polynomials import (
    LatticeProfile,
    MultiPoly,
    UniPoly,
    build_P,
    build_S_k,
    build_S_kd,
    coeff,
    iter_layer_tuples,
    layer_size,
    multi_coeff,
)

profiles_small = st.builds(
    lambda counts: LatticeProfile(tuple(counts)),
    st.lists(st.integers(0, 3), min_size=1, max_size=4).filter(
        lambda c: 1 <= sum(c) <= 6
    ),
)


def enumerate_layer(profile: LatticeProfile, W: int) -> int:
    dims = profile.dims()
    return sum(
        1 for v in itertools.product(*(range(d + 1) for d in dims)) if sum(v) == W
    )


def test_build_P_two_squares():
    # (1 + x + x^2)^2 expanded by hand
    assert build_P(LatticeProfile((0, 0, 2))) == UniPoly([1, 2, 3, 2, 1])


def test_build_P_single_factor():
    assert build_P(LatticeProfile((0, 1))) == UniPoly([1, 1])


@given(profiles_small)
def test_build_P_at_one_counts_vertices(profile):
    assert build_P(profile)(1.0) == profile.num_vertices()


def test_layer_size_examples():
    assert layer_size(LatticeProfile((0, 0, 2)), 2) == 3
    assert layer_size(LatticeProfile((0, 0, 2)), 0) == 1
    assert layer_size(LatticeProfile((0, 4)), 2) == 6  # C(4, 2) over {0,1}^4


def test_coeff_out_of_range_is_zero():
    p = build_P(LatticeProfile((0, 2)))
    assert coeff(p, -1) == 0
    assert coeff(p, 99) == 0


@given(profiles_small)
@settings(max_examples=60)
def test_layer_size_matches_enumeration(profile):
    for W in range(profile.span + 1):
        assert layer_size(profile, W) == enumerate_layer(profile, W)


@given(profiles_small)
@settings(max_examples=60)
def test_layer_sizes_symmetric_and_unimodal(profile):
    span = profile.span
    sizes = [layer_size(profile, W) for W in range(span + 1)]
    assert sizes == sizes[::-1]
    for W in range(span // 2):
        assert sizes[W] <= sizes[W + 1]


def test_S_kd_hypercube_coordinate():
    # d=1, k=K=1, variables (y, z): T0^2 (1 + yz) + T1^2 z
    poly = build_S_kd(1, 1, 1, (1.0, 3.0))
    assert poly.terms == {(0, 0): 1.0, (1, 1): 1.0, (0, 1): 9.0}


def test_S_kd_constant_coordinate():
    poly = build_S_kd(0, 1, 2, (1.0,))
    assert poly.terms == {(0, 0, 0): 1.0}


@pytest.mark.parametrize("d,k,K", [(1, 1, 1), (2, 1, 1), (2, 1, 2), (3, 2, 2)])
def test_S_kd_coefficient_sum_counts_tuples(d, k, K):
    length = K + 2 - k
    tuples = [
        t
        for t in itertools.product(range(d + 1), repeat=length)
        if all(t[i] <= t[i + 1] for i in range(length - 1))
    ]
    poly = build_S_kd(d, k, K, [1.0] * (d + 1))
    assert poly.coefficient_sum() == pytest.approx(len(tuples))


def test_S_kd_rejects_bad_T():
    with pytest.raises(ValueError):
        build_S_kd(2, 1, 1, (1.0, 0.5, 1.0))
    with pytest.raises(ValueError):
        build_S_kd(2, 1, 1, (1.0,))


def test_S_k_two_hypercube_coordinates():
    # (1 + yz + z)^2 expanded by hand
    poly = build_S_k(LatticeProfile((0, 2)), 1, 1, (1.0, 1.0))
    assert poly.terms == {
        (0, 0): 1.0,
        (1, 1): 2.0,
        (0, 1): 2.0,
        (2, 2): 1.0,
        (1, 2): 2.0,
        (0, 2): 1.0,
    }


def test_S_k_single_coordinate_reduces_to_S_kd():
    one = build_S_k(LatticeProfile((0, 0, 1)), 1, 2, (1.0, 2.0, 2.0))
    assert one == build_S_kd(2, 1, 2, (1.0, 2.0, 2.0))


def test_S_k_zero_exponent_coefficient_is_one():
    poly = build_S_k(LatticeProfile((1, 2, 1)), 1, 1, (1.0, 1.0, 1.0))
    assert multi_coeff(poly, (0, 0)) == 1.0


def test_multi_coeff_counts_weighted_pairs():
    # pairs u <= v in {0,1}^2 with |u| = |v| = 1
    poly = build_S_k(LatticeProfile((0, 2)), 1, 1, (1.0, 1.0))
    assert multi_coeff(poly, (1, 1)) == 2.0


def count_chains(profile: LatticeProfile, k: int, K: int, weights) -> int:
    """Explicit chain enumeration: v(k) <= ... <= v(K+1) with given weights."""
    dims = profile.dims()
    levels = len(weights)
    layers = [
        [
            v
            for v in itertools.product(*(range(d + 1) for d in dims))
            if sum(v) == w
        ]
        for w in weights
    ]
    count = 0
    for chain in itertools.product(*layers):
        ok = all(
            all(a <= b for a, b in zip(chain[j], chain[j + 1]))
            for j in range(levels - 1)
        )
        if ok:
            count += 1
    return count


@pytest.mark.parametrize(
    "counts,k,K",
    [
        ((0, 2), 1, 1),
        ((0, 3), 1, 1),
        ((0, 1, 1), 1, 1),
        ((0, 0, 2), 1, 2),
        ((1, 2, 1), 2, 2),
        ((0, 4), 1, 2),
    ],
)
def test_S_k_coefficients_count_chains(counts, k, K):
    profile = LatticeProfile(counts)
    T = [1.0] * (profile.D + 1)
    poly = build_S_k(profile, k, K, T)
    levels = K + 2 - k
    span = profile.span
    for weights in itertools.product(range(span + 1), repeat=levels):
        expected = count_chains(profile, k, K, weights)
        assert multi_coeff(poly, weights) == pytest.approx(expected)


def test_S_k_truncation_preserves_target_coefficient():
    profile = LatticeProfile((0, 2, 1))
    T = (1.0, 1.3, 2.1)
    full = build_S_k(profile, 1, 1, T)
    target = (2, 3)
    trimmed = build_S_k(profile, 1, 1, T, truncate=target)
    assert multi_coeff(trimmed, target) == pytest.approx(multi_coeff(full, target))
    assert len(trimmed) <= len(full)


def test_S_k_term_budget_enforced():
    with pytest.raises(ValueError):
        build_S_k(LatticeProfile((0, 12)), 1, 1, (1.0, 1.0), max_terms=10)


def test_iter_layer_tuples_monotone():
    for gap, tup in iter_layer_tuples(3, 1, 2):
        assert all(a <= b for a, b in zip(tup, tup[1:]))
        assert gap == tup[1] - tup[0]


def test_all_coefficients_non_negative():
    poly = build_S_k(LatticeProfile((0, 1, 2)), 1, 2, (1.0, 1.5, 2.5))
    assert all(c >= 0 for c in poly.terms.values())
    P = build_P(LatticeProfile((0, 1, 2)))
    assert all(c >= 0 for c in P.coeffs)

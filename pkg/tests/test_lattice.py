import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lattice_speedup.lattice import (
    CutInstance,
    ExplicitEdges,
    FullLattice,
    MixedRadix,
    PathInstance,
    bfs_path_exists,
    classical_dp_path,
    cut_edge_count,
    cut_instance,
    full_instance,
    instance_from_json,
    instance_to_json,
    random_subgraph,
    total_edge_count,
    weight,
)
from lattice_speedup.polynomials import LatticeProfile


def all_edges(dims):
    for v in itertools.product(*(range(d + 1) for d in dims)):
        for axis, (c, d) in enumerate(zip(v, dims)):
            if c < d:
                yield v, axis


def materialized_edges(oracle, dims):
    """Read the oracle's graph through fresh queries (counter discarded)."""
    return {(v, a) for v, a in all_edges(dims) if oracle.query(v, a)}


def test_full_square_has_path():
    found, queries = classical_dp_path(full_instance((1, 1)))
    assert found
    assert queries <= 2 * 4


def test_square_with_target_cut_off():
    dims = (1, 1)
    blocked = {((0, 1), 0), ((1, 0), 1)}
    edges = {e for e in all_edges(dims)} - blocked
    inst = PathInstance((0, 0), (1, 1), ExplicitEdges(dims, edges))
    found, _ = classical_dp_path(inst)
    assert not found


def test_query_counter_counts_each_query():
    oracle = FullLattice((1, 1))
    oracle.query((0, 0), 0)
    oracle.query((0, 0), 1)
    assert oracle.queries == 2


def test_invalid_edge_queries_rejected():
    oracle = FullLattice((1, 2))
    with pytest.raises(ValueError):
        oracle.query((1, 0), 0)  # coordinate already at its maximum
    with pytest.raises(ValueError):
        oracle.query((0, 0), 2)  # no such axis
    with pytest.raises(ValueError):
        oracle.query((0, 3), 1)  # outside the box
    assert oracle.queries == 0


def test_random_agrees_with_bfs_batch():
    profile = LatticeProfile((0, 0, 3))  # Q(2, 3)
    dims = profile.dims()
    for seed in range(200):
        oracle = random_subgraph(profile, 0.5, seed)
        inst = PathInstance((0,) * 3, dims, oracle)
        found, queries = classical_dp_path(inst)
        edges = {(v, a) for v, a in all_edges(dims) if oracle._present(v, a)}
        assert found == bfs_path_exists(dims, edges)
        assert queries <= len(dims) * profile.num_vertices()


@given(
    dims=st.lists(st.integers(1, 3), min_size=1, max_size=4),
    p=st.floats(0.0, 1.0),
    seed=st.integers(0, 2**32 - 1),
)
@settings(max_examples=150, deadline=None)
def test_dp_matches_bfs_property(dims, p, seed):
    profile = LatticeProfile.from_dims(dims)
    oracle = random_subgraph(profile, p, seed)
    box = profile.dims()
    inst = PathInstance((0,) * len(box), box, oracle)
    found, queries = classical_dp_path(inst)
    edges = {(v, a) for v, a in all_edges(box) if oracle._present(v, a)}
    assert found == bfs_path_exists(box, edges)
    assert queries <= len(box) * profile.num_vertices()


def test_random_p1_matches_full_lattice():
    profile = LatticeProfile((0, 2, 1))
    oracle = random_subgraph(profile, 1.0, 7)
    assert classical_dp_path(
        PathInstance((0, 0, 0), profile.dims(), oracle)
    )[0]


def test_random_p0_has_no_path():
    profile = LatticeProfile((0, 2))
    oracle = random_subgraph(profile, 0.0, 7)
    found, _ = classical_dp_path(PathInstance((0, 0), (1, 1), oracle))
    assert not found


def test_random_subgraph_deterministic_per_seed():
    profile = LatticeProfile((0, 1, 2))
    a = random_subgraph(profile, 0.4, 123)
    b = random_subgraph(profile, 0.4, 123)
    assert (a.present == b.present).all()
    c = random_subgraph(profile, 0.4, 124)
    assert (a.present != c.present).any()


def test_cut_with_marked_edge_connects():
    profile = LatticeProfile((0, 2))
    oracle = cut_instance(profile, 1, marked=0)
    found, _ = classical_dp_path(PathInstance((0, 0), (1, 1), oracle))
    assert found


def test_cut_without_marked_edge_disconnects():
    profile = LatticeProfile((0, 2))
    oracle = cut_instance(profile, 1, marked=None)
    found, _ = classical_dp_path(PathInstance((0, 0), (1, 1), oracle))
    assert not found


def test_cut_marked_out_of_range():
    profile = LatticeProfile((0, 2))
    size = cut_edge_count(profile, 1)
    with pytest.raises(ValueError):
        cut_instance(profile, 1, marked=size)


@pytest.mark.parametrize("D,n", [(1, 2), (1, 4), (2, 3), (3, 2)])
def test_cut_sizes_sum_to_total_edges(D, n):
    counts = [0] * (D + 1)
    counts[D] = n
    profile = LatticeProfile(tuple(counts))
    total = sum(cut_edge_count(profile, W) for W in range(profile.span))
    assert total == (D + 1) ** (n - 1) * D * n
    assert total == total_edge_count(profile)


def test_cut_edge_count_matches_enumeration():
    profile = LatticeProfile((1, 1, 1))
    dims = profile.dims()
    for W in range(profile.span):
        explicit = sum(1 for v, a in all_edges(dims) if weight(v) == W)
        assert cut_edge_count(profile, W) == explicit


def test_every_marked_cut_edge_restores_path():
    profile = LatticeProfile((0, 1, 1))
    W = 1
    for marked in range(cut_edge_count(profile, W)):
        oracle = cut_instance(profile, W, marked)
        inst = PathInstance((0, 0), profile.dims(), oracle)
        assert classical_dp_path(inst)[0]


@given(dims=st.lists(st.integers(0, 3), min_size=1, max_size=4))
def test_mixed_radix_roundtrip(dims):
    radix = MixedRadix(dims)
    for idx in range(radix.size):
        assert radix.index(radix.coords(idx)) == idx


def test_rebased_instance_queries_absolute_coordinates():
    # sublattice of Q(3, 1) from s=(1,) to t=(3,): only absolute edges matter
    dims = (3,)
    edges = {((1,), 0), ((2,), 0)}
    inst = PathInstance((1,), (3,), ExplicitEdges(dims, edges))
    assert classical_dp_path(inst)[0]
    inst2 = PathInstance((0,), (2,), ExplicitEdges(dims, edges))
    found, _ = classical_dp_path(inst2)
    assert not found  # edge (0,)->(1,) absent in absolute coordinates


def test_instance_json_roundtrip_explicit():
    dims = (1, 2)
    edges = {((0, 0), 0), ((0, 0), 1), ((0, 1), 1), ((1, 0), 1), ((1, 1), 1), ((1, 2), 0)}
    inst = PathInstance((0, 0), dims, ExplicitEdges(dims, edges))
    text = instance_to_json(inst)
    loaded = instance_from_json(text)
    assert loaded.dims == dims
    assert classical_dp_path(loaded)[0] == classical_dp_path(
        PathInstance((0, 0), dims, ExplicitEdges(dims, edges))
    )[0]
    assert loaded.oracle._edges == edges


def test_instance_json_random_schema_deterministic():
    text = '{"profile": [0, 1, 1], "p": 0.5, "seed": 42}'
    a = instance_from_json(text)
    b = instance_from_json(text)
    assert (a.oracle.present == b.oracle.present).all()


def test_instance_json_bad_schema():
    with pytest.raises(ValueError):
        instance_from_json('{"nonsense": 1}')

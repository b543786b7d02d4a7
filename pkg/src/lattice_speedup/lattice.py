"""Lattice graphs, edge oracles, and the classical DP path solver.

The lattice on per-coordinate maxima (d_1, ..., d_n) has vertex set
prod_i {0..d_i} and a directed edge u -> u + e_i whenever u_i < d_i.
Vertices are plain int tuples; DP tables index them as mixed-radix
integers for O(1) lookup.

Edge oracles answer "is the directed edge (u, u + e_i) present?" and
count every query.  Generators below produce the full lattice, explicit
edge sets, seeded random subgraphs, and the adversarial single-layer cut
instances used by query lower bounds.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .polynomials import LatticeProfile, layer_size

Coords = tuple[int, ...]


def weight(v: Sequence[int]) -> int:
    """Vertex weight: the sum of its coordinates."""
    return sum(v)


def componentwise_leq(u: Sequence[int], v: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(u, v))


class MixedRadix:
    """Index arithmetic for vertices of prod_i {0..d_i}."""

    def __init__(self, dims: Sequence[int]):
        self.dims = tuple(int(d) for d in dims)
        self.n = len(self.dims)
        radix = []
        acc = 1
        for d in self.dims:
            radix.append(acc)
            acc *= d + 1
        self.radix = tuple(radix)
        self.size = acc

    def index(self, v: Sequence[int]) -> int:
        idx = 0
        for c, r, d in zip(v, self.radix, self.dims):
            if not 0 <= c <= d:
                raise ValueError(f"coordinate {c} outside [0, {d}]")
            idx += c * r
        return idx

    def coords(self, idx: int) -> Coords:
        out = []
        for d in self.dims:
            out.append(idx % (d + 1))
            idx //= d + 1
        return tuple(out)

    def vertices(self) -> Iterator[Coords]:
        for idx in range(self.size):
            yield self.coords(idx)


class EdgeOracle:
    """Membership oracle for directed lattice edges, with a query counter.

    Subclasses implement ``_present``.  ``query`` validates that the pair
    (tail, axis) denotes a real edge of the lattice (one coordinate
    incremented by one, within bounds) and bumps the counter exactly once.
    """

    def __init__(self, dims: Sequence[int]):
        self.dims = tuple(int(d) for d in dims)
        self.queries = 0

    def query(self, tail: Sequence[int], axis: int) -> bool:
        if not 0 <= axis < len(self.dims):
            raise ValueError(f"axis {axis} out of range")
        for c, d in zip(tail, self.dims):
            if not 0 <= c <= d:
                raise ValueError(f"tail {tuple(tail)} outside the lattice")
        if tail[axis] >= self.dims[axis]:
            raise ValueError(f"no edge along axis {axis} from {tuple(tail)}")
        self.queries += 1
        return self._present(tuple(tail), axis)

    def _present(self, tail: Coords, axis: int) -> bool:
        raise NotImplementedError


class FullLattice(EdgeOracle):
    """Every edge present."""

    def _present(self, tail: Coords, axis: int) -> bool:
        return True


class ExplicitEdges(EdgeOracle):
    """Edges given as an explicit set of (tail coords, axis) pairs."""

    def __init__(self, dims: Sequence[int], edges: Iterable[tuple[Coords, int]]):
        super().__init__(dims)
        self._edges = {(tuple(t), a) for t, a in edges}

    def _present(self, tail: Coords, axis: int) -> bool:
        return (tail, axis) in self._edges


class RandomSubgraph(EdgeOracle):
    """Each edge present independently with probability p, fixed by seed.

    The whole edge table is materialized up front (desk scale only), so
    repeated queries and independent readers see one consistent graph.
    """

    def __init__(self, dims: Sequence[int], p: float, seed: int):
        super().__init__(dims)
        if not 0.0 <= p <= 1.0:
            raise ValueError("edge probability must lie in [0, 1]")
        self.p = float(p)
        self.seed = int(seed)
        self._radix = MixedRadix(dims)
        rng = np.random.default_rng(self.seed)
        self.present = rng.random((self._radix.size, len(self.dims))) < self.p

    def _present(self, tail: Coords, axis: int) -> bool:
        return bool(self.present[self._radix.index(tail), axis])


class CutInstance(EdgeOracle):
    """All edges outside the layer cut E_W present; inside it, at most one.

    E_W is the set of edges from weight-W tails.  ``marked`` indexes that
    set in lexicographic (tail index, axis) order; ``None`` removes all of
    E_W, disconnecting the endpoints.
    """

    def __init__(self, dims: Sequence[int], W: int, marked: int | None = None):
        super().__init__(dims)
        self.W = int(W)
        self._radix = MixedRadix(dims)
        total = cut_edge_count(LatticeProfile.from_dims(dims), W)
        if marked is not None and not 0 <= marked < total:
            raise ValueError(f"marked index {marked} outside E_W of size {total}")
        self.marked_edge = None
        if marked is not None:
            self.marked_edge = self._locate(marked)

    def _locate(self, marked: int) -> tuple[Coords, int]:
        seen = 0
        for v in self._radix.vertices():
            if weight(v) != self.W:
                continue
            for axis, (c, d) in enumerate(zip(v, self.dims)):
                if c < d:
                    if seen == marked:
                        return v, axis
                    seen += 1
        raise AssertionError("marked index not found despite range check")

    def _present(self, tail: Coords, axis: int) -> bool:
        if weight(tail) != self.W:
            return True
        return (tail, axis) == self.marked_edge


@dataclass
class PathInstance:
    """Source, target, and the edge oracle of a sublattice search.

    ``s < t`` componentwise with s != t; the solver works on the
    re-based box with spans d_i = t_i - s_i, querying the oracle in
    absolute coordinates.
    """

    s: Coords
    t: Coords
    oracle: EdgeOracle

    def __post_init__(self):
        self.s = tuple(self.s)
        self.t = tuple(self.t)
        if len(self.s) != len(self.t):
            raise ValueError("endpoint dimension mismatch")
        if not componentwise_leq(self.s, self.t) or self.s == self.t:
            raise ValueError("need s <= t componentwise with s != t")

    @property
    def dims(self) -> Coords:
        return tuple(b - a for a, b in zip(self.s, self.t))


def full_instance(dims: Sequence[int]) -> PathInstance:
    return PathInstance((0,) * len(dims), tuple(dims), FullLattice(dims))


def classical_dp_path(instance: PathInstance) -> tuple[bool, int]:
    """Bottom-up reachability DP from s to t; returns (found, query count).

    Processes vertices in mixed-radix index order (a topological order,
    since every edge increments one digit) and, for each vertex, queries
    incoming edges lazily from tails already known reachable.  Total
    queries stay below n * prod(d_i + 1).
    """
    dims = instance.dims
    radix = MixedRadix(dims)
    start_queries = instance.oracle.queries
    n = len(dims)

    reachable = np.zeros(radix.size, dtype=bool)
    reachable[0] = True
    for idx in range(1, radix.size):
        v = radix.coords(idx)
        for axis in range(n):
            if v[axis] == 0:
                continue
            u_idx = idx - radix.radix[axis]
            if not reachable[u_idx]:
                continue
            u_abs = tuple(
                c + s if a != axis else v[axis] - 1 + s
                for a, (c, s) in enumerate(zip(v, instance.s))
            )
            if instance.oracle.query(u_abs, axis):
                reachable[idx] = True
                break
    return bool(reachable[radix.size - 1]), instance.oracle.queries - start_queries


def bfs_path_exists(dims: Sequence[int], edges: set[tuple[Coords, int]]) -> bool:
    """Breadth-first search over an explicitly materialized edge set.

    Independent reference for ``classical_dp_path``: no oracle protocol,
    plain frontier expansion from the origin.
    """
    dims = tuple(dims)
    target = dims
    start: Coords = (0,) * len(dims)
    if start == target:
        return True
    seen = {start}
    frontier = [start]
    while frontier:
        nxt: list[Coords] = []
        for u in frontier:
            for axis, (c, d) in enumerate(zip(u, dims)):
                if c >= d or (u, axis) not in edges:
                    continue
                v = u[:axis] + (c + 1,) + u[axis + 1 :]
                if v == target:
                    return True
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return False


def random_subgraph(
    profile: LatticeProfile, edge_probability: float, seed: int
) -> RandomSubgraph:
    """Seeded random subgraph oracle on the profile's canonical box."""
    return RandomSubgraph(profile.dims(), edge_probability, seed)


def cut_instance(
    profile: LatticeProfile, W: int, marked: int | None = None
) -> CutInstance:
    """Adversarial oracle: only the marked edge (if any) crosses layer W."""
    return CutInstance(profile.dims(), W, marked)


def cut_edge_count(profile: LatticeProfile, W: int) -> int:
    """|E_W|: edges from weight-W tails, counted per coordinate type.

    A weight-W tail with value c in a coordinate of maximum d has an
    outgoing edge there iff c < d, so |E_W| = sum over d, c < d of
    (#weight-(W - c) vertices of the profile minus that coordinate).
    """
    total = 0
    for d, count in enumerate(profile.counts):
        if count == 0 or d == 0:
            continue
        reduced = list(profile.counts)
        reduced[d] -= 1
        sub = LatticeProfile(tuple(reduced))
        for c in range(d):
            total += count * layer_size(sub, W - c)
    return total


def total_edge_count(profile: LatticeProfile) -> int:
    """Number of directed edges: sum_i d_i * prod_{j != i} (d_j + 1)."""
    verts = profile.num_vertices()
    return sum(
        count * d * (verts // (d + 1)) for d, count in enumerate(profile.counts)
    )


def instance_to_json(instance: PathInstance) -> str:
    """Serialize an explicit-edge instance.

    Schema: {"d": [d_1..d_n], "edges": [[tail_index, axis], ...]} with
    tail_index the mixed-radix index of the re-based tail vertex.
    """
    oracle = instance.oracle
    if not isinstance(oracle, ExplicitEdges):
        raise TypeError("only explicit-edge instances serialize to the edge schema")
    radix = MixedRadix(instance.dims)
    edges = sorted(
        (radix.index(tuple(c - s for c, s in zip(tail, instance.s))), axis)
        for tail, axis in oracle._edges
    )
    return json.dumps({"d": list(instance.dims), "edges": [list(e) for e in edges]})


def instance_from_json(text: str) -> PathInstance:
    """Load an instance from either the explicit or the random schema.

    Explicit: {"d": [...], "edges": [[tail_index, axis], ...]}.
    Random:   {"profile": [...], "p": float, "seed": int}.
    """
    data = json.loads(text)
    if "edges" in data:
        dims = tuple(int(x) for x in data["d"])
        radix = MixedRadix(dims)
        edges = {(radix.coords(int(i)), int(a)) for i, a in data["edges"]}
        oracle: EdgeOracle = ExplicitEdges(dims, edges)
        return PathInstance((0,) * len(dims), dims, oracle)
    if "profile" in data:
        profile = LatticeProfile(tuple(int(c) for c in data["profile"]))
        oracle = random_subgraph(profile, float(data["p"]), int(data["seed"]))
        dims = profile.dims()
        return PathInstance((0,) * len(dims), dims, oracle)
    raise ValueError("unrecognized instance schema")

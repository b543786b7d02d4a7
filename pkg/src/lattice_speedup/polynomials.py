"""Generating polynomials for layer sizes and layered-search cost.

Two polynomial families are built here:

* ``build_P(profile)`` -- the univariate polynomial whose coefficient at
  x^W counts the vertices of weight W in the lattice described by
  ``profile``.  Coefficients are exact Python integers.

* ``build_S_k(profile, k, K, T)`` -- the sparse multivariate polynomial
  whose coefficient at (W_k, ..., W_{K+1}) aggregates, over all monotone
  vertex chains v(k) <= v(k+1) <= ... <= v(K+1) with those layer weights,
  the product over coordinates of T_i^2 for the per-coordinate gap
  i = v(k+1) - v(k).  With all T_i = 1 the coefficient is the plain chain
  count.

The univariate side is exact integer arithmetic (counts overflow 64 bits
quickly); the multivariate side carries float coefficients since the T_i
weights are reals.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True)
class LatticeProfile:
    """Counts (n_0, ..., n_D) of coordinates by their maximum value.

    The lattice with per-coordinate maxima d_1..d_n is described, up to
    coordinate permutation, by how many coordinates have each maximum.
    """

    counts: tuple[int, ...]

    def __post_init__(self):
        if not self.counts:
            raise ValueError("profile needs at least the n_0 slot")
        if any(c < 0 for c in self.counts):
            raise ValueError("profile counts must be non-negative")

    @property
    def D(self) -> int:
        return len(self.counts) - 1

    @property
    def n(self) -> int:
        return sum(self.counts)

    @property
    def span(self) -> int:
        """Maximum vertex weight, sum of d * n_d."""
        return sum(d * c for d, c in enumerate(self.counts))

    def dims(self) -> tuple[int, ...]:
        """Per-coordinate maxima in canonical (ascending) order."""
        out: list[int] = []
        for d, c in enumerate(self.counts):
            out.extend([d] * c)
        return tuple(out)

    def num_vertices(self) -> int:
        total = 1
        for d, c in enumerate(self.counts):
            total *= (d + 1) ** c
        return total

    @staticmethod
    def from_dims(dims: Sequence[int]) -> "LatticeProfile":
        if any(d < 0 for d in dims):
            raise ValueError("coordinate maxima must be non-negative")
        D = max(dims, default=0)
        counts = [0] * (D + 1)
        for d in dims:
            counts[d] += 1
        return LatticeProfile(tuple(counts))


class UniPoly:
    """Dense univariate polynomial with exact integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        cs = list(coeffs)
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        self.coeffs = cs if cs else [0]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return UniPoly(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __call__(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self) -> str:
        return f"UniPoly({self.coeffs})"


def geometric_factor(d: int) -> UniPoly:
    """1 + x + ... + x^d."""
    return UniPoly([1] * (d + 1))


def build_P(profile: LatticeProfile) -> UniPoly:
    """Product over d of (1 + x + ... + x^d)^{n_d}.

    The coefficient at x^W is the number of weight-W vertices.
    """
    result = UniPoly([1])
    for d, count in enumerate(profile.counts):
        if d == 0 or count == 0:
            continue
        factor = geometric_factor(d)
        for _ in range(count):
            result = result * factor
    return result


def coeff(poly: UniPoly, W: int) -> int:
    """Exact coefficient at x^W; zero outside the support."""
    if W < 0 or W > poly.degree:
        return 0
    return poly.coeffs[W]


def layer_size(profile: LatticeProfile, W: int) -> int:
    """Number of vertices of weight W in the profile's lattice."""
    return coeff(build_P(profile), W)


class MultiPoly:
    """Sparse multivariate polynomial: exponent tuple -> real coefficient."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[tuple[int, ...], float] | None = None):
        self.nvars = nvars
        self.terms = dict(terms) if terms else {}

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __len__(self) -> int:
        return len(self.terms)

    def multiply(
        self,
        other: "MultiPoly",
        truncate: tuple[int, ...] | None = None,
        max_terms: int | None = None,
    ) -> "MultiPoly":
        """Sparse product, dropping exponents above ``truncate`` componentwise.

        Truncation is sound whenever only coefficients at or below
        ``truncate`` will be read: all exponents are non-negative, so a
        partial product already above the target can never come back down.
        """
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        out: dict[tuple[int, ...], float] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                if truncate is not None and any(x > t for x, t in zip(e, truncate)):
                    continue
                out[e] = out.get(e, 0.0) + ca * cb
        if max_terms is not None and len(out) > max_terms:
            raise ValueError(
                f"sparse product exceeded the term budget ({len(out)} > {max_terms}); "
                "profile too large for exact multivariate extraction"
            )
        return MultiPoly(self.nvars, out)

    def coefficient_sum(self) -> float:
        return sum(self.terms.values())

    def __repr__(self) -> str:
        return f"MultiPoly(nvars={self.nvars}, terms={len(self.terms)})"


def multi_coeff(poly: MultiPoly, exponents: Sequence[int]) -> float:
    """Coefficient at the given exponent tuple; zero if absent."""
    return poly.terms.get(tuple(exponents), 0.0)


def iter_layer_tuples(d: int, k: int, K: int) -> Iterator[tuple[int, tuple[int, ...]]]:
    """Yield (gap, (p_k, ..., p_{K+1})) for one coordinate of maximum d.

    Tuples have entries in [0, d], are non-decreasing, and ``gap`` is
    p_{k+1} - p_k.  The non-decreasing condition on the leading pair is
    forced by gap >= 0, so the whole tuple is a monotone chain of the
    coordinate's value across the layers k..K+1.
    """
    if not 1 <= k <= K:
        raise ValueError("need 1 <= k <= K")
    length = K + 2 - k
    for tup in combinations_with_replacement(range(d + 1), length):
        yield tup[1] - tup[0], tup


def build_S_kd(d: int, k: int, K: int, T: Sequence[float]) -> MultiPoly:
    """Single-coordinate factor of the layered-search polynomial.

    Sum over monotone tuples (p_k, ..., p_{K+1}) in [0, d] of
    T_{p_{k+1}-p_k}^2 * prod_j x_{k,j}^{p_j}.  ``T`` must provide
    T_0..T_d with T_0 = 1 and all entries >= 1.
    """
    if len(T) < d + 1:
        raise ValueError(f"need T_0..T_{d}, got {len(T)} entries")
    if any(t < 1.0 for t in T[: d + 1]):
        raise ValueError("T entries must be >= 1")
    nvars = K + 2 - k
    terms: dict[tuple[int, ...], float] = {}
    for gap, tup in iter_layer_tuples(d, k, K):
        terms[tup] = terms.get(tup, 0.0) + float(T[gap]) ** 2
    return MultiPoly(nvars, terms)


def build_S_k(
    profile: LatticeProfile,
    k: int,
    K: int,
    T: Sequence[float],
    truncate: tuple[int, ...] | None = None,
    max_terms: int = 2_000_000,
) -> MultiPoly:
    """Product over coordinates of ``build_S_kd``; see module docstring.

    ``truncate`` caps exponents componentwise (typically at the queried
    layer weights).  Raises if the sparse product outgrows ``max_terms``.
    """
    nvars = K + 2 - k
    result = MultiPoly(nvars, {(0,) * nvars: 1.0})
    for d, count in enumerate(profile.counts):
        if count == 0:
            continue
        factor = build_S_kd(d, k, K, T)
        for _ in range(count):
            result = result.multiply(factor, truncate=truncate, max_terms=max_terms)
    return result

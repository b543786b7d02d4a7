"""Analytic lower-bound quantities for the lattice speedup exponents.

Pins down, as numbers and testable inequalities:

* ``x_of_alpha`` / ``F_alpha`` -- the minimizer and value of
  inf_{x>0} P_D(x) / x^{alpha D} for P_D(x) = 1 + x + ... + x^D, with D
  allowed to be any positive real via the closed form of P_D.
* ``r_infinity`` / ``c_alpha`` -- the large-D limit parameter and the
  limiting ratio F_alpha(D) / (D+1) -> c_alpha, the constant behind the
  (D+1)/e floor on the speedup exponent.
* ``multinomial_layer_count`` -- the balanced-class layer size
  n! / ((n/(D+1))!)^{D+1} and its Stirling lower bound.
* ``search_exponent`` -- the per-unit-n exponent accounting of the
  layered search, which always totals at least 2 ln((D+1)/e).
"""

from __future__ import annotations

import math
from dataclasses import dataclass


def _mean_power(x: float, D: float) -> float:
    """x P_D'(x) / P_D(x): average exponent drawn with weights x^i.

    Closed form D + 1/(1-x) + (D+1)/(x^{D+1} - 1), continuously extended
    by D/2 at x = 1; strictly increasing from 0 to D on (0, inf).
    """
    if abs(x - 1.0) < 1e-9:
        # second-order Taylor expansion around the removable singularity
        return D / 2 + (x - 1.0) * D * (D + 2) / 12.0
    power_term = math.expm1((D + 1) * math.log(x)) if x > 0 else -1.0
    return D + 1.0 / (1.0 - x) + (D + 1) / power_term


def _mean_power_derivative(x: float, D: float) -> float:
    if abs(x - 1.0) < 1e-9:
        return D * (D + 2) / 12.0
    power = math.expm1((D + 1) * math.log(x))
    return 1.0 / (1.0 - x) ** 2 - (D + 1) ** 2 * x**D / power**2


def x_of_alpha(D: float, alpha: float) -> float:
    """Unique root in (0, 1] of mean_power(x) = D * alpha.

    Bisection to 1e-6 then Newton polish; residual lands within a few
    ulps of D*alpha.  alpha = 1/2 returns exactly 1.
    """
    if D <= 0:
        raise ValueError("D must be positive")
    if not 0.0 < alpha <= 0.5:
        raise ValueError("alpha must lie in (0, 1/2]")
    if alpha == 0.5:
        return 1.0
    target = D * alpha
    lo, hi = 1e-12, 1.0 - 1e-12
    while hi - lo > 1e-6:
        mid = (lo + hi) / 2
        if _mean_power(mid, D) < target:
            lo = mid
        else:
            hi = mid
    x = (lo + hi) / 2
    for _ in range(60):
        res = _mean_power(x, D) - target
        if res == 0.0:
            break
        step = res / _mean_power_derivative(x, D)
        x_new = min(max(x - step, lo), hi)
        if x_new == x:
            break
        x = x_new
        if abs(res) < 1e-13 * max(1.0, abs(target)):
            break
    return x


def _P_value(x: float, D: float) -> float:
    """P_D(x) = (x^{D+1} - 1) / (x - 1) for real D, with the x = 1 limit."""
    if abs(x - 1.0) < 1e-12:
        return D + 1.0
    return math.expm1((D + 1) * math.log(x)) / (x - 1.0)


def F_alpha(D: float, alpha: float) -> float:
    """inf_{x > 0} P_D(x) / x^{alpha D}, attained at x_of_alpha(D, alpha)."""
    x = x_of_alpha(D, alpha)
    return _P_value(x, D) / x ** (alpha * D)


def x_alpha_bounds(D: float, alpha: float) -> tuple[float, float]:
    """Closed-form envelope on x_of_alpha for D >= 1:

    alpha/(1-alpha) <= x <= alpha/(1-alpha) * (1 + (1-alpha)D)/(1 + alpha D).
    """
    base = alpha / (1.0 - alpha)
    return base, base * (1.0 + (1.0 - alpha) * D) / (1.0 + alpha * D)


def r_infinity(alpha: float) -> float:
    """Root of 1/(r - alpha) = e^{1/r} - 1 on (alpha, inf).

    Governs the large-D limit of the precalculation bound; e.g.
    r_infinity(0.25) = 0.278279...
    """
    if not 0.0 < alpha < 0.5:
        raise ValueError("alpha must lie in (0, 1/2)")

    def h(r: float) -> float:
        return 1.0 / (r - alpha) - math.expm1(1.0 / r)

    lo, hi = alpha + 1e-12, 1e3
    while hi - lo > 1e-6:
        mid = (lo + hi) / 2
        if h(mid) > 0:
            lo = mid
        else:
            hi = mid
    r = (lo + hi) / 2
    for _ in range(60):
        res = h(r)
        deriv = -1.0 / (r - alpha) ** 2 + math.exp(1.0 / r) / r**2
        step = res / deriv
        r_new = min(max(r - step, lo), hi)
        if r_new == r:
            break
        r = r_new
        if abs(res) < 1e-13:
            break
    return r


def c_alpha(alpha: float) -> float:
    """Limiting ratio F_alpha(D) / (D+1) as D grows.

    c_alpha = r e^{(alpha-1)/r} (e^{1/r} - 1) at r = r_infinity(alpha);
    increasing in alpha, with c_{0.25} = 0.664554... > 1/e.
    """
    r = r_infinity(alpha)
    return r * math.exp((alpha - 1.0) / r) * math.expm1(1.0 / r)


@dataclass
class PrecalcBound:
    """Bundled precalculation-bound quantities for one (D, alpha)."""

    D: float
    alpha: float
    x: float
    F: float

    @staticmethod
    def compute(D: float, alpha: float) -> "PrecalcBound":
        x = x_of_alpha(D, alpha)
        return PrecalcBound(D, alpha, x, _P_value(x, D) / x ** (alpha * D))


@dataclass
class AsymptoticBound:
    alpha: float
    r_inf: float
    c: float

    @staticmethod
    def compute(alpha: float) -> "AsymptoticBound":
        r = r_infinity(alpha)
        return AsymptoticBound(alpha, r, r * math.exp((alpha - 1.0) / r) * math.expm1(1.0 / r))


def multinomial_layer_count(n: int, D: int) -> tuple[int, float]:
    """Balanced middle-layer size n!/((n/(D+1))!)^{D+1} plus Stirling floor.

    Requires (D+1) | n.  The bound is
    sqrt(2 pi n) / e^{D+1} * ((D+1)/n)^{(D+1)/2} * (D+1)^n, and the exact
    count always dominates it.
    """
    if n <= 0 or D < 0:
        raise ValueError("need n >= 1 and D >= 0")
    if n % (D + 1) != 0:
        raise ValueError(f"(D+1) = {D + 1} must divide n = {n}")
    block = n // (D + 1)
    count = math.factorial(n) // math.factorial(block) ** (D + 1)
    log_bound = (
        0.5 * math.log(2 * math.pi * n)
        - (D + 1)
        + 0.5 * (D + 1) * math.log((D + 1) / n)
        + n * math.log(D + 1)
    )
    return count, math.exp(log_bound)


@dataclass
class SearchExponent:
    """Per-unit-n exponent accounting for the layered quantum search.

    ``gamma`` rescales the level fractions of the top digit D:
    gamma = 4*alpha for the deepest level reached, 2 - 4*alpha above it.
    ``log_terms`` maps each layer to its contribution; ``total`` is the
    exponent of the product (middle-layer size times all level counts),
    never below 2 ln((D+1)/e).
    """

    D: int
    gamma: tuple[float, ...]
    log_terms: dict[str, float]
    total: float
    lower: float


def search_exponent(alphaD_profile, D: int) -> SearchExponent:
    """Exponent of S * N_k * ... * N_{K+1} per unit n for a level schedule.

    ``alphaD_profile`` holds (alpha_{k,D}, ..., alpha_{K+1,D}) with the
    first entry at most 1/4, the rest above 1/4, non-decreasing, and the
    last exactly 1/2.
    """
    alphas = tuple(float(a) for a in alphaD_profile)
    if len(alphas) < 2:
        raise ValueError("need at least the deepest level and the middle layer")
    if alphas[0] > 0.25 + 1e-12:
        raise ValueError("deepest level fraction must be at most 1/4")
    if any(a <= 0.25 for a in alphas[1:]):
        raise ValueError("levels above the deepest must exceed 1/4")
    if any(a > b + 1e-12 for a, b in zip(alphas[1:], alphas[2:])):
        raise ValueError("level fractions must be non-decreasing")
    if abs(alphas[-1] - 0.5) > 1e-12:
        raise ValueError("the middle layer sits at fraction 1/2")

    gamma = (4.0 * alphas[0],) + tuple(2.0 - 4.0 * a for a in alphas[1:])
    L = math.lgamma(D + 2) / (D + 1)  # ln((D+1)!)/(D+1)
    log_terms: dict[str, float] = {"middle_layer_count": math.log(D + 1)}
    # intermediate levels: counts telescoping in the gamma gaps
    for i in range(1, len(gamma) - 1):
        log_terms[f"level_{i}_count"] = (gamma[i] - gamma[i + 1]) * L
    g_k, g_next = gamma[0], gamma[1]
    if g_k <= g_next:
        log_terms["deepest_count"] = 0.0
        log_terms["sublattice_size"] = (1.0 - g_next) * L
    else:
        log_terms["deepest_count"] = (g_k - g_next) * L
        log_terms["sublattice_size"] = (1.0 - g_k) * L
    total = sum(log_terms.values())
    lower = 2.0 * math.log((D + 1) / math.e)
    assert total >= lower - 1e-9, "exponent accounting broke the analytic floor"
    return SearchExponent(D, gamma, log_terms, total, lower)

"""Saddle-point infimum for the growth rate of polynomial-power coefficients.

For polynomials p_1..p_D with non-negative coefficients, mixture weights
b_d on the simplex, and target exponents a_{i,d}, the coefficient

    [x_1^{alpha_1 n} ... x_m^{alpha_m n}]  prod_d p_d(x)^{b_d n},
    alpha_i = sum_d a_{i,d} b_d,

is bounded above by bound^n, where

    bound = inf_{x > 0} prod_d (p_d(x) / prod_i x_i^{a_{i,d}})^{b_d},

and bound^n is tight up to sub-exponential factors.  ``saddle_infimum``
computes the infimum by damped Newton in log coordinates u = log x,
where the objective is convex; ``verify_sandwich`` checks the exact
coefficient against the bound at desk scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .polynomials import (
    LatticeProfile,
    MultiPoly,
    build_P,
    build_S_k,
    build_S_kd,
    coeff,
    geometric_factor,
    multi_coeff,
)


class UnboundedBelowError(RuntimeError):
    """The log-objective diverges: targets sit outside the Newton polytope.

    Carries the value estimate along the last descent direction and the
    iterate where the divergence guard fired.
    """

    def __init__(self, message, limiting_value, iterate):
        super().__init__(message)
        self.limiting_value = limiting_value
        self.iterate = iterate
        self.boundary = True


class SaddleConvergenceError(RuntimeError):
    """Gradient tolerance not reached within the iteration budget."""

    def __init__(self, message, best):
        super().__init__(message)
        self.best = best


@dataclass
class SaddleProblem:
    """Polynomial family, target exponents, and mixture weights.

    ``polys[d]`` is a MultiPoly in m variables with non-negative
    coefficients, ``a[d]`` its length-m target exponent row, and ``b[d]``
    its weight; b must lie on the simplex.
    """

    polys: list[MultiPoly]
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        self.a = np.atleast_2d(np.asarray(self.a, dtype=float))
        self.b = np.asarray(self.b, dtype=float)
        if len(self.polys) != len(self.b) or len(self.polys) != self.a.shape[0]:
            raise ValueError("polys, a, b must agree in length")
        if (self.b < 0).any() or abs(self.b.sum() - 1.0) > 1e-12:
            raise ValueError("weights must be non-negative and sum to 1")
        for p in self.polys:
            if not p.terms:
                raise ValueError("each polynomial needs a positive coefficient")
            if any(c < 0 for c in p.terms.values()):
                raise ValueError("polynomial coefficients must be non-negative")
            if p.nvars != self.polys[0].nvars:
                raise ValueError("all polynomials must share the variable set")

    @property
    def nvars(self) -> int:
        return self.polys[0].nvars


@dataclass
class SaddleResult:
    x: np.ndarray
    value: float
    converged: bool
    iterations: int
    gradient_norm: float
    boundary: bool = False


def _term_arrays(poly: MultiPoly):
    exps = np.array(sorted(poly.terms), dtype=float)
    logc = np.array([math.log(poly.terms[tuple(int(v) for v in e)]) for e in exps])
    return exps, logc


def saddle_infimum(
    problem: SaddleProblem,
    tol: float = 1e-10,
    max_iterations: int = 200,
    diverge_norm: float = 80.0,
) -> SaddleResult:
    """Minimize sum_d b_d (log p_d(e^u) - a_d . u) over u, return exp form.

    Damped Newton with backtracking from u = 0; the Hessian is the
    b-mixture of coefficient covariance matrices, so it is PSD and Newton
    steps are descent directions after Tikhonov damping.  Divergence of
    the iterate norm signals an infimum on the boundary (not attained).
    """
    m = problem.nvars
    terms = [_term_arrays(p) for p in problem.polys]
    b = problem.b
    a = problem.a

    def objective(u):
        f = 0.0
        for d, (E, logc) in enumerate(terms):
            if b[d] == 0.0:
                continue
            t = E @ u + logc
            tmax = t.max()
            f += b[d] * (tmax + math.log(np.exp(t - tmax).sum()) - a[d] @ u)
        return f

    def derivatives(u):
        grad = np.zeros(m)
        hess = np.zeros((m, m))
        f = 0.0
        for d, (E, logc) in enumerate(terms):
            if b[d] == 0.0:
                continue
            t = E @ u + logc
            tmax = t.max()
            w = np.exp(t - tmax)
            Z = w.sum()
            w /= Z
            mean = E.T @ w
            grad += b[d] * (mean - a[d])
            hess += b[d] * ((E.T * w) @ E - np.outer(mean, mean))
            f += b[d] * (tmax + math.log(Z) - a[d] @ u)
        return f, grad, hess

    u = np.zeros(m)
    f, grad, hess = derivatives(u)
    gnorm = float(np.linalg.norm(grad))
    for iteration in range(1, max_iterations + 1):
        if gnorm <= tol:
            return SaddleResult(np.exp(u), math.exp(f), True, iteration - 1, gnorm)
        damping = 0.0
        while True:
            try:
                step = np.linalg.solve(hess + damping * np.eye(m), -grad)
            except np.linalg.LinAlgError:
                step = -grad
                break
            if grad @ step < 0:
                break
            # ill-conditioned Hessian: damp, ultimately fall back to gradient
            damping = max(2 * damping, 1e-10)
            if damping > 1e6:
                step = -grad
                break
        scale = 1.0
        slope = grad @ step
        while scale > 2.0**-40:
            f_new = objective(u + scale * step)
            if f_new <= f + 1e-4 * scale * slope:
                break
            scale /= 2
        u = u + scale * step
        if np.abs(u).max() > diverge_norm:
            raise UnboundedBelowError(
                "iterate diverged: target exponents on or outside the support "
                "polytope; infimum not attained",
                limiting_value=math.exp(objective(u)),
                iterate=np.exp(np.clip(u, -700, 700)),
            )
        f, grad, hess = derivatives(u)
        gnorm = float(np.linalg.norm(grad))
    if gnorm <= tol:
        return SaddleResult(np.exp(u), math.exp(f), True, max_iterations, gnorm)
    raise SaddleConvergenceError(
        f"no convergence after {max_iterations} iterations (|grad| = {gnorm:.3e})",
        best=SaddleResult(np.exp(u), math.exp(f), False, max_iterations, gnorm),
    )


def layer_saddle_problem(profile: LatticeProfile, alpha: float) -> SaddleProblem:
    """Single-variable problem bounding [x^{alpha n}] of the layer polynomial."""
    polys, a, b = [], [], []
    n = profile.n
    if n == 0:
        raise ValueError("empty profile")
    for d, count in enumerate(profile.counts):
        if count == 0:
            continue
        factor = geometric_factor(d)
        polys.append(MultiPoly(1, {(i,): float(c) for i, c in enumerate(factor.coeffs)}))
        a.append([alpha])
        b.append(count / n)
    return SaddleProblem(polys, np.array(a), np.array(b))


def search_saddle_problem(
    profile: LatticeProfile,
    k: int,
    K: int,
    weights: tuple[float, ...],
    T: tuple[float, ...] | None = None,
) -> SaddleProblem:
    """Multivariate problem bounding the layered-search coefficient.

    ``weights`` are the per-variable targets (W_k..W_{K+1}) divided by n.
    """
    n = profile.n
    nvars = K + 2 - k
    if len(weights) != nvars:
        raise ValueError(f"need {nvars} weight targets")
    if T is None:
        T = tuple(1.0 for _ in range(profile.D + 1))
    polys, a, b = [], [], []
    for d, count in enumerate(profile.counts):
        if count == 0:
            continue
        polys.append(build_S_kd(d, k, K, T))
        a.append(list(weights))
        b.append(count / n)
    return SaddleProblem(polys, np.array(a), np.array(b))


@dataclass
class SandwichCase:
    n: int
    target: tuple[int, ...]
    exact: int | float
    bound: float
    upper_ok: bool
    ratio: float


@dataclass
class SandwichReport:
    which: str
    cases: list[SandwichCase] = field(default_factory=list)

    @property
    def all_upper_ok(self) -> bool:
        return all(c.upper_ok for c in self.cases)


def verify_sandwich(
    profile: LatticeProfile,
    W_targets,
    which: str = "P",
    k: int = 1,
    K: int = 1,
    T: tuple[float, ...] | None = None,
    tol: float = 1e-10,
) -> SandwichReport:
    """Exact coefficient vs saddle bound for each target.

    For ``which="P"`` the targets are weights W; for ``which="S"`` they
    are weight tuples (W_k..W_{K+1}).  Checks exact <= bound^n (up to
    float round-off in logs) and records ratio = exact^(1/n) / bound,
    the quantity that approaches 1 from below as the profile is scaled.
    """
    n = profile.n
    report = SandwichReport(which=which)
    if which == "P":
        poly = build_P(profile)
        for W in W_targets:
            exact = coeff(poly, int(W))
            problem = layer_saddle_problem(profile, W / n)
            bound = saddle_infimum(problem, tol=tol).value
            report.cases.append(_make_case(n, (int(W),), exact, bound))
    elif which == "S":
        if T is None:
            T = tuple(1.0 for _ in range(profile.D + 1))
        for Ws in W_targets:
            Ws = tuple(int(w) for w in Ws)
            poly = build_S_k(profile, k, K, T, truncate=Ws)
            exact = multi_coeff(poly, Ws)
            problem = search_saddle_problem(
                profile, k, K, tuple(w / n for w in Ws), T
            )
            bound = saddle_infimum(problem, tol=tol).value
            report.cases.append(_make_case(n, Ws, exact, bound))
    else:
        raise ValueError("which must be 'P' or 'S'")
    return report


def _make_case(n, target, exact, bound) -> SandwichCase:
    if exact > 0:
        upper_ok = math.log(exact) <= n * math.log(bound) + 1e-9
        ratio = math.exp(math.log(exact) / n - math.log(bound))
    else:
        upper_ok = True
        ratio = 0.0
    return SandwichCase(n, tuple(target), exact, bound, upper_ok, ratio)

"""The exponent program: evaluate and minimize T_D over schedules.

For a level count K and level fractions alpha[k][d] (k in 1..K, d in
1..D, increasing in k, below 1/2), the exponents T_1..T_D of the layered
search satisfy, for positive inner variables x and x_{k,k}..x_{k,K+1}:

    T_d >= P_d(x) / x^{alpha_{1,d} d}                       (precalculation)
    T_d^2 >= S_{k,d}(xs_k) / prod_j x_{k,j}^{alpha_{j,d} d} (search, each k)
    T_d >= 1,

with alpha_{K+1,d} = 1/2 and S_{k,d} the single-coordinate layered-search
polynomial whose coefficients are T_i^2 for the level-(k, k+1) gap i.
Exactly one monomial of S_{k,d} carries T_d^2 (the full-gap tuple), so the
search constraint solves to T_d^2 >= A_{k,d} / (1 - C_{k,d}) with
C_{k,d} < 1 required for feasibility.  ``evaluate_T`` runs this bottom-up;
``minimize_T`` searches schedules and inner variables for the least T_D.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np
from scipy import optimize as sciopt

from . import reference
from .polynomials import iter_layer_tuples

_EXP_CLIP = 700.0


@dataclass(frozen=True)
class AlphaSchedule:
    """Level fractions alpha[k-1][d-1], 0 < alpha_1,d < ... < alpha_K,d < 1/2."""

    K: int
    alpha: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        if self.K != len(self.alpha):
            raise ValueError("need one fraction row per level")
        D = len(self.alpha[0])
        if any(len(row) != D for row in self.alpha):
            raise ValueError("ragged fraction rows")
        for d in range(D):
            prev = 0.0
            for k in range(self.K):
                a = self.alpha[k][d]
                if not prev < a < 0.5:
                    raise ValueError(
                        f"fractions must increase within (0, 1/2); "
                        f"alpha[{k + 1}][{d + 1}] = {a}"
                    )
                prev = a

    @property
    def D(self) -> int:
        return len(self.alpha[0])


@dataclass(frozen=True)
class InnerVars:
    """Positive inner variables: x and one chain xs[k-1] = (x_{k,k}..x_{k,K+1})."""

    x: float
    xs: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        if self.x <= 0 or any(v <= 0 for chain in self.xs for v in chain):
            raise ValueError("inner variables must be positive")

    def validate_shape(self, K: int):
        if len(self.xs) != K:
            raise ValueError("need one variable chain per level")
        for k, chain in enumerate(self.xs, start=1):
            if len(chain) != K + 2 - k:
                raise ValueError(f"chain {k} must have {K + 2 - k} variables")


@dataclass
class OptEvaluation:
    """Bottom-up solution of the constraints at fixed parameters."""

    T: tuple[float, ...]  # T_0 = 1, T_1..T_D
    feasible: bool
    slacks: dict[tuple, float]
    self_coefficients: dict[tuple[int, int], float]  # (k, d) -> C_{k,d}
    violating: tuple[int, int] | None = None
    max_violation: float = 0.0

    @property
    def objective(self) -> float:
        return self.T[-1]


@dataclass
class OptSolution:
    schedule: AlphaSchedule
    inner: InnerVars
    evaluation: OptEvaluation
    objective: float
    diagnostics: dict = field(default_factory=dict)


class ConstraintStructure:
    """Cached monomial enumeration of the search constraints for (D, K).

    For each (k, d): the exponent matrix over variables (x_{k,k}..x_{k,K+1}),
    the level gap of each monomial (index of its T^2 coefficient), and the
    position of the unique full-gap monomial that carries T_d^2.
    """

    _cache: dict[tuple[int, int], "ConstraintStructure"] = {}

    def __init__(self, D: int, K: int):
        self.D, self.K = D, K
        self.tuples: dict[tuple[int, int], tuple[np.ndarray, np.ndarray, int]] = {}
        for k in range(1, K + 1):
            for d in range(1, D + 1):
                rows = list(iter_layer_tuples(d, k, K))
                E = np.array([t for _, t in rows], dtype=float)
                gaps = np.array([g for g, _ in rows], dtype=int)
                (self_rows,) = np.nonzero(gaps == d)
                assert len(self_rows) == 1
                self.tuples[(k, d)] = (E, gaps, int(self_rows[0]))

    @classmethod
    def get(cls, D: int, K: int) -> "ConstraintStructure":
        key = (D, K)
        if key not in cls._cache:
            cls._cache[key] = cls(D, K)
        return cls._cache[key]


def _alpha_matrix(schedule: AlphaSchedule) -> np.ndarray:
    """Fraction rows 1..K plus the fixed middle row at 1/2; shape (K+1, D)."""
    alpha = np.array(schedule.alpha, dtype=float)
    return np.vstack([alpha, np.full((1, schedule.D), 0.5)])


def _search_rhs(structure, alpha_ext, log_xs, T, k, d):
    """(rhs for T_d, C_{k,d}, A_{k,d}/denom) of the level-k constraint at digit d.

    ``T`` must hold final values below index d; the T_d^2 monomial is
    collected onto the left-hand side, so rhs = sqrt(A / (1 - C)).
    """
    E, gaps, self_row = structure.tuples[(k, d)]
    u = log_xs[k - 1]
    a = alpha_ext[k - 1 :, d - 1] * d
    log_m = E @ u - a @ u
    m = np.exp(np.clip(log_m, -_EXP_CLIP, _EXP_CLIP))
    C = m[self_row]
    coeffs = T[gaps] ** 2
    A_over_denom = float(coeffs @ m) - coeffs[self_row] * C
    if C >= 1.0:
        return math.inf, C, A_over_denom
    return math.sqrt(A_over_denom / (1.0 - C)), C, A_over_denom


def _precalc_rhs(x: float, alpha_1d: float, d: int) -> float:
    log_x = math.log(x)
    value = sum(math.exp(min(i * log_x, _EXP_CLIP)) for i in range(d + 1))
    return value * math.exp(min(-alpha_1d * d * log_x, _EXP_CLIP))


def evaluate_T(
    schedule: AlphaSchedule,
    inner: InnerVars,
    structure: ConstraintStructure | None = None,
) -> OptEvaluation:
    """Solve the constraints bottom-up for T_1..T_D at fixed parameters.

    Each T_d is the maximum of the precalculation value, the solved
    search constraints over k, and the floor 1.  A level with self
    coefficient C_{k,d} >= 1 makes the program infeasible; the offending
    constraint is skipped in the bottom-up values and reported.
    """
    inner.validate_shape(schedule.K)
    D, K = schedule.D, schedule.K
    if structure is None:
        structure = ConstraintStructure.get(D, K)
    alpha_ext = _alpha_matrix(schedule)
    log_xs = [np.log(np.array(chain)) for chain in inner.xs]

    T = np.ones(D + 1)
    slacks: dict[tuple, float] = {}
    self_coefficients: dict[tuple[int, int], float] = {}
    violating = None
    max_violation = 0.0
    for d in range(1, D + 1):
        best = 1.0
        prec = _precalc_rhs(inner.x, alpha_ext[0, d - 1], d)
        best = max(best, prec)
        for k in range(1, K + 1):
            rhs, C, _ = _search_rhs(structure, alpha_ext, log_xs, T, k, d)
            self_coefficients[(k, d)] = C
            if C >= 1.0:
                if C - 1.0 >= max_violation:
                    max_violation = C - 1.0
                    violating = (k, d)
                continue
            best = max(best, rhs)
        T[d] = best
        slacks[("prec", d)] = T[d] - prec
        slacks[("floor", d)] = T[d] - 1.0
    # search slacks against the final vector
    for d in range(1, D + 1):
        for k in range(1, K + 1):
            rhs, C, _ = _search_rhs(structure, alpha_ext, log_xs, T, k, d)
            slacks[("search", k, d)] = T[d] - rhs if math.isfinite(rhs) else -math.inf
    return OptEvaluation(
        T=tuple(T),
        feasible=violating is None,
        slacks=slacks,
        self_coefficients=self_coefficients,
        violating=violating,
        max_violation=max_violation,
    )


def constraint_slacks(
    schedule: AlphaSchedule, inner: InnerVars, T_values: Sequence[float]
) -> dict[tuple, float]:
    """Slack of every constraint at a *given* exponent vector T_1..T_D."""
    inner.validate_shape(schedule.K)
    D, K = schedule.D, schedule.K
    structure = ConstraintStructure.get(D, K)
    alpha_ext = _alpha_matrix(schedule)
    log_xs = [np.log(np.array(chain)) for chain in inner.xs]
    T = np.concatenate([[1.0], np.asarray(T_values, dtype=float)])
    out: dict[tuple, float] = {}
    for d in range(1, D + 1):
        out[("prec", d)] = T[d] - _precalc_rhs(inner.x, alpha_ext[0, d - 1], d)
        out[("floor", d)] = T[d] - 1.0
        for k in range(1, K + 1):
            rhs, _, _ = _search_rhs(structure, alpha_ext, log_xs, T, k, d)
            out[("search", k, d)] = T[d] - rhs if math.isfinite(rhs) else -math.inf
    return out


# ---------------------------------------------------------------------------
# parameter transform: unconstrained vector <-> (AlphaSchedule, InnerVars)
# ---------------------------------------------------------------------------


class ParameterSpace:
    """Smooth unconstrained coordinates for the program parameters.

    Per digit d the level fractions are cumulative positive increments
    squashed below 1/2: alpha_{k,d} = S_k / (2 (S_K + 1)) with
    S_k = sum_{j<=k} exp(theta_{j,d}).  Inner variables live in logs.
    """

    def __init__(self, D: int, K: int):
        self.D, self.K = D, K
        self.chain_sizes = [K + 2 - k for k in range(1, K + 1)]
        self.size = K * D + 1 + sum(self.chain_sizes)

    def decode(self, theta: np.ndarray) -> tuple[AlphaSchedule, InnerVars]:
        theta = np.clip(np.asarray(theta, dtype=float), -40.0, 40.0)
        K, D = self.K, self.D
        raw = theta[: K * D].reshape(K, D)
        S = np.cumsum(np.exp(raw), axis=0)
        alpha = 0.5 * S / (S[-1] + 1.0)
        x = math.exp(theta[K * D])
        xs = []
        offset = K * D + 1
        for size in self.chain_sizes:
            xs.append(tuple(np.exp(theta[offset : offset + size])))
            offset += size
        schedule = AlphaSchedule(K, tuple(tuple(row) for row in alpha))
        return schedule, InnerVars(x, tuple(xs))

    def encode(self, schedule: AlphaSchedule, inner: InnerVars) -> np.ndarray:
        K, D = self.K, self.D
        alpha = np.array(schedule.alpha, dtype=float)
        theta = np.empty(self.size)
        for d in range(D):
            S_K = alpha[-1, d] / (0.5 - alpha[-1, d])
            S = 2.0 * alpha[:, d] * (S_K + 1.0)
            incr = np.diff(np.concatenate([[0.0], S]))
            theta[d : K * D : D] = np.log(incr)
        theta[K * D] = math.log(inner.x)
        offset = K * D + 1
        for chain in inner.xs:
            vals = np.log(np.array(chain))
            theta[offset : offset + len(vals)] = vals
            offset += len(vals)
        return theta


# ---------------------------------------------------------------------------
# minimization
# ---------------------------------------------------------------------------


@dataclass
class OptimizerConfig:
    restarts: int = 16
    seed: int = 0
    nm_maxfev: int | None = None
    polish: bool = True
    infeasible_penalty: float = 10.0
    chain_restarts: int = 6  # budget for implicit warm-start chains
    threads: int = 1


class InfeasibleProgramError(RuntimeError):
    def __init__(self, message, diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics


def _objective_factory(space: ParameterSpace, config: OptimizerConfig):
    structure = ConstraintStructure.get(space.D, space.K)
    counter = {"evaluations": 0}

    def fun(theta: np.ndarray) -> float:
        counter["evaluations"] += 1
        try:
            schedule, inner = space.decode(theta)
        except ValueError:
            return float(space.D + 1) + 1e6
        ev = evaluate_T(schedule, inner, structure)
        if not ev.feasible:
            return float(space.D + 1) + config.infeasible_penalty * ev.max_violation
        return ev.objective

    return fun, counter


def _appendix_seed(space: ParameterSpace, D: int) -> np.ndarray:
    block = reference.K1_PARAMS[D]
    schedule = AlphaSchedule(1, (tuple(block["alpha"]),))
    inner = InnerVars(block["x"], (tuple(block["xs"]),))
    return space.encode(schedule, inner)


def _generic_seed(space: ParameterSpace) -> np.ndarray:
    K, D = space.K, space.D
    alpha = tuple(
        tuple(0.5 * (k + 1) / (K + 1) for _ in range(D)) for k in range(K)
    )
    xs = []
    for k in range(1, K + 1):
        chain = [5.0] + [0.3] * (K - k) + [0.15]
        xs.append(tuple(chain))
    schedule = AlphaSchedule(K, alpha)
    return space.encode(schedule, InnerVars(0.7, tuple(xs)))


def _extend_D_seed(space: ParameterSpace, sol: OptSolution) -> np.ndarray:
    """Warm start (D, 1) from the (D-1, 1) solution: append a fraction."""
    alpha_prev = sol.schedule.alpha[0]
    if len(alpha_prev) >= 2:
        gap = 0.8 * (alpha_prev[-1] - alpha_prev[-2])
    else:
        gap = 0.02
    new_last = min(alpha_prev[-1] + max(gap, 1e-3), 0.499)
    schedule = AlphaSchedule(1, (alpha_prev + (new_last,),))
    return space.encode(schedule, sol.inner)


def _expand_K_seeds(space: ParameterSpace, sol: OptSolution) -> list[np.ndarray]:
    """Warm start (D, K) from (D, K-1): duplicate the last level.

    The new level K slots in between the old level K-1 and the middle
    layer; each existing chain gains a unit variable at the new position
    and the new chain duplicates the old last one.  Two fraction variants
    are produced: a tight duplicate and a midpoint toward 1/2.
    """
    K = space.K
    old_alpha = np.array(sol.schedule.alpha, dtype=float)
    seeds = []
    for mode in ("duplicate", "midpoint"):
        if mode == "duplicate":
            new_row = np.minimum(old_alpha[-1] + 0.01, 0.5 - 1e-3)
        else:
            new_row = (old_alpha[-1] + 0.5) / 2.0
        alpha = np.vstack([old_alpha, new_row])
        xs = []
        for k in range(1, K):
            old_chain = list(sol.inner.xs[k - 1])
            xs.append(tuple(old_chain[:-1] + [1.0] + old_chain[-1:]))
        last = sol.inner.xs[-1]
        xs.append((last[0], last[1]))
        try:
            schedule = AlphaSchedule(K, tuple(tuple(r) for r in alpha))
        except ValueError:
            continue
        seeds.append(space.encode(schedule, InnerVars(sol.inner.x, tuple(xs))))
    return seeds


class _ProgramNLP:
    """Smooth constrained form of the program for gradient-based refinement.

    Variables v = (theta, log T_1..log T_D).  Inequalities (all >= 0):

        log T_d - log precalc_d(x)
        2 log T_d + sum_j a_j u_{k,j} - log S_{k,d}(T, xs)   for each k
        log T_d

    with analytic Jacobians; the objective is log T_D.
    """

    def __init__(self, space: ParameterSpace):
        self.space = space
        self.structure = ConstraintStructure.get(space.D, space.K)
        self.nvars = space.size + space.D
        self.ncons = space.D * (space.K + 2)

    def _decode(self, v):
        theta = np.clip(v[: self.space.size], -40.0, 40.0)
        logT = v[self.space.size :]
        K, D = self.space.K, self.space.D
        raw = theta[: K * D].reshape(K, D)
        c = np.exp(raw)
        S = np.cumsum(c, axis=0)
        Z = S[-1] + 1.0
        alpha = 0.5 * S / Z
        # dalpha[m, k, d] = d alpha_{k+1, d} / d theta_{m+1, d}
        #                 = c_m (1{m <= k} Z - S_k) / (2 Z^2)
        lower = np.tril(np.ones((K, K)))
        dalpha = (
            0.5
            * c[:, None, :]
            * (lower.T[:, :, None] * Z[None, None, :] - S[None, :, :])
            / (Z**2)[None, None, :]
        )
        log_x = theta[K * D]
        chains = []
        offset = K * D + 1
        for size in self.space.chain_sizes:
            chains.append(theta[offset : offset + size])
            offset += size
        return alpha, dalpha, log_x, chains, logT

    def constraints(self, v):
        vals, _ = self._constraints_impl(v, want_jac=False)
        return vals

    def jacobian(self, v):
        _, jac = self._constraints_impl(v, want_jac=True)
        return jac

    def _constraints_impl(self, v, want_jac):
        space = self.space
        K, D = space.K, space.D
        alpha, dalpha, log_x, chains, logT = self._decode(v)
        alpha_ext = np.vstack([alpha, np.full((1, D), 0.5)])
        T = np.concatenate([[1.0], np.exp(logT)])
        x = math.exp(log_x)
        vals = np.empty(self.ncons)
        jac = np.zeros((self.ncons, self.nvars)) if want_jac else None
        chain_offsets = []
        off = K * D + 1
        for size in space.chain_sizes:
            chain_offsets.append(off)
            off += size
        row = 0
        for d in range(1, D + 1):
            dd = d - 1
            powers = np.exp(np.arange(d + 1) * log_x)
            P = powers.sum()
            vals[row] = logT[dd] - math.log(P) + alpha_ext[0, dd] * d * log_x
            if want_jac:
                jac[row, space.size + dd] = 1.0
                jac[row, K * D] = alpha_ext[0, dd] * d - (
                    np.arange(d + 1) @ powers
                ) / P
                jac[row, dd : K * D : D] += d * log_x * dalpha[:, 0, dd]
            row += 1
            for k in range(1, K + 1):
                E, gaps, _ = self.structure.tuples[(k, d)]
                u = chains[k - 1]
                a = alpha_ext[k - 1 :, dd] * d
                log_terms = E @ u + 2.0 * np.log(T[gaps])
                peak = log_terms.max()
                w = np.exp(log_terms - peak)
                Ssum = w.sum()
                p = w / Ssum
                vals[row] = 2.0 * logT[dd] - peak - math.log(Ssum) + a @ u
                if want_jac:
                    co = chain_offsets[k - 1]
                    jac[row, co : co + len(u)] = a - E.T @ p
                    # fraction rows k..K enter the denominator exponents a_j
                    for lev in range(k, K + 1):
                        jac[row, dd : K * D : D] += (
                            d * u[lev - k] * dalpha[:, lev - 1, dd]
                        )
                    for i in range(1, d + 1):
                        mass = p[gaps == i].sum()
                        jac[row, space.size + i - 1] = -2.0 * mass
                    jac[row, space.size + dd] += 2.0
                row += 1
            vals[row] = logT[dd]
            if want_jac:
                jac[row, space.size + dd] = 1.0
            row += 1
        return vals, jac


def _polish_slsqp(space, theta0, T0, config):
    """Gradient-based refinement of the program around an incumbent."""
    nlp = _ProgramNLP(space)
    v0 = np.concatenate([theta0, np.log(np.maximum(T0[1:], 1.0 + 1e-12))])
    obj_grad = np.zeros(nlp.nvars)
    obj_grad[-1] = 1.0
    bounds = [(-40.0, 40.0)] * space.size + [
        (0.0, math.log(space.D + 2.0))
    ] * space.D
    res = sciopt.minimize(
        lambda v: v[-1],
        v0,
        jac=lambda v: obj_grad,
        constraints=[{"type": "ineq", "fun": nlp.constraints, "jac": nlp.jacobian}],
        bounds=bounds,
        method="SLSQP",
        options={"maxiter": 500, "ftol": 1e-14},
    )
    return res.x[: space.size]


def minimize_T(
    D: int,
    K: int,
    config: OptimizerConfig | None = None,
    warm: OptSolution | Sequence[OptSolution] | None = None,
) -> OptSolution:
    """Minimize T_D over schedules and inner variables.

    Multi-start Nelder-Mead in transformed coordinates, warm-started from
    the stored K=1 parameter blocks, continuation in D (for K=1) or in K
    (level duplication), plus seeded random jitters; optionally refined
    by a constrained local polish.  Raises ``InfeasibleProgramError`` if
    no start produces a feasible point.
    """
    if D < 1 or K < 1:
        raise ValueError("need D >= 1 and K >= 1")
    config = config or OptimizerConfig()
    space = ParameterSpace(D, K)
    rng = np.random.default_rng(config.seed)

    base_seeds: list[np.ndarray] = []
    if warm is not None:
        warm_list = [warm] if isinstance(warm, OptSolution) else list(warm)
        for sol in warm_list:
            if sol.schedule.K == K and sol.schedule.D == D:
                base_seeds.append(space.encode(sol.schedule, sol.inner))
            elif sol.schedule.K == K - 1 and sol.schedule.D == D:
                base_seeds.extend(_expand_K_seeds(space, sol))
            elif sol.schedule.K == K == 1 and sol.schedule.D == D - 1:
                base_seeds.append(_extend_D_seed(space, sol))
            else:
                raise ValueError("warm start shape does not match (D, K)")
    else:
        chain_config = replace(config, restarts=config.chain_restarts, polish=True)
        if K == 1:
            if D in reference.K1_PARAMS:
                base_seeds.append(_appendix_seed(space, D))
            else:
                prev = minimize_T(D - 1, 1, chain_config)
                base_seeds.append(_extend_D_seed(space, prev))
        else:
            prev = minimize_T(D, K - 1, chain_config)
            base_seeds.extend(_expand_K_seeds(space, prev))
    base_seeds.append(_generic_seed(space))

    seeds = list(base_seeds)
    while len(seeds) < config.restarts:
        base = base_seeds[len(seeds) % len(base_seeds)]
        seeds.append(base + rng.normal(0.0, 0.15, size=space.size))
    seeds = seeds[: max(config.restarts, len(base_seeds))]

    fun, counter = _objective_factory(space, config)
    maxfev = config.nm_maxfev or 100 * space.size
    best_theta, best_value = None, math.inf
    start_values = []

    def consider(theta):
        nonlocal best_value, best_theta
        schedule, inner = space.decode(theta)
        ev = evaluate_T(schedule, inner)
        if ev.feasible and ev.objective < best_value:
            best_value, best_theta = ev.objective, np.array(theta)

    def polish(theta):
        schedule, inner = space.decode(theta)
        ev = evaluate_T(schedule, inner)
        if not ev.feasible:
            return
        try:
            consider(_polish_slsqp(space, theta, np.array(ev.T), config))
        except (ValueError, FloatingPointError, np.linalg.LinAlgError):
            pass

    def run_start(theta0):
        return sciopt.minimize(
            fun,
            theta0,
            method="Nelder-Mead",
            options={
                "maxfev": maxfev,
                "xatol": 1e-6,
                "fatol": 1e-8,
                "adaptive": space.size > 8,
            },
        )

    if config.threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            results = list(pool.map(run_start, seeds))
    else:
        results = [run_start(theta0) for theta0 in seeds]
    # reduction order is fixed by the seed list, so results do not
    # depend on the thread count
    for res in results:
        start_values.append(float(res.fun))
        consider(res.x)
        if config.polish:
            polish(res.x)
    if best_theta is None:
        raise InfeasibleProgramError(
            f"no feasible point found for D={D}, K={K}",
            diagnostics={"starts": len(seeds), "values": start_values},
        )

    # intensify around the incumbent: fresh simplex, then a final polish
    res = sciopt.minimize(
        fun,
        best_theta,
        method="Nelder-Mead",
        options={"maxfev": maxfev, "xatol": 1e-9, "fatol": 1e-11, "adaptive": space.size > 8},
    )
    consider(res.x)
    if config.polish:
        polish(best_theta)

    schedule, inner = space.decode(best_theta)
    evaluation = evaluate_T(schedule, inner)
    if not evaluation.feasible:
        raise InfeasibleProgramError(
            f"best point infeasible for D={D}, K={K}",
            diagnostics={"starts": len(seeds), "values": start_values},
        )
    return OptSolution(
        schedule=schedule,
        inner=inner,
        evaluation=evaluation,
        objective=evaluation.objective,
        diagnostics={
            "starts": len(seeds),
            "evaluations": counter["evaluations"],
            "start_values": start_values,
            "dispersion": float(np.std(start_values)),
        },
    )


# ---------------------------------------------------------------------------
# reproduction drivers
# ---------------------------------------------------------------------------


def table2(
    D_range: Sequence[int],
    K_range: Sequence[int],
    config: OptimizerConfig | None = None,
) -> dict[tuple[int, int], OptSolution]:
    """Exponent grid over (D, K), warm-starting each K from the previous."""
    config = config or OptimizerConfig()
    out: dict[tuple[int, int], OptSolution] = {}
    for D in D_range:
        prev: OptSolution | None = None
        for K in sorted(K_range):
            warm = prev if (prev and prev.schedule.K == K - 1) else None
            sol = minimize_T(D, K, config, warm=warm)
            out[(D, K)] = sol
            prev = sol
    return out


def figure_k1(
    D_max: int, config: OptimizerConfig | None = None
) -> list[tuple[int, float, float]]:
    """K=1 exponents and the advantage D + 1 - T_D for D = 1..D_max."""
    config = config or OptimizerConfig()
    rows = []
    prev: OptSolution | None = None
    for D in range(1, D_max + 1):
        warm = prev if (prev and D > 6) else None
        sol = minimize_T(D, 1, config, warm=warm)
        rows.append((D, sol.objective, D + 1 - sol.objective))
        prev = sol
    return rows


@dataclass
class AppendixCheck:
    D: int
    T_computed: tuple[float, ...]
    T_published: tuple[float, ...]
    max_T_error: float
    min_slack: float
    ok: bool
    mismatches: list[str] = field(default_factory=list)


def check_appendix(D: int, tol: float = 1e-4) -> AppendixCheck:
    """Feed a stored K=1 parameter block through the constraint solver.

    The published exponents must be reproduced to ``tol`` and every
    constraint must hold at the published exponents with slack at least
    -``tol`` (published digits are rounded).
    """
    if D not in reference.K1_PARAMS:
        raise ValueError(f"no stored parameter block for D={D}")
    block = reference.K1_PARAMS[D]
    schedule = AlphaSchedule(1, (tuple(block["alpha"]),))
    inner = InnerVars(block["x"], (tuple(block["xs"]),))
    ev = evaluate_T(schedule, inner)
    published = tuple(block["T"])
    computed = ev.T[1:]
    errors = [abs(a - b) for a, b in zip(computed, published)]
    slacks = constraint_slacks(schedule, inner, published)
    min_slack = min(slacks.values())
    mismatches = []
    for d, err in enumerate(errors, start=1):
        if err > tol:
            mismatches.append(
                f"T_{d}: computed {computed[d - 1]:.6f} vs published {published[d - 1]}"
            )
    for key, s in slacks.items():
        if s < -tol:
            mismatches.append(f"constraint {key} violated by {-s:.2e}")
    return AppendixCheck(
        D=D,
        T_computed=computed,
        T_published=published,
        max_T_error=max(errors),
        min_slack=min_slack,
        ok=not mismatches,
        mismatches=mismatches,
    )

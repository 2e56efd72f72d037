"""Power-split optimizers over the 2-simplex of (beta1, beta2).

Contains the equal-split baseline, a shared concave max-min engine, a monotone
successive-convex-approximation driver, the three optimization schemes
(relaxed sum-rate, exact max-min sum-rate, ratio-constrained sum-rate), and an
exhaustive simplex-grid oracle used to validate them.

All solvers are pure and deterministic given (gains, power, options). The
engine needs no external solver: the subproblems are maxima of minima of
concave functions of two variables, which adaptive grid refinement handles to
well below the tolerances used here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from .rates import LinkGains, PAFactors, sum_rate

CENTER = (1.0 / 3.0, 1.0 / 3.0)


class InfeasibleError(RuntimeError):
    """Raised when a subproblem has no feasible power split at all."""


class Method(str, Enum):
    EPA = "EPA"
    MAX_SR = "MaxSR"
    MAX_MIN_SR = "MaxMinSR"
    MAX_SR_RC = "MaxSRRC"
    ORACLE = "Oracle"


@dataclass(frozen=True)
class SolverOptions:
    """Tolerances and search depth shared by all solvers.

    strict_taylor reproduces the printed first-order expansions of the
    ratio-constrained scheme without the inner-derivative factor gamma*P;
    the default keeps the chain-rule factor, which makes the expansions true
    global minorants.
    """

    sca_tol: float = 1e-6          # bits/s/Hz improvement that ends the outer loop
    sca_max_iter: int = 100
    inner_tol: float = 1e-5        # target accuracy of the max-min engine
    inner_grid_init: int = 64
    inner_refine_rounds: int = 8
    box_margin: float = 1e-6       # realizes the strict 0 < beta < 1 constraints
    strict_taylor: bool = False

    def __post_init__(self):
        if min(self.sca_tol, self.inner_tol, self.box_margin) <= 0:
            raise ValueError("tolerances and box_margin must be positive")
        if min(self.sca_max_iter, self.inner_grid_init, self.inner_refine_rounds) <= 0:
            raise ValueError("iteration and grid counts must be positive")
        if self.inner_grid_init < 2:
            raise ValueError("inner_grid_init must be >= 2")
        if self.box_margin >= 1.0 / 3.0:
            raise ValueError("box_margin must be < 1/3")


@dataclass(frozen=True)
class PAResult:
    """Outcome of one power-allocation solve.

    r_reported is the optimizer's own objective value; r_true is the actual
    sum rate at the returned split. objective_trace records the reported
    objective per round (entry 0 is the start-point evaluation).
    """

    beta: PAFactors
    r_reported: float
    r_true: float
    iterations: int
    converged: bool
    method: Method
    objective_trace: tuple = ()

    def __post_init__(self):
        for name in ("r_reported", "r_true"):
            v = float(getattr(self, name))
            object.__setattr__(self, name, v)
            if not (math.isfinite(v) and v >= 0.0):
                raise ValueError(f"{name} must be finite and non-negative")


@dataclass(frozen=True)
class OracleObjective:
    """Exact objective the brute-force oracle maximizes."""

    kind: str                 # "sum_rate" or "rate_ratio"
    mu: float | None = None

    def __post_init__(self):
        if self.kind not in ("sum_rate", "rate_ratio"):
            raise ValueError("kind must be 'sum_rate' or 'rate_ratio'")
        if self.kind == "rate_ratio" and not (self.mu is not None and self.mu > 0):
            raise ValueError("rate_ratio objective needs mu > 0")

    @classmethod
    def true_sum_rate(cls) -> "OracleObjective":
        return cls("sum_rate")

    @classmethod
    def rate_ratio(cls, mu: float) -> "OracleObjective":
        return cls("rate_ratio", mu)


def epa() -> PAFactors:
    """Equal power split between the two users and the relay."""
    return PAFactors(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0)


def _pick_candidate(b1: np.ndarray, b2: np.ndarray, vals: np.ndarray):
    """Argmax with ties broken toward the centroid.

    Symmetric programs have flat optimal ridges; deterministic centroid
    tie-breaking makes the returned split symmetric instead of float-noise
    dependent.
    """
    vmax = float(np.max(vals))
    if not math.isfinite(vmax):
        return None
    tie_eps = 1e-12 * max(1.0, abs(vmax))
    tie = np.flatnonzero(vals >= vmax - tie_eps)
    d2 = (b1[tie] - CENTER[0]) ** 2 + (b2[tie] - CENTER[1]) ** 2
    k = tie[int(np.argmin(d2))]
    return float(b1[k]), float(b2[k]), float(vals[k])


def _axis(center: float, width: float, lo: float, hi: float, n: int) -> np.ndarray:
    a = max(lo, center - width / 2.0)
    b = min(hi, a + width)
    a = max(lo, b - width)
    return np.linspace(a, b, n)


def inner_maximin(funcs: Sequence[Callable], opts: SolverOptions | None = None,
                  seed_points: Sequence[tuple[float, float]] = ()) -> tuple[PAFactors, float]:
    """Maximize F(b1, b2) = min_i funcs[i](b1, b2) over the margined simplex.

    Each func must be concave on {b1, b2 >= margin, b1 + b2 <= 1 - margin},
    accept numpy arrays, and return -inf at infeasible points. F is then
    concave, so a coarse uniform grid followed by repeated 4x window
    refinement around the incumbent converges to the global maximum. Optional
    seed_points are always evaluated, which makes warm starts exact (the
    returned value never falls below a seed's value beyond tie tolerance).

    Returns (PAFactors, value). Raises InfeasibleError when every candidate is
    infeasible.
    """
    opts = opts or SolverOptions()
    if not funcs:
        raise ValueError("need at least one objective function")
    m = opts.box_margin
    lo, hi = m, 1.0 - m
    n = opts.inner_grid_init

    def evaluate(c1: np.ndarray, c2: np.ndarray) -> np.ndarray:
        vals = np.asarray(funcs[0](c1, c2), dtype=float)
        for f in funcs[1:]:
            vals = np.minimum(vals, np.asarray(f(c1, c2), dtype=float))
        return vals

    best = None
    width = hi - lo
    stall = 0
    for stage in range(opts.inner_refine_rounds + 1):
        if stage == 0:
            x1 = np.linspace(lo, hi, n)
            x2 = x1
        else:
            width /= 4.0
            x1 = _axis(best[0], width, lo, hi, n)
            x2 = _axis(best[1], width, lo, hi, n)
        g1, g2 = np.meshgrid(x1, x2, indexing="ij")
        c1, c2 = g1.ravel(), g2.ravel()
        keep = c1 + c2 <= 1.0 - m
        c1, c2 = c1[keep], c2[keep]
        extra = []
        if stage == 0:
            extra.extend((float(p[0]), float(p[1])) for p in seed_points)
        if best is not None:
            extra.append((best[0], best[1]))
        if extra:
            e1, e2 = zip(*extra)
            c1 = np.concatenate([c1, np.asarray(e1)])
            c2 = np.concatenate([c2, np.asarray(e2)])
        if c1.size == 0:
            continue
        cand = _pick_candidate(c1, c2, evaluate(c1, c2))
        if cand is None:
            if best is None:
                raise InfeasibleError("every candidate power split is infeasible")
            continue
        if best is None:
            best = cand
            continue
        gain = cand[2] - best[2]
        moved = math.hypot(cand[0] - best[0], cand[1] - best[1])
        best = cand
        # refinement has settled: the value and the point both stopped moving
        if stage >= 2 and gain < 0.1 * opts.inner_tol and moved < 1e-6:
            stall += 1
            if stall >= 2:
                break
        else:
            stall = 0
    if best is None:
        raise InfeasibleError("every candidate power split is infeasible")
    return PAFactors.from_pair(best[0], best[1]), best[2]


def _as_rate(rhs: Callable) -> Callable:
    """Wrap a linear-domain bound t(b1,b2) as the rate 0.5*log2(t), -inf if t<=0."""

    def f(b1, b2):
        t = np.asarray(rhs(np.asarray(b1, dtype=float), np.asarray(b2, dtype=float)),
                       dtype=float)
        out = np.full(t.shape, -np.inf)
        np.log2(t, out=out, where=t > 0.0)
        return 0.5 * out

    return f


def _eval_point(funcs: Sequence[Callable], b1: float, b2: float) -> float:
    a1, a2 = np.asarray([b1]), np.asarray([b2])
    return float(min(float(np.asarray(f(a1, a2), dtype=float)[0]) for f in funcs))


def sca_drive(subproblem_builder: Callable[[PAFactors], Sequence[Callable]],
              init: PAFactors, opts: SolverOptions | None = None, *,
              method: Method = Method.MAX_SR,
              true_rate: Callable[[PAFactors], float] | None = None) -> PAResult:
    """Monotone successive-approximation driver.

    subproblem_builder(beta) returns concave surrogate objectives (rate units)
    tight at beta; each round maximizes their min, warm-started at the
    incumbent, so the reported objective never decreases. Stops when a round
    improves by less than sca_tol or after sca_max_iter rounds.
    """
    opts = opts or SolverOptions()
    incumbent = init
    funcs = subproblem_builder(init)
    base = _eval_point(funcs, init.beta1, init.beta2)
    if not math.isfinite(base):
        raise InfeasibleError("start point is infeasible for the first subproblem")
    trace = [max(base, 0.0)]
    prev = base
    iterations = 0
    converged = False
    for rnd in range(opts.sca_max_iter):
        if rnd > 0:
            funcs = subproblem_builder(incumbent)
        beta, val = inner_maximin(funcs, opts,
                                  seed_points=((incumbent.beta1, incumbent.beta2),))
        iterations += 1
        incumbent = beta
        trace.append(max(val, 0.0))
        gain = val - prev
        prev = val
        if gain < opts.sca_tol:
            converged = True
            break
    r_rep = max(prev, 0.0)
    r_true = true_rate(incumbent) if true_rate is not None else r_rep
    return PAResult(incumbent, r_rep, r_true, iterations, converged, method,
                    tuple(trace))


def _epa_fallback(g: LinkGains, p_watt: float, method: Method) -> PAResult:
    b = epa()
    return PAResult(b, 0.0, sum_rate(g, b, p_watt), 0, False, method)


def max_sr(g: LinkGains, p_watt: float, opts: SolverOptions | None = None) -> PAResult:
    """Relaxed sum-rate maximization.

    The two cross-direction branches replace the product b1*b2 by its bound
    (b1^2 + b2^2)/2 once (a restriction, applied statically); the relay-power
    quadratic is replaced by its tangent at the incumbent and re-linearized
    every round. The reported objective is therefore a lower bound on the true
    rate at the returned split.
    """
    opts = opts or SolverOptions()
    if p_watt <= 0:
        raise ValueError("total power must be positive")
    g1, g2, g3, g4 = g.gamma1, g.gamma2, g.gamma3, g.gamma4
    p = p_watt
    p2 = p * p

    def rhs_user1(b1, b2):
        # uplink-1 + downlink-1 with b3 eliminated and b1*b2 bounded
        return (1.0 + g4 * p + b1 * (g1 * p - g4 * p + g1 * g4 * p2)
                - g4 * p * b2 - 0.5 * g1 * g4 * p2 * (3.0 * b1 ** 2 + b2 ** 2))

    def rhs_user2(b1, b2):
        return (1.0 + g2 * p + b2 * (g3 * p - g2 * p + g2 * g3 * p2)
                - g2 * p * b1 - 0.5 * g2 * g3 * p2 * (b1 ** 2 + 3.0 * b2 ** 2))

    def rhs_mac(b1, b2):
        return 1.0 + g1 * p * b1 + g3 * p * b2

    def builder(beta: PAFactors):
        b3t = beta.beta3
        slope = 2.0 * g2 * g4 * p2 * b3t
        const = 1.0 + g2 * g4 * p2 * b3t * b3t - slope * b3t

        def rhs_relay(b1, b2):
            b3 = 1.0 - b1 - b2
            return const + slope * b3 + (g2 + g4) * p * b3

        return [_as_rate(rhs_user1), _as_rate(rhs_user2), _as_rate(rhs_relay),
                _as_rate(rhs_mac)]

    try:
        return sca_drive(builder, epa(), opts, method=Method.MAX_SR,
                         true_rate=lambda b: sum_rate(g, b, p_watt))
    except InfeasibleError:
        return _epa_fallback(g, p_watt, Method.MAX_SR)


def max_min_sr(g: LinkGains, p_watt: float,
               opts: SolverOptions | None = None) -> PAResult:
    """Exact sum-rate maximization via the concave max-min engine.

    The objective is the min of four concave branch rates, so no relaxation is
    needed and the reported objective equals the true rate at the solution.
    """
    opts = opts or SolverOptions()
    if p_watt <= 0:
        raise ValueError("total power must be positive")
    g1, g2, g3, g4 = g.gamma1, g.gamma2, g.gamma3, g.gamma4
    p = p_watt

    def hl(x):
        return 0.5 * np.log2(x)

    def f_dir1(b1, b2):
        return hl(1.0 + g1 * p * b1) + hl(1.0 + g4 * p * (1.0 - b1 - b2))

    def f_dir2(b1, b2):
        return hl(1.0 + g2 * p * (1.0 - b1 - b2)) + hl(1.0 + g3 * p * b2)

    def f_relay(b1, b2):
        b3 = 1.0 - b1 - b2
        return hl(1.0 + g2 * p * b3) + hl(1.0 + g4 * p * b3)

    def f_mac(b1, b2):
        return hl(1.0 + g1 * p * b1 + g3 * p * b2)

    try:
        beta, val = inner_maximin([f_dir1, f_dir2, f_relay, f_mac], opts,
                                  seed_points=(CENTER,))
    except InfeasibleError:
        return _epa_fallback(g, p_watt, Method.MAX_MIN_SR)
    r = max(val, 0.0)
    return PAResult(beta, r, sum_rate(g, beta, p_watt), 1, True,
                    Method.MAX_MIN_SR, (r,))


def max_sr_rc(g: LinkGains, p_watt: float, mu: float,
              opts: SolverOptions | None = None) -> PAResult:
    """Sum-rate maximization under the fixed rate ratio between directions.

    The (1 + gamma*beta*P)^(1+mu) power terms are replaced by first-order
    expansions at the incumbent and re-linearized every round. With the
    chain-rule factor (default) these are global minorants, so the reported
    objective lower-bounds the true ratio objective at the returned split.
    """
    opts = opts or SolverOptions()
    if p_watt <= 0:
        raise ValueError("total power must be positive")
    if mu <= 0:
        raise ValueError("mu must be positive")
    g1, g3, g4 = g.gamma1, g.gamma3, g.gamma4
    p = p_watt

    def builder(beta: PAFactors):
        b2t, b3t = beta.beta2, beta.beta3
        base2 = 1.0 + g3 * p * b2t
        base3 = 1.0 + g4 * p * b3t
        slope2 = (1.0 + mu) * base2 ** mu * (1.0 if opts.strict_taylor else g3 * p)
        slope3 = (1.0 + mu) * base3 ** mu * (1.0 if opts.strict_taylor else g4 * p)
        c2 = base2 ** (1.0 + mu)
        c3 = base3 ** (1.0 + mu)

        def rhs_dir12(b1, b2):
            return c2 + slope2 * (b2 - b2t)

        def rhs_dir21(b1, b2):
            return c3 + slope3 * ((1.0 - b1 - b2) - b3t)

        def rhs_mac(b1, b2):
            return 1.0 + g1 * p * b1 + g3 * p * b2

        return [_as_rate(rhs_dir12), _as_rate(rhs_dir21), _as_rate(rhs_mac)]

    try:
        return sca_drive(builder, epa(), opts, method=Method.MAX_SR_RC,
                         true_rate=lambda b: sum_rate(g, b, p_watt))
    except InfeasibleError:
        return _epa_fallback(g, p_watt, Method.MAX_SR_RC)


def rc_objective(g: LinkGains, beta: PAFactors, p_watt: float, mu: float) -> float:
    """Exact ratio-constrained objective at one split (no relaxations)."""
    t = min((1.0 + g.gamma3 * beta.beta2 * p_watt) ** (1.0 + mu),
            (1.0 + g.gamma4 * beta.beta3 * p_watt) ** (1.0 + mu),
            1.0 + g.gamma1 * beta.beta1 * p_watt + g.gamma3 * beta.beta2 * p_watt)
    return 0.5 * math.log2(max(t, 1.0))


def oracle_grid(g: LinkGains, p_watt: float, objective: OracleObjective,
                n: int) -> PAResult:
    """Exhaustive evaluation of the exact objective on the simplex lattice.

    Evaluates every (b1, b2) = (i/n, j/n) with i, j >= 1 and i + j <= n - 1
    and returns the argmax. Independent of the iterative solvers: no
    relaxations, surrogates, or warm starts anywhere.
    """
    if n < 10:
        raise ValueError("grid resolution must be >= 10")
    if p_watt < 0:
        raise ValueError("total power must be non-negative")
    idx = np.arange(1, n, dtype=np.int32)
    i, j = np.meshgrid(idx, idx, indexing="ij")
    keep = (i + j) <= n - 1
    b1 = i[keep].astype(float) / n
    b2 = j[keep].astype(float) / n
    b3 = 1.0 - b1 - b2
    g1, g2, g3, g4 = g.gamma1, g.gamma2, g.gamma3, g.gamma4

    def hl(x):
        return 0.5 * np.log2(x)

    with np.errstate(over="ignore"):
        if objective.kind == "sum_rate":
            r_1ir = hl(1.0 + g1 * b1 * p_watt)
            r_ri2 = hl(1.0 + g2 * b3 * p_watt)
            r_2ir = hl(1.0 + g3 * b2 * p_watt)
            r_ri1 = hl(1.0 + g4 * b3 * p_watt)
            mac = hl(1.0 + g1 * b1 * p_watt + g3 * b2 * p_watt)
            vals = np.minimum(np.minimum(r_1ir, r_ri2) + np.minimum(r_2ir, r_ri1),
                              mac)
        else:
            e = 1.0 + objective.mu
            t = np.minimum((1.0 + g3 * b2 * p_watt) ** e,
                           (1.0 + g4 * b3 * p_watt) ** e)
            t = np.minimum(t, 1.0 + g1 * b1 * p_watt + g3 * b2 * p_watt)
            vals = hl(np.maximum(t, 1.0))
    k = int(np.argmax(vals))
    beta = PAFactors.from_pair(float(b1[k]), float(b2[k]))
    return PAResult(beta, float(vals[k]), sum_rate(g, beta, p_watt), 1, True,
                    Method.ORACLE)

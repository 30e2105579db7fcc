"""Regulator-side loss: error decomposition, sweeps, and optimal level.

Conditioned on the applicant's true side of the baseline, four error
channels exist: weak applicants that participate and pass (false
positives), effective applicants that participate and fail, effective
applicants priced out of participating entirely, and weak abstainers
(who by construction can never be approved, so that channel is zero).

Components are prior-weighted averages of the best-responding pass
probability.  The integrands are smooth except at the participation
threshold and the baseline, so the quadrature always splits there:
integration limits are exactly ``mu_tau(alpha)`` and ``mu_b``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .agent import (
    BELIEF_CEIL,
    BELIEF_FLOOR,
    EconomicInstance,
    _check_alpha,
    best_response,
)
from .errors import DomainError
from .stats import Prior
from .thresholds import DEFAULT_EPS, critical_alpha, participation_threshold


@dataclass(frozen=True, slots=True)
class LossWeights:
    """Relative prices of a false approval and a missed approval."""

    lambda_fp: float = 1.0
    lambda_fn: float = 1.0

    def __post_init__(self) -> None:
        if not (self.lambda_fp >= 0.0 and self.lambda_fn >= 0.0):
            raise DomainError(
                f"loss weights must be nonnegative, got ({self.lambda_fp!r}, {self.lambda_fn!r})"
            )
        if self.lambda_fp == 0.0 and self.lambda_fn == 0.0:
            raise DomainError("at least one loss weight must be positive")


@dataclass(frozen=True, slots=True)
class QuadratureSpec:
    """Composite Simpson rule resolution, per smooth segment."""

    panels: int = 2000
    scheme: str = "simpson"

    def __post_init__(self) -> None:
        if self.panels < 10 or self.panels % 2 != 0:
            raise DomainError(f"panels must be an even count of at least 10, got {self.panels!r}")
        if self.scheme != "simpson":
            raise DomainError(f"unsupported quadrature scheme {self.scheme!r}")


@dataclass(frozen=True, slots=True)
class LossBreakdown:
    """Loss components at one significance level, all conditional rates.

    ``fp_abstain`` is identically zero and kept only to make the
    four-channel accounting explicit.  When the prior has no mass on one
    side of the baseline the components conditioned on that side are
    reported as zero and the matching ``no_*_mass`` flag is set.
    """

    fp_particip: float
    fn_particip: float
    fn_abstain: float
    fp_abstain: float
    total: float
    mu_tau: float
    threshold_status: str
    no_weak_mass: bool = False
    no_effective_mass: bool = False


@dataclass(frozen=True, slots=True)
class SweepTable:
    """Named columns of per-alpha results, ready for serialization."""

    columns: tuple[str, ...]
    rows: tuple[tuple, ...]


def _simpson(f, a: float, b: float, panels: int) -> float:
    if b <= a:
        return 0.0
    h = (b - a) / panels
    total = f(a) + f(b)
    for i in range(1, panels):
        total += f(a + i * h) * (4.0 if i % 2 else 2.0)
    return total * h / 3.0


def loss_components(
    alpha: float,
    inst: EconomicInstance,
    prior: Prior,
    quad: QuadratureSpec = QuadratureSpec(),
    weights: LossWeights | None = None,
    threshold_eps: float = DEFAULT_EPS,
) -> LossBreakdown:
    """Error decomposition at one significance level.

    The participation threshold is solved first; both integrals then run
    over intervals bounded by it and by the baseline, which is what keeps
    the Simpson rule honest across the participation kink.
    """
    _check_alpha(alpha)
    if weights is None:
        weights = LossWeights()
    th = participation_threshold(alpha, inst, threshold_eps)
    mu_tau = th.mu_tau
    mu_b = inst.mu_b
    lo, hi = prior.support
    lo = max(lo, BELIEF_FLOOR)
    hi = min(hi, BELIEF_CEIL)
    mass_weak = prior.cdf(mu_b)
    mass_eff = 1.0 - mass_weak

    def pass_density(mu: float) -> float:
        return best_response(alpha, mu, inst).pass_prob * prior.pdf(mu)

    def fail_density(mu: float) -> float:
        return (1.0 - best_response(alpha, mu, inst).pass_prob) * prior.pdf(mu)

    no_weak = mass_weak <= 0.0
    no_eff = mass_eff <= 0.0

    fp_particip = 0.0
    if not no_weak:
        a, b = max(mu_tau, lo), min(mu_b, hi)
        fp_particip = _clip01(_simpson(pass_density, a, b, quad.panels) / mass_weak)

    fn_particip = 0.0
    fn_abstain = 0.0
    if not no_eff:
        a, b = max(mu_tau, mu_b, lo), hi
        fn_particip = _clip01(_simpson(fail_density, a, b, quad.panels) / mass_eff)
        fn_abstain = _clip01((prior.cdf(max(mu_tau, mu_b)) - mass_weak) / mass_eff)

    total = weights.lambda_fp * fp_particip + weights.lambda_fn * (fn_particip + fn_abstain)
    return LossBreakdown(
        fp_particip=fp_particip,
        fn_particip=fn_particip,
        fn_abstain=fn_abstain,
        fp_abstain=0.0,
        total=total,
        mu_tau=mu_tau,
        threshold_status=th.status,
        no_weak_mass=no_weak,
        no_effective_mass=no_eff,
    )


def _clip01(x: float) -> float:
    return 0.0 if x < 0.0 else (1.0 if x > 1.0 else x)


def total_loss(
    alpha: float,
    inst: EconomicInstance,
    prior: Prior,
    weights: LossWeights,
    quad: QuadratureSpec = QuadratureSpec(),
) -> float:
    """Weighted sum of the error components at ``alpha``."""
    return loss_components(alpha, inst, prior, quad, weights).total


def optimal_alpha(
    inst: EconomicInstance,
    prior: Prior,
    weights: LossWeights,
    quad: QuadratureSpec = QuadratureSpec(),
    grid_resolution: int = 100,
    eps: float = DEFAULT_EPS,
) -> float:
    """Loss-minimising significance level over ``[alpha_hat, 1 - eps]``.

    Below the critical level the false-positive channel is flat at zero
    while missed approvals only grow, so nothing is lost by starting the
    grid at ``alpha_hat``.  Ties resolve to the smaller level.
    """
    if grid_resolution < 2:
        raise DomainError(f"grid_resolution must be at least 2, got {grid_resolution!r}")
    a0 = critical_alpha(inst, eps).alpha_hat
    a1 = 1.0 - eps
    if a1 < a0:
        a1 = a0
    step = (a1 - a0) / (grid_resolution - 1)
    best_a = a0
    best_loss = math.inf
    for i in range(grid_resolution):
        a = a0 + i * step
        value = total_loss(a, inst, prior, weights, quad)
        if value < best_loss:
            best_a, best_loss = a, value
    return best_a


def sweep_alpha(
    alpha_grid: list[float],
    inst: EconomicInstance,
    prior: Prior,
    weights: LossWeights | None = None,
    quad: QuadratureSpec = QuadratureSpec(),
) -> SweepTable:
    """Loss decomposition along an increasing grid of significance levels.

    Besides the loss columns, each row carries the pass probability of a
    best-responding applicant at three probe beliefs (the quartile points
    of the prior support), a cheap fingerprint of agent-side behaviour.
    """
    if not alpha_grid:
        raise DomainError("alpha grid must be nonempty")
    for a, b in zip(alpha_grid, alpha_grid[1:]):
        if not b > a:
            raise DomainError("alpha grid must be strictly increasing")
    if not (0.0 < alpha_grid[0] and alpha_grid[-1] < 1.0):
        raise DomainError("alpha grid must lie strictly within (0, 1)")
    if weights is None:
        weights = LossWeights()
    lo, hi = prior.support
    probes = tuple(
        min(max(lo + f * (hi - lo), BELIEF_FLOOR), BELIEF_CEIL) for f in (0.25, 0.5, 0.75)
    )
    columns = (
        "alpha",
        "mu_tau",
        "fp_particip",
        "fn_particip",
        "fn_abstain",
        "fn_total",
        "total_loss",
        "pass_lo",
        "pass_mid",
        "pass_hi",
        "threshold_status",
    )
    rows = []
    for a in alpha_grid:
        bd = loss_components(a, inst, prior, quad, weights)
        passes = tuple(best_response(a, mu, inst).pass_prob for mu in probes)
        rows.append(
            (
                a,
                bd.mu_tau,
                bd.fp_particip,
                bd.fn_particip,
                bd.fn_abstain,
                bd.fn_particip + bd.fn_abstain,
                bd.total,
                passes[0],
                passes[1],
                passes[2],
                bd.threshold_status,
            )
        )
    return SweepTable(columns, tuple(rows))

"""Participation threshold and critical significance level.

Participation is monotone in the applicant's belief: if a belief ``mu``
enters the trial, every higher belief does too.  That makes the marginal
belief ``mu_tau(alpha)`` a bisection target.  The critical significance
level ``alpha_hat`` is where that marginal belief crosses the baseline
rate; below it no weak applicant ever finds the test worth gaming, above
it some do.  Both solvers work purely through best responses, so they
stay agnostic about how beliefs are distributed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .agent import BELIEF_CEIL, BELIEF_FLOOR, EconomicInstance, best_response
from .errors import DomainError

#: Tolerance used by the bisection solvers when none is given.
DEFAULT_EPS = 1e-6


@dataclass(frozen=True, slots=True)
class ParticipationThreshold:
    """Marginal belief at a fixed significance level.

    ``status`` is ``"interior"`` for a genuine crossing, or records that
    the whole clamped belief range participates (``"all_participate"``)
    or abstains (``"none_participate"``), in which case ``mu_tau`` is the
    corresponding clamp boundary.
    """

    mu_tau: float
    epsilon: float
    status: str


@dataclass(frozen=True, slots=True)
class CriticalAlpha:
    """Significance level at which the marginal belief meets the baseline.

    ``epsilon`` records the achieved distance |mu_tau(alpha_hat) - mu_b|.
    ``status`` is ``"interior"``, ``"at_floor"`` (the crossing sits at or
    below the search floor), or ``"no_feasible_alpha"`` (the marginal
    belief stays above the baseline over the whole search range, e.g.
    when revenue cannot cover the cheapest trial).
    """

    alpha_hat: float
    epsilon: float
    status: str


def _check_eps(eps: float) -> None:
    if not (0.0 < eps < 0.5):
        raise DomainError(f"tolerance must lie in (0, 0.5), got {eps!r}")


def participation_threshold(
    alpha: float, inst: EconomicInstance, eps: float = DEFAULT_EPS
) -> ParticipationThreshold:
    """Lowest belief that still participates, to within ``eps``.

    Bisects the clamped belief range on the participation predicate and
    returns the bracket midpoint once the bracket is narrower than
    ``eps``; ``epsilon`` carries the final half-width.
    """
    _check_eps(eps)
    lo, hi = BELIEF_FLOOR, BELIEF_CEIL
    if best_response(alpha, lo, inst).participates:
        return ParticipationThreshold(lo, 0.0, "all_participate")
    if not best_response(alpha, hi, inst).participates:
        return ParticipationThreshold(hi, 0.0, "none_participate")
    while hi - lo > eps:
        mid = 0.5 * (lo + hi)
        if best_response(alpha, mid, inst).participates:
            hi = mid
        else:
            lo = mid
    return ParticipationThreshold(0.5 * (lo + hi), 0.5 * (hi - lo), "interior")


def critical_alpha_closed_form(inst: EconomicInstance) -> float:
    """Break-even significance level of the baseline-belief applicant.

    An applicant whose belief equals the baseline passes with probability
    exactly ``alpha`` no matter the trial size, so it participates exactly
    when ``R * alpha`` covers the cheapest trial: the crossing sits at
    ``(c0 + c * n_min) / R``.
    """
    return (inst.c0 + inst.c * inst.n_min) / inst.R


def critical_alpha(inst: EconomicInstance, eps: float = DEFAULT_EPS) -> CriticalAlpha:
    """Significance level where the marginal belief crosses the baseline.

    Outer bisection over ``alpha`` on the predicate ``mu_tau(alpha) <=
    mu_b`` (valid because the marginal belief is non-increasing in
    ``alpha``), with the inner threshold solved two orders of magnitude
    tighter so predicate noise cannot dominate.  The loop keeps bisecting
    until both the bracket and the achieved belief gap are within
    ``eps``, or float resolution is reached.
    """
    _check_eps(eps)
    mu_b = inst.mu_b
    inner_eps = eps * 1e-2

    def mu_tau(a: float) -> float:
        return participation_threshold(a, inst, inner_eps).mu_tau

    lo, hi = eps, 1.0 - eps
    mt_lo = mu_tau(lo)
    if mt_lo <= mu_b:
        return CriticalAlpha(lo, abs(mt_lo - mu_b), "at_floor")
    mt_hi = mu_tau(hi)
    if mt_hi > mu_b:
        return CriticalAlpha(hi, abs(mt_hi - mu_b), "no_feasible_alpha")
    for _ in range(90):
        mid = 0.5 * (lo + hi)
        mt = mu_tau(mid)
        if mt <= mu_b:
            hi = mid
        else:
            lo = mid
        width = hi - lo
        if width <= eps and abs(mt - mu_b) <= eps:
            break
        if width <= 4e-16 * max(hi, 1.0):
            break
    alpha_hat = 0.5 * (lo + hi)
    achieved = abs(mu_tau(alpha_hat) - mu_b)
    return CriticalAlpha(alpha_hat, achieved, "interior")

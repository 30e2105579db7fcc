"""Applicant-side model: trial economics, pass probability, best response.

An applicant with private success probability ``mu0`` faces a one-sided
approval test: run ``n`` samples and pass when the observed success count
clears the critical region of a size-``alpha`` binomial test against a
baseline rate ``mu_b``.  Under the normal approximation the pass chance is

    pass(alpha, mu0, n) = 1 - Phi(d * s_b / s_0 - (mu0 - mu_b) * sqrt(n) / s_0)

with ``d = Phi^{-1}(1 - alpha)`` and ``s_b``, ``s_0`` the Bernoulli standard
deviations at ``mu_b`` and ``mu0``.  Utility is revenue times pass chance
minus a fixed cost and a per-sample cost; abstaining earns exactly zero.

The expected-utility curve over real-valued ``n`` is pieced together from
at most three curvature regions (the sign of the second derivative is
governed by a quadratic in ``sqrt(n)``), so the integer optimum can be
found with a handful of forward-difference binary searches instead of an
exhaustive scan.  The exhaustive scan is retained as an oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError, SearchRangeError
from .stats import std_normal_pdf, std_normal_quantile, std_normal_sf

# Beliefs are clamped away from {0, 1} so the Bernoulli variance never
# degenerates inside the solvers.
BELIEF_FLOOR = 1e-6
BELIEF_CEIL = 1.0 - 1e-6

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True, slots=True)
class EconomicInstance:
    """Economics of one approval problem.

    ``R`` is the revenue on approval, ``c0`` the fixed cost of running any
    trial at all, ``c`` the marginal cost per sample, ``mu_b`` the baseline
    success rate the test is sized against, and ``[n_min, n_max]`` the
    admissible trial sizes.  All monetary fields share one arbitrary unit.
    """

    R: float
    c0: float
    c: float
    mu_b: float
    n_min: int = 1
    n_max: int = 100_000

    def __post_init__(self) -> None:
        problems = []
        if not (self.R > 0.0 and math.isfinite(self.R)):
            problems.append(f"R must be a positive finite number, got {self.R!r}")
        if not (self.c0 >= 0.0 and math.isfinite(self.c0)):
            problems.append(f"c0 must be a nonnegative finite number, got {self.c0!r}")
        if not (self.c >= 0.0 and math.isfinite(self.c)):
            problems.append(f"c must be a nonnegative finite number, got {self.c!r}")
        if not (0.0 < self.mu_b < 1.0):
            problems.append(f"mu_b must lie strictly between 0 and 1, got {self.mu_b!r}")
        if self.n_min < 1:
            problems.append(f"n_min must be at least 1, got {self.n_min!r}")
        if self.n_max < self.n_min:
            problems.append(f"n_max must be >= n_min, got {self.n_max!r}")
        if problems:
            raise DomainError("invalid EconomicInstance: " + "; ".join(problems))


@dataclass(frozen=True, slots=True)
class BestResponse:
    """Outcome of the applicant's participation and trial-size choice."""

    participates: bool
    n_star: int
    pass_prob: float
    utility: float


@dataclass(frozen=True, slots=True)
class CurvatureRegion:
    """Maximal interval of trial sizes with a single curvature sign."""

    n_lo: float
    n_hi: float
    shape: str  # "concave" or "convex"


@dataclass(frozen=True, slots=True)
class CurvatureRegions:
    """Ordered, contiguous curvature regions covering [n_min, n_max]."""

    regions: tuple[CurvatureRegion, ...]


def _check_alpha(alpha: float) -> None:
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"significance level must lie strictly between 0 and 1, got {alpha!r}")


def _check_belief(mu0: float) -> None:
    if not (BELIEF_FLOOR <= mu0 <= BELIEF_CEIL):
        raise DomainError(
            f"belief must lie within [{BELIEF_FLOOR}, {BELIEF_CEIL}], got {mu0!r}"
        )


def _check_baseline(mu_b: float) -> None:
    if not (0.0 < mu_b < 1.0):
        raise DomainError(f"baseline rate must lie strictly between 0 and 1, got {mu_b!r}")


@lru_cache(maxsize=2048)
def _upper_quantile(alpha: float) -> float:
    """Cached ``Phi^{-1}(1 - alpha)``; sweeps revisit the same alpha often."""
    return std_normal_quantile(1.0 - alpha)


def critical_region(alpha: float, n: int, mu_b: float) -> float:
    """Success-count threshold of the one-sided binomial test of size ``alpha``.

    Returns the (real-valued) boundary ``n*mu_b + Phi^{-1}(1-alpha) *
    sqrt(n*mu_b*(1-mu_b))``; the test passes when the observed count
    reaches it.
    """
    _check_alpha(alpha)
    _check_baseline(mu_b)
    if n < 0:
        raise DomainError(f"sample count must be nonnegative, got {n!r}")
    return n * mu_b + _upper_quantile(alpha) * math.sqrt(n * mu_b * (1.0 - mu_b))


def pass_probability(alpha: float, mu0: float, n: int, mu_b: float) -> float:
    """Chance that a trial of size ``n`` clears the test, believed rate ``mu0``.

    Running no trial never passes, so ``n = 0`` maps to exactly zero.
    """
    _check_alpha(alpha)
    _check_belief(mu0)
    _check_baseline(mu_b)
    if n < 0:
        raise DomainError(f"sample count must be nonnegative, got {n!r}")
    if n == 0:
        return 0.0
    d = _upper_quantile(alpha)
    sigma0 = math.sqrt(mu0 * (1.0 - mu0))
    sigma_b = math.sqrt(mu_b * (1.0 - mu_b))
    v = (d * sigma_b - (mu0 - mu_b) * math.sqrt(n)) / sigma0
    return std_normal_sf(v)


def utility(alpha: float, mu0: float, n: int, inst: EconomicInstance) -> float:
    """Expected profit of running ``n`` samples; abstaining (``n = 0``) is 0."""
    if n == 0:
        return 0.0
    if not (inst.n_min <= n <= inst.n_max):
        raise DomainError(
            f"sample count must be 0 or within [{inst.n_min}, {inst.n_max}], got {n!r}"
        )
    p = pass_probability(alpha, mu0, n, inst.mu_b)
    return inst.R * p - (inst.c0 + inst.c * n)


def utility_slope(alpha: float, mu0: float, n: float, inst: EconomicInstance) -> float:
    """Derivative of expected profit with respect to a real-valued ``n``.

    Only defined on the effective side ``mu0 > mu_b``, where larger trials
    trade a shrinking chance of failure against the per-sample cost.
    """
    _check_alpha(alpha)
    _check_belief(mu0)
    if mu0 <= inst.mu_b:
        raise DomainError(
            f"slope is defined only for mu0 > mu_b, got mu0={mu0!r}, mu_b={inst.mu_b!r}"
        )
    if not n > 0.0:
        raise DomainError(f"sample count must be positive, got {n!r}")
    d = _upper_quantile(alpha)
    dmu = mu0 - inst.mu_b
    sigma0 = math.sqrt(mu0 * (1.0 - mu0))
    sigma_b = math.sqrt(inst.mu_b * (1.0 - inst.mu_b))
    rootn = math.sqrt(n)
    v = (d * sigma_b - dmu * rootn) / sigma0
    return std_normal_pdf(v) * inst.R * dmu / (2.0 * sigma0 * rootn) - inst.c


def _curvature_breaks(d: float, mu0: float, mu_b: float) -> tuple[float, float] | None:
    """Real trial sizes where the utility's curvature changes sign.

    With ``v(n) = (d*s_b - dmu*sqrt(n)) / s_0`` the second derivative of
    expected profit is ``R * dmu * pdf(v) / (4 * s_0 * n^{3/2}) *
    (v * dmu * sqrt(n) / s_0 - 1)``, so in ``t = sqrt(n)`` its sign is
    ruled by the quadratic ``t^2 - (d*s_b/dmu)*t + s_0^2/dmu^2``
    (positive value means concave).  The root product is always positive,
    so sign changes come in pairs: either none, or two positive roots
    bracketing a convex window.
    """
    dmu = mu0 - mu_b
    sigma0_sq = mu0 * (1.0 - mu0)
    dsb = d * math.sqrt(mu_b * (1.0 - mu_b))
    disc = dsb * dsb - 4.0 * sigma0_sq
    if disc <= 0.0 or dsb <= 0.0:
        return None
    t_hi = (dsb + math.sqrt(disc)) / (2.0 * dmu)
    t_lo = (sigma0_sq / (dmu * dmu)) / t_hi
    return (t_lo * t_lo, t_hi * t_hi)


def curvature_regions(alpha: float, mu0: float, inst: EconomicInstance) -> CurvatureRegions:
    """Partition of [n_min, n_max] by the curvature of expected profit."""
    _check_alpha(alpha)
    _check_belief(mu0)
    if mu0 <= inst.mu_b:
        raise DomainError(
            f"curvature analysis applies only for mu0 > mu_b, got mu0={mu0!r}, mu_b={inst.mu_b!r}"
        )
    lo, hi = float(inst.n_min), float(inst.n_max)
    breaks = _curvature_breaks(_upper_quantile(alpha), mu0, inst.mu_b)
    if breaks is None:
        pieces = [(lo, hi, "concave")]
    else:
        n1, n2 = breaks
        pieces = []
        for plo, phi, shape in ((0.0, n1, "concave"), (n1, n2, "convex"), (n2, math.inf, "concave")):
            a, b = max(plo, lo), min(phi, hi)
            if a < b:
                pieces.append((a, b, shape))
        if not pieces:
            # Degenerate n_min = n_max: classify the single admissible size.
            shape = "convex" if n1 < lo < n2 else "concave"
            pieces = [(lo, hi, shape)]
    return CurvatureRegions(tuple(CurvatureRegion(a, b, s) for a, b, s in pieces))


def _concave_argmax(u_of, a: int, b: int) -> int:
    """Largest-utility integer in [a, b] for a concave utility sequence.

    Binary search on the sign of the forward difference u(n+1) - u(n),
    which is non-increasing on a concave stretch.
    """
    if a >= b:
        return a
    if u_of(a + 1) - u_of(a) <= 0.0:
        return a
    if u_of(b) - u_of(b - 1) > 0.0:
        return b
    lo, hi = a, b - 1  # forward difference positive at lo, nonpositive at hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if u_of(mid + 1) - u_of(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return hi


def best_response(alpha: float, mu0: float, inst: EconomicInstance) -> BestResponse:
    """Participation decision and optimal integer trial size.

    On the weak side (``mu0 <= mu_b``) more samples only hurt, so the only
    candidate is ``n_min``.  On the effective side the curvature partition
    reduces the search to binary searches within concave stretches plus
    endpoint checks in the convex window.  Exact utility ties resolve to
    the smaller trial size, and a tie with zero resolves to participating.
    """
    _check_alpha(alpha)
    _check_belief(mu0)
    d = _upper_quantile(alpha)
    mu_b = inst.mu_b
    n_min, n_max = inst.n_min, inst.n_max
    R, c0, c = inst.R, inst.c0, inst.c

    sigma0 = math.sqrt(mu0 * (1.0 - mu0))
    dmu = mu0 - mu_b
    ds = d * math.sqrt(mu_b * (1.0 - mu_b))

    def p_of(n: int) -> float:
        v = (ds - dmu * math.sqrt(n)) / sigma0
        return 0.5 * math.erfc(v / _SQRT2)

    def u_of(n: int) -> float:
        return R * p_of(n) - (c0 + c * n)

    if dmu <= 0.0:
        candidates = [n_min]
    else:
        candidates = {n_min, n_max}
        breaks = _curvature_breaks(d, mu0, mu_b)
        if breaks is None:
            spans = [(float(n_min), float(n_max), True)]
        else:
            n1, n2 = breaks
            spans = []
            for plo, phi, concave in ((0.0, n1, True), (n1, n2, False), (n2, math.inf, True)):
                a, b = max(plo, float(n_min)), min(phi, float(n_max))
                if a < b:
                    spans.append((a, b, concave))
            for r in breaks:
                if n_min <= r <= n_max:
                    candidates.add(int(math.floor(r)))
                    candidates.add(int(math.ceil(r)))
        for a_real, b_real, concave in spans:
            a, b = int(math.ceil(a_real)), int(math.floor(b_real))
            a, b = max(a, n_min), min(b, n_max)
            if a > b:
                continue
            candidates.add(a)
            candidates.add(b)
            if concave and b > a:
                candidates.add(_concave_argmax(u_of, a, b))
        candidates = sorted(candidates)

    best_n = 0
    best_u = -math.inf
    for n in candidates:
        u = u_of(n)
        if u > best_u:
            best_n, best_u = n, u
    if best_u >= 0.0:
        return BestResponse(True, best_n, p_of(best_n), best_u)
    return BestResponse(False, 0, 0.0, 0.0)


def best_response_bruteforce(alpha: float, mu0: float, inst: EconomicInstance) -> BestResponse:
    """Exhaustive reference solver scanning every admissible trial size.

    Kept deliberately simple so it can arbitrate the region-based solver.
    Refuses ranges beyond a million sizes, where scanning stops being a
    reasonable oracle.
    """
    _check_alpha(alpha)
    _check_belief(mu0)
    if inst.n_max - inst.n_min > 1_000_000:
        raise SearchRangeError(
            f"exhaustive scan over [{inst.n_min}, {inst.n_max}] is too large; "
            "use best_response instead"
        )
    best_n = 0
    best_u = -math.inf
    for n in range(inst.n_min, inst.n_max + 1):
        u = utility(alpha, mu0, n, inst)
        if u > best_u:
            best_n, best_u = n, u
    if best_u >= 0.0:
        return BestResponse(True, best_n, pass_probability(alpha, mu0, best_n, inst.mu_b), best_u)
    return BestResponse(False, 0, 0.0, 0.0)

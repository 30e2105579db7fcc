"""Applicant model: pass probability, utility, curvature, best response.

The region-based best-response solver is held to the exhaustive scan as
its oracle; curvature region boundaries are cross-checked against finite
second differences of the utility itself.  Point values are frozen from
independent closed-form evaluation (scipy.stats.norm) or from the scan.
"""

import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from trialgame import (
    BestResponse,
    DomainError,
    EconomicInstance,
    SearchRangeError,
    best_response,
    best_response_bruteforce,
    critical_region,
    curvature_regions,
    pass_probability,
    utility,
    utility_slope,
)

# One instance reused throughout: unit revenue, affordable trials.
INST = EconomicInstance(R=1.0, c0=0.05, c=0.002, mu_b=0.5, n_min=1, n_max=500)

# Frozen with scipy: n*mu_b + norm.ppf(1 - alpha) * sqrt(n*mu_b*(1-mu_b)).
CRITICAL_0_05_100 = 58.22426813475737
CRITICAL_0_05_400 = 216.44853626951473
# Frozen with scipy: norm.sf((ppf(0.95)*0.5 - 0.1*10) / sqrt(0.24)).
PASS_0_05_06_100 = 0.6414994872716355
# Frozen from the exhaustive scan over n in [1, 500] on INST.
BEST_N = 166
BEST_UTILITY = 0.4472444943225101
BEST_PASS = 0.8292444943225101


def test_instance_validation_reports_every_problem():
    with pytest.raises(DomainError) as excinfo:
        EconomicInstance(R=-1.0, c0=-2.0, c=-0.5, mu_b=2.0, n_min=0, n_max=-5)
    message = str(excinfo.value)
    for fragment in ("R must be", "c0 must be", "c must be", "mu_b must", "n_min must"):
        assert fragment in message


def test_instance_rejects_inverted_size_range():
    with pytest.raises(DomainError, match="n_max"):
        EconomicInstance(R=1.0, c0=0.0, c=0.0, mu_b=0.5, n_min=10, n_max=9)


def test_critical_region_frozen_values():
    assert abs(critical_region(0.05, 100, 0.5) - CRITICAL_0_05_100) < 1e-10
    assert abs(critical_region(0.05, 400, 0.5) - CRITICAL_0_05_400) < 1e-10
    assert critical_region(0.05, 0, 0.5) == 0.0


def test_critical_region_monotone():
    grid = [critical_region(0.05, n, 0.5) for n in (10, 50, 100, 400, 1000)]
    assert all(b > a for a, b in zip(grid, grid[1:]))
    # A laxer test moves the bar down.
    by_alpha = [critical_region(a, 100, 0.5) for a in (0.01, 0.05, 0.2, 0.5)]
    assert all(b < a for a, b in zip(by_alpha, by_alpha[1:]))


def test_critical_region_domain_checks():
    with pytest.raises(DomainError):
        critical_region(0.0, 100, 0.5)
    with pytest.raises(DomainError):
        critical_region(0.05, -1, 0.5)
    with pytest.raises(DomainError):
        critical_region(0.05, 100, 1.0)


def test_pass_probability_frozen_value():
    assert abs(pass_probability(0.05, 0.6, 100, 0.5) - PASS_0_05_06_100) < 1e-12


def test_pass_probability_without_a_trial_is_zero():
    assert pass_probability(0.05, 0.6, 0, 0.5) == 0.0


def test_pass_probability_at_baseline_equals_alpha():
    # An applicant whose belief sits exactly on the baseline faces a pass
    # chance of alpha at every trial size.
    for alpha in (0.01, 0.05, 0.2):
        for n in (1, 10, 100, 10_000):
            assert abs(pass_probability(alpha, 0.5, n, 0.5) - alpha) < 1e-9


def test_pass_probability_domain_checks():
    with pytest.raises(DomainError):
        pass_probability(1.0, 0.6, 10, 0.5)
    with pytest.raises(DomainError):
        pass_probability(0.05, 0.0, 10, 0.5)
    with pytest.raises(DomainError):
        pass_probability(0.05, 0.6, -1, 0.5)


@given(
    st.floats(min_value=1e-4, max_value=0.5),
    st.floats(min_value=1e-6, max_value=1.0 - 1e-6),
    st.integers(min_value=0, max_value=5000),
    st.floats(min_value=0.05, max_value=0.95),
)
@settings(max_examples=300)
def test_pass_probability_within_unit_interval(alpha, mu0, n, mu_b):
    assert 0.0 <= pass_probability(alpha, mu0, n, mu_b) <= 1.0


@given(
    st.floats(min_value=1e-4, max_value=0.4),
    st.floats(min_value=1e-4, max_value=0.4),
    st.floats(min_value=1e-6, max_value=1.0 - 1e-6),
    st.integers(min_value=1, max_value=2000),
    st.floats(min_value=0.05, max_value=0.95),
)
@settings(max_examples=300)
def test_pass_probability_monotone_in_alpha(alpha, bump, mu0, n, mu_b):
    wider = pass_probability(alpha + bump, mu0, n, mu_b)
    narrower = pass_probability(alpha, mu0, n, mu_b)
    assert wider + 1e-12 >= narrower


@given(
    st.floats(min_value=1e-4, max_value=0.5),
    st.floats(min_value=1e-6, max_value=0.64),
    st.floats(min_value=1e-4, max_value=0.65),
    st.integers(min_value=1, max_value=2000),
    st.floats(min_value=0.15, max_value=0.85),
)
@settings(max_examples=300)
def test_pass_probability_monotone_in_belief_below_065(alpha, mu_lo, mu_hi, n, mu_b):
    # Monotonicity in the belief holds throughout mu0 <= 0.65.  For much
    # higher beliefs combined with tiny alpha and small n the shrinking
    # Bernoulli variance can overpower the mean shift, so the range here
    # is deliberately capped.
    if mu_hi <= mu_lo:
        mu_lo, mu_hi = mu_hi, mu_lo
    higher = pass_probability(alpha, mu_hi, n, mu_b)
    lower = pass_probability(alpha, mu_lo, n, mu_b)
    assert higher + 1e-12 >= lower


@given(
    st.floats(min_value=1e-4, max_value=0.5),
    st.floats(min_value=0.55, max_value=0.9),
    st.integers(min_value=1, max_value=1000),
    st.integers(min_value=1, max_value=1000),
)
@settings(max_examples=300)
def test_pass_probability_monotone_in_size_on_effective_side(alpha, mu0, n, extra):
    more = pass_probability(alpha, mu0, n + extra, 0.5)
    fewer = pass_probability(alpha, mu0, n, 0.5)
    assert more + 1e-12 >= fewer


@given(
    st.floats(min_value=1e-4, max_value=0.5),
    st.floats(min_value=0.1, max_value=0.45),
    st.integers(min_value=1, max_value=1000),
    st.integers(min_value=1, max_value=1000),
)
@settings(max_examples=300)
def test_pass_probability_monotone_in_size_on_weak_side(alpha, mu0, n, extra):
    more = pass_probability(alpha, mu0, n + extra, 0.5)
    fewer = pass_probability(alpha, mu0, n, 0.5)
    assert more <= fewer + 1e-12


def test_utility_frozen_value_and_abstention():
    assert abs(utility(0.05, 0.6, 100, INST) - 0.3914994872716355) < 1e-12
    assert utility(0.05, 0.6, 0, INST) == 0.0


def test_utility_rejects_sizes_outside_admissible_range():
    with pytest.raises(DomainError):
        utility(0.05, 0.6, 501, INST)
    with pytest.raises(DomainError):
        utility(0.05, 0.6, 1, EconomicInstance(1.0, 0.0, 0.0, 0.5, n_min=5, n_max=10))


def test_utility_slope_matches_forward_differences():
    # The discrete increment u(n+1) - u(n) equals the continuous slope at
    # the midpoint up to third-order curvature, far below 1e-6 here.
    for n in (50, 100, 200):
        increment = utility(0.05, 0.6, n + 1, INST) - utility(0.05, 0.6, n, INST)
        midpoint = utility_slope(0.05, 0.6, n + 0.5, INST)
        assert abs(increment - midpoint) < 1e-6


def test_utility_slope_domain_checks():
    with pytest.raises(DomainError):
        utility_slope(0.05, 0.5, 100.0, INST)  # weak side
    with pytest.raises(DomainError):
        utility_slope(0.05, 0.6, 0.0, INST)


def test_curvature_regions_frozen_partition():
    # Frozen from the sign quadratic: breaks at n = 0.000172... and
    # n = 9.8606519...; only the upper one falls inside [1, 500].
    regions = curvature_regions(0.001, 0.99, INST).regions
    assert [r.shape for r in regions] == ["convex", "concave"]
    assert regions[0].n_lo == 1.0
    assert abs(regions[0].n_hi - 9.860651933216221) < 1e-9
    assert regions[1].n_hi == 500.0


def test_curvature_regions_single_concave_case():
    regions = curvature_regions(0.05, 0.6, INST).regions
    assert len(regions) == 1
    assert regions[0].shape == "concave"
    assert (regions[0].n_lo, regions[0].n_hi) == (1.0, 500.0)


def test_curvature_regions_tile_the_size_range():
    for alpha, mu0 in ((0.001, 0.99), (0.05, 0.6), (0.3, 0.52), (1e-4, 0.8)):
        regions = curvature_regions(alpha, mu0, INST).regions
        assert regions[0].n_lo == float(INST.n_min)
        assert regions[-1].n_hi == float(INST.n_max)
        for left, right in zip(regions, regions[1:]):
            assert left.n_hi == right.n_lo
            assert left.shape != right.shape


def test_curvature_regions_match_second_differences():
    # Second differences of the realised utility must agree in sign with
    # the claimed shape, probing well inside each region.
    def second_diff(n):
        return (
            utility(0.001, 0.99, n - 1, INST)
            + utility(0.001, 0.99, n + 1, INST)
            - 2.0 * utility(0.001, 0.99, n, INST)
        )

    for n in (3, 5, 8):  # inside the convex window [1, 9.86]
        assert second_diff(n) > 0.0
    for n in (11, 12, 13):  # concave stretch, before the pass chance saturates
        assert second_diff(n) < 0.0


def test_curvature_regions_degenerate_range_classified():
    single = EconomicInstance(1.0, 0.05, 0.002, 0.5, n_min=5, n_max=5)
    regions = curvature_regions(0.001, 0.99, single).regions
    assert len(regions) == 1
    assert regions[0].shape == "convex"  # 5 sits between the two breaks


def test_curvature_regions_reject_weak_side():
    with pytest.raises(DomainError):
        curvature_regions(0.05, 0.5, INST)


def test_best_response_frozen_worked_instance():
    br = best_response(0.05, 0.6, INST)
    assert br == BestResponse(True, BEST_N, BEST_PASS, BEST_UTILITY)
    # Flanking sizes are strictly worse, pinning the argmax.
    assert utility(0.05, 0.6, BEST_N - 1, INST) < BEST_UTILITY
    assert utility(0.05, 0.6, BEST_N + 1, INST) < BEST_UTILITY


def test_best_response_zero_utility_still_participates():
    # Fixed cost tuned so the best utility is exactly 0.0 in floats.
    p1 = pass_probability(0.3, 0.5, 1, 0.5)
    boundary = EconomicInstance(R=1.0, c0=p1, c=0.0, mu_b=0.5, n_min=1, n_max=10)
    br = best_response(0.3, 0.5, boundary)
    assert br.participates
    assert br.n_star == 1
    assert br.utility == 0.0


def test_best_response_abstains_when_trials_cannot_pay():
    expensive = EconomicInstance(R=1.0, c0=2.0, c=0.002, mu_b=0.5, n_min=1, n_max=500)
    assert best_response(0.05, 0.69, expensive) == BestResponse(False, 0, 0.0, 0.0)


def test_best_response_weak_side_buys_minimum_or_nothing():
    for mu0 in (0.2, 0.4, 0.5):
        br = best_response(0.3, mu0, EconomicInstance(1.0, 0.01, 0.001, 0.5, 3, 500))
        assert br.n_star in (0, 3)


def test_best_response_flat_utility_resolves_to_smallest_size():
    # At the baseline belief with no per-sample cost every size earns the
    # same; the tie must resolve downward.
    flat = EconomicInstance(R=1.0, c0=0.01, c=0.0, mu_b=0.5, n_min=2, n_max=50)
    assert best_response(0.3, 0.5, flat).n_star == 2


def test_best_response_agrees_with_exhaustive_scan():
    rng = random.Random(20240817)
    for _ in range(60):
        inst = EconomicInstance(
            R=10.0 ** rng.uniform(-1.0, 3.0),
            c0=10.0 ** rng.uniform(-4.0, 1.0),
            c=10.0 ** rng.uniform(-6.0, 0.0),
            mu_b=rng.uniform(0.05, 0.95),
            n_min=rng.randrange(1, 30),
            n_max=rng.randrange(40, 1500),
        )
        alpha = 10.0 ** rng.uniform(-4.0, math.log10(0.5))
        mu0 = rng.uniform(1e-6, 1.0 - 1e-6)
        fast = best_response(alpha, mu0, inst)
        slow = best_response_bruteforce(alpha, mu0, inst)
        assert fast.participates == slow.participates
        assert fast.n_star == slow.n_star
        assert fast.utility == slow.utility
        assert fast.pass_prob == slow.pass_prob


@given(
    st.floats(min_value=1e-3, max_value=0.5),
    st.floats(min_value=0.05, max_value=0.95),
)
@settings(max_examples=150, deadline=None)
def test_best_response_reports_consistent_numbers(alpha, mu0):
    br = best_response(alpha, mu0, INST)
    if br.participates:
        assert INST.n_min <= br.n_star <= INST.n_max
        assert br.utility == utility(alpha, mu0, br.n_star, INST)
        assert br.pass_prob == pass_probability(alpha, mu0, br.n_star, INST.mu_b)
        assert br.utility >= 0.0
    else:
        assert br == BestResponse(False, 0, 0.0, 0.0)


def test_bruteforce_refuses_unreasonable_ranges():
    huge = EconomicInstance(1.0, 0.05, 0.002, 0.5, 1, 2_000_000)
    with pytest.raises(SearchRangeError):
        best_response_bruteforce(0.05, 0.6, huge)
    # The region-based solver handles the same range fine.
    assert best_response(0.05, 0.6, huge).participates

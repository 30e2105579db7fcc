"""Numerical building blocks: normal tails, binomial tails, truncated priors.

Everything here is deliberately dependency-free.  The standard normal CDF
rides on the C library's ``erfc`` (absolute error well below 1e-12), the
quantile uses Acklam's rational approximation sharpened by one Newton step
against that CDF, and the binomial tail is an exact log-space summation that
stays stable out to counts of a million.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Protocol

from .errors import DomainError

_SQRT2 = math.sqrt(2.0)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)

# Coefficients of Acklam's rational approximation to the standard normal
# quantile (relative error ~1.15e-9 before refinement).
_ACKLAM_A = (
    -3.969683028665376e01,
    2.209460984245205e02,
    -2.759285104469687e02,
    1.383577518672690e02,
    -3.066479806614716e01,
    2.506628277459239e00,
)
_ACKLAM_B = (
    -5.447609879822406e01,
    1.615858368580409e02,
    -1.556989798598866e02,
    6.680131188771972e01,
    -1.328068155288572e01,
)
_ACKLAM_C = (
    -7.784894002430293e-03,
    -3.223964580411365e-01,
    -2.400758277161838e00,
    -2.549732539343734e00,
    4.374664141464968e00,
    2.938163982698783e00,
)
_ACKLAM_D = (
    7.784695709041462e-03,
    3.224671290700398e-01,
    2.445134137142996e00,
    3.754408661907416e00,
)
_ACKLAM_P_LOW = 0.02425


def std_normal_pdf(z: float) -> float:
    """Density of the standard normal distribution at ``z``."""
    if not math.isfinite(z):
        raise DomainError(f"std_normal_pdf requires a finite argument, got {z!r}")
    return _INV_SQRT_2PI * math.exp(-0.5 * z * z)


def std_normal_cdf(z: float) -> float:
    """Left tail probability of the standard normal distribution at ``z``."""
    if not math.isfinite(z):
        raise DomainError(f"std_normal_cdf requires a finite argument, got {z!r}")
    return 0.5 * math.erfc(-z / _SQRT2)


def std_normal_sf(z: float) -> float:
    """Right tail ``1 - cdf(z)``, computed without cancellation."""
    if not math.isfinite(z):
        raise DomainError(f"std_normal_sf requires a finite argument, got {z!r}")
    return 0.5 * math.erfc(z / _SQRT2)


def _acklam(p: float) -> float:
    a, b, c, d = _ACKLAM_A, _ACKLAM_B, _ACKLAM_C, _ACKLAM_D
    if p < _ACKLAM_P_LOW:
        q = math.sqrt(-2.0 * math.log(p))
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) / (
            (((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0
        )
    if p > 1.0 - _ACKLAM_P_LOW:
        q = math.sqrt(-2.0 * math.log(1.0 - p))
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) / (
            (((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0
        )
    q = p - 0.5
    r = q * q
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q / (
        ((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0
    )


def std_normal_quantile(p: float) -> float:
    """Inverse of :func:`std_normal_cdf` on the open interval (0, 1).

    One Newton correction against the erfc-based CDF pushes the rational
    approximation down to roundoff level, so ``cdf(quantile(p))`` matches
    ``p`` to well under 1e-9.
    """
    if not (0.0 < p < 1.0):
        raise DomainError(f"std_normal_quantile requires 0 < p < 1, got {p!r}")
    x = _acklam(p)
    pdf = std_normal_pdf(x)
    if pdf > 0.0:
        x -= (std_normal_cdf(x) - p) / pdf
    return x


def binomial_tail(n: int, k: int, p: float) -> float:
    """Exact upper tail ``P[X >= k]`` for ``X ~ Binomial(n, p)``.

    Terms are generated from a log-space starting point and a running
    ratio, so neither the binomial coefficients nor the powers of ``p``
    ever overflow or underflow prematurely.  Whichever tail is smaller is
    the one actually summed, which preserves relative accuracy for
    near-zero results and absolute accuracy for near-one results.
    """
    if n < 0:
        raise DomainError(f"binomial_tail requires n >= 0, got {n}")
    if not (0.0 <= p <= 1.0):
        raise DomainError(f"binomial_tail requires 0 <= p <= 1, got {p!r}")
    if k <= 0:
        return 1.0
    if k > n:
        return 0.0
    if p == 0.0:
        return 0.0
    if p == 1.0:
        return 1.0

    log_ratio = math.log(p) - math.log1p(-p)

    def log_pmf(i: int) -> float:
        return (
            math.lgamma(n + 1.0)
            - math.lgamma(i + 1.0)
            - math.lgamma(n - i + 1.0)
            + i * math.log(p)
            + (n - i) * math.log1p(-p)
        )

    if k > n * p:
        # Small upper tail: sum pmf(k), pmf(k+1), ... directly.
        term = math.exp(log_pmf(k))
        total = term
        for i in range(k, n):
            # pmf(i+1) / pmf(i) = (n-i)/(i+1) * p/(1-p)
            term *= (n - i) / (i + 1.0) * math.exp(log_ratio)
            total += term
            if term < total * 1e-17:
                break
        return min(total, 1.0)

    # Large upper tail: sum the complementary lower tail downward from k-1.
    term = math.exp(log_pmf(k - 1))
    total = term
    for i in range(k - 1, 0, -1):
        # pmf(i-1) / pmf(i) = i/(n-i+1) * (1-p)/p
        term *= i / (n - i + 1.0) * math.exp(-log_ratio)
        total += term
        if term < total * 1e-17:
            break
    return max(1.0 - total, 0.0)


class Prior(Protocol):
    """Belief distribution over an applicant's true success probability."""

    def pdf(self, mu: float) -> float: ...

    def cdf(self, mu: float) -> float: ...

    @property
    def support(self) -> tuple[float, float]: ...


@dataclass(frozen=True)
class TruncatedNormalPrior:
    """Normal distribution truncated to a subinterval of (0, 1).

    ``pdf`` and ``cdf`` are renormalised so the retained mass integrates
    to one; outside ``[lo, hi]`` the density is zero and the CDF clamps.
    """

    mean: float
    sd: float
    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (self.sd > 0.0 and math.isfinite(self.sd)):
            raise DomainError(f"TruncatedNormalPrior requires sd > 0, got {self.sd!r}")
        if not (0.0 < self.lo < self.hi < 1.0):
            raise DomainError(
                f"TruncatedNormalPrior requires 0 < lo < hi < 1, got lo={self.lo!r} hi={self.hi!r}"
            )
        if not math.isfinite(self.mean):
            raise DomainError(f"TruncatedNormalPrior requires a finite mean, got {self.mean!r}")
        if self._mass() <= 0.0:
            raise DomainError(
                "TruncatedNormalPrior support carries no probability mass "
                f"(mean={self.mean!r}, sd={self.sd!r}, support=[{self.lo!r}, {self.hi!r}])"
            )

    def _mass(self) -> float:
        return std_normal_cdf((self.hi - self.mean) / self.sd) - std_normal_cdf(
            (self.lo - self.mean) / self.sd
        )

    @property
    def support(self) -> tuple[float, float]:
        return (self.lo, self.hi)

    def pdf(self, mu: float) -> float:
        if mu < self.lo or mu > self.hi:
            return 0.0
        return std_normal_pdf((mu - self.mean) / self.sd) / (self.sd * self._mass())

    def cdf(self, mu: float) -> float:
        if mu <= self.lo:
            return 0.0
        if mu >= self.hi:
            return 1.0
        low = std_normal_cdf((self.lo - self.mean) / self.sd)
        return (std_normal_cdf((mu - self.mean) / self.sd) - low) / self._mass()

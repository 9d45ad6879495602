"""Rotation-scale selection: the success probability P(alpha), the
fidelity F(alpha) against the exact threshold target, their combined
objective G = sqrt(P) * F, and four ways to choose alpha.

For a spectrum sigma_1 > ... > sigma_r > 0 with shrinkage fractions
y_k = (1 - tau/sigma_k)_+:

    P(a) = sum sigma_k^2 sin^2(y_k a) / N1,          N1 = sum sigma_k^2
    F(a) = sum sigma_k^2 y_k sin(y_k a) / sqrt(N2 * N1 * P(a)),
                                                     N2 = sum sigma_k^2 y_k^2
    G(a) = sum sigma_k^2 y_k sin(y_k a) / sqrt(N1 * N2)
    G'(a) = sum sigma_k^2 y_k^2 cos(y_k a) / sqrt(N1 * N2)

Sums use compensated (fsum) accumulation so large-rank profiles do not
lose precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import FullyThresholdedError, ValidationError
from .spectral import check_threshold

_GRID_POINTS = 1 << 12
_GOLDEN_TOL = 1e-8


@dataclass(frozen=True)
class SpectrumProfile:
    """Singular values (strictly descending) with their shrinkage
    fractions; the first fraction must be positive and strictly larger
    than the second."""

    sigma: tuple[float, ...]
    y: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.sigma) == 0 or len(self.sigma) != len(self.y):
            raise ValidationError("sigma and y must be equal-length and non-empty")
        if any(s <= 0 for s in self.sigma):
            raise ValidationError("sigma must be positive")
        if any(a <= b for a, b in zip(self.sigma, self.sigma[1:])):
            raise ValidationError("sigma must be strictly descending")
        if any(not 0 <= v < 1 for v in self.y):
            raise ValidationError("shrinkage fractions must lie in [0, 1)")
        if self.y[0] <= 0:
            raise FullyThresholdedError("largest singular value is thresholded out")
        if len(self.y) > 1 and self.y[0] <= self.y[1]:
            raise ValidationError("first shrinkage gap must be strict")

    @classmethod
    def from_sigma_tau(cls, sigma, tau: float) -> "SpectrumProfile":
        sig = tuple(float(s) for s in np.asarray(sigma, dtype=float))
        check_threshold(tau, sig[0])
        return cls(sig, tuple(max(1.0 - tau / s, 0.0) for s in sig))

    @property
    def n1(self) -> float:
        return math.fsum(s * s for s in self.sigma)

    @property
    def n2(self) -> float:
        return math.fsum(s * s * v * v for s, v in zip(self.sigma, self.y))


def probability(profile: SpectrumProfile, alpha: float) -> float:
    """Post-selection success probability P(alpha)."""
    num = math.fsum(
        s * s * math.sin(v * alpha) ** 2 for s, v in zip(profile.sigma, profile.y)
    )
    return num / profile.n1


def fidelity_analytic(profile: SpectrumProfile, alpha: float) -> float:
    """Overlap of the rotated output with the exact threshold target."""
    n2 = profile.n2
    if n2 <= 0:
        raise FullyThresholdedError("spectrum fully thresholded (N2 = 0)")
    nalpha = math.fsum(
        s * s * math.sin(v * alpha) ** 2 for s, v in zip(profile.sigma, profile.y)
    )
    if nalpha <= 0:
        raise ValidationError("zero post-selection probability at this alpha")
    num = math.fsum(
        s * s * v * math.sin(v * alpha) for s, v in zip(profile.sigma, profile.y)
    )
    return num / math.sqrt(n2 * nalpha)


def g_objective(profile: SpectrumProfile, alpha: float) -> float:
    num = math.fsum(
        s * s * v * math.sin(v * alpha) for s, v in zip(profile.sigma, profile.y)
    )
    return num / math.sqrt(profile.n1 * profile.n2)


def g_derivative(profile: SpectrumProfile, alpha: float) -> float:
    num = math.fsum(
        s * s * v * v * math.cos(v * alpha) for s, v in zip(profile.sigma, profile.y)
    )
    return num / math.sqrt(profile.n1 * profile.n2)


@dataclass(frozen=True)
class AlphaSolution:
    method: str
    alpha: float
    P: float
    F: float
    G: float

    def __post_init__(self) -> None:
        if abs(self.G - math.sqrt(self.P) * self.F) > 1e-12:
            raise ValidationError("G = sqrt(P) * F self-consistency check failed")


def _solution(profile: SpectrumProfile, method: str, alpha: float) -> AlphaSolution:
    return AlphaSolution(
        method=method,
        alpha=alpha,
        P=probability(profile, alpha),
        F=fidelity_analytic(profile, alpha),
        G=g_objective(profile, alpha),
    )


def alpha_intuitive(profile: SpectrumProfile) -> AlphaSolution:
    """Closed form pi / (2 y_1): puts the dominant component on the
    sine peak.  Needs only the largest singular value."""
    return _solution(profile, "intuitive", math.pi / (2.0 * profile.y[0]))


def alpha_taylor2(profile: SpectrumProfile) -> AlphaSolution:
    """Second-order series solution sqrt(2 sum s^2 y^2 / sum s^2 y^4)."""
    denom = math.fsum(s * s * v**4 for s, v in zip(profile.sigma, profile.y))
    if denom <= 0:
        raise ValidationError("degenerate denominator in the order-2 solution")
    return _solution(profile, "taylor2", math.sqrt(2.0 * profile.n2 / denom))


def alpha_taylor4(profile: SpectrumProfile) -> AlphaSolution:
    """Fourth-order series solution sqrt((b - sqrt(b^2 - 4ac)) / (2a))
    with a = sum s^2 y^6 / 24, b = sum s^2 y^4 / 2, c = sum s^2 y^2."""
    a = math.fsum(s * s * v**6 for s, v in zip(profile.sigma, profile.y)) / 24.0
    b = math.fsum(s * s * v**4 for s, v in zip(profile.sigma, profile.y)) / 2.0
    c = profile.n2
    if a <= 0:
        raise ValidationError("degenerate leading coefficient in the order-4 solution")
    disc = b * b - 4.0 * a * c
    if disc < 0:
        raise ValidationError(
            "negative discriminant in the order-4 solution; fall back to taylor2"
        )
    return _solution(profile, "taylor4", math.sqrt((b - math.sqrt(disc)) / (2.0 * a)))


def _golden_max(f, lo: float, hi: float, tol: float = _GOLDEN_TOL) -> float:
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return (a + b) / 2.0


def alpha_numeric(profile: SpectrumProfile) -> AlphaSolution:
    """Bracketed maximizer of G over (0, pi / y_1].

    A dense grid (2^12 points) is refined by golden sections to within
    1e-8; the closed-form candidates are seeded into the search so the
    result never scores below any of them.
    """
    hi = math.pi / profile.y[0]
    grid = np.linspace(0.0, hi, _GRID_POINTS + 1)[1:]
    sig = np.asarray(profile.sigma)
    yv = np.asarray(profile.y)
    scale = math.sqrt(profile.n1 * profile.n2)
    gvals = ((sig**2 * yv) @ np.sin(np.outer(yv, grid))) / scale
    cell = grid[1] - grid[0]
    candidates = [float(grid[int(np.argmax(gvals))])]
    for closed in (alpha_intuitive, alpha_taylor2, alpha_taylor4):
        try:
            candidates.append(closed(profile).alpha)
        except (ValidationError, FullyThresholdedError):
            continue
    best = None
    for seed in candidates:
        refined = _golden_max(
            lambda a: g_objective(profile, a), max(seed - cell, 1e-12), seed + cell
        )
        for alpha in (refined, seed):
            g = g_objective(profile, alpha)
            if best is None or g > best[1]:
                best = (alpha, g)
    return _solution(profile, "numeric", best[0])


_METHODS = {
    "intuitive": alpha_intuitive,
    "taylor2": alpha_taylor2,
    "taylor4": alpha_taylor4,
    "numeric": alpha_numeric,
}


def resolve_alpha(profile: SpectrumProfile, method: str) -> tuple[AlphaSolution, str]:
    """Dispatch by method name.  A taylor4 discriminant failure falls
    back to taylor2; the returned note records the substitution."""
    if method not in _METHODS:
        raise ValidationError(f"unknown alpha method {method!r}")
    if method == "taylor4":
        try:
            return alpha_taylor4(profile), ""
        except ValidationError:
            return alpha_taylor2(profile), "taylor4 discriminant negative; used taylor2"
    return _METHODS[method](profile), ""

"""Cosine-integral and Laplace representations used by the Kanter bound.

The t-integrals all live on [0, pi] with weight (1 + cos t) / pi:

* ``F(lam, alpha)`` integrates ``|1 - alpha(1 - cos t)| ** (lam / alpha)``;
* ``G(lam)`` integrates ``exp(-lam (1 - cos t))``;
* ``STPC_p({0, 1})`` integrates ``prod_j (1 - p_j (1 - cos t))``.

Substituting ``x`` for the log of the base turns F and G into Laplace
transforms of the densities ``f`` and ``g`` below, and ``1/sqrt(1 + lam)``
is the Laplace transform of ``h``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._gauss import QuadResult, QuadratureError, integrate
from .bessel import _fourier_breaks, _g_integrand, _one_minus_cos
from .lattice import ParamVector

__all__ = [
    "LaplaceDensities",
    "QuadResult",
    "QuadratureError",
    "extremal_integrand",
    "f_lambda_alpha",
    "g_fourier",
    "g_h_sign_pattern",
    "f_g_sign_pattern",
    "laplace_f_density",
    "laplace_g_density",
    "laplace_h_density",
    "laplace_transform",
    "laplace_transform_check",
    "g_laplace_check",
    "stpc01_fourier",
]

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-11
# upper cut for the x-integrals; every density is O(exp(-x)) beyond it
X_MAX = 60.0


def _check_alpha(alpha) -> float:
    alpha = float(alpha)
    if not 0 < alpha <= 1:
        raise ValueError(f"alpha={alpha} outside (0, 1]")
    return alpha


def f_lambda_alpha(lam: float, alpha: float, tol: float = DEFAULT_TOL) -> QuadResult:
    """(1/pi) int_0^pi |1 - alpha(1 - cos t)|^(lam/alpha) (1 + cos t) dt."""
    lam = float(lam)
    if not lam > 0:
        raise ValueError("lambda must be positive")
    alpha = _check_alpha(alpha)
    power = lam / alpha

    def f(t):
        base = np.abs(1.0 - alpha * _one_minus_cos(t))
        return base**power * (1.0 + np.cos(t)) / math.pi

    singular = []
    if alpha >= 0.5:
        # the base vanishes at t(alpha) = arccos(1 - 1/alpha)
        singular.append(math.acos(max(-1.0, 1.0 - 1.0 / alpha)))
    return integrate(f, 0.0, math.pi, tol=tol, breakpoints=_fourier_breaks(lam), singular=singular)


def g_fourier(lam: float, tol: float = DEFAULT_TOL) -> QuadResult:
    lam = float(lam)
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    return integrate(_g_integrand(lam), 0.0, math.pi, tol=tol, breakpoints=_fourier_breaks(lam))


def stpc01_fourier(p, tol: float = DEFAULT_TOL) -> QuadResult:
    """Mass of {0, 1} under the symmetric three-point convolution, by Fourier inversion."""
    ps = np.array([float(a) for a in ParamVector.of(p)], dtype=float)

    def f(t):
        u = _one_minus_cos(t)
        prod = np.prod(1.0 - ps[:, None] * u[None, :], axis=0) if ps.size else np.ones_like(t)
        return prod * (1.0 + np.cos(t)) / math.pi

    return integrate(f, 0.0, math.pi, tol=tol, breakpoints=_fourier_breaks(float(ps.sum())))


def extremal_integrand(lam: float, ell: int, m: int, alpha: float, tol: float = DEFAULT_TOL) -> QuadResult:
    """(1/pi) int_0^pi cos(t)^ell (1 - alpha(1 - cos t))^m (1 + cos t) dt.

    This is the {0, 1} mass of the convolution with ``ell`` entries equal
    to 1 and ``m`` entries equal to ``alpha``. ``lam`` only sets panel
    edges; it is meant to equal ``ell + m * alpha``.
    """
    if ell < 0 or m < 0:
        raise ValueError("ell and m must be nonnegative")
    if abs(ell + m * float(alpha) - float(lam)) > 1e-12 * max(1.0, float(lam)):
        log.debug("extremal_integrand: ell + m*alpha = %r differs from lam = %r", ell + m * alpha, lam)
    alpha = float(alpha)

    def f(t):
        c = np.cos(t)
        return c**ell * (1.0 - alpha * _one_minus_cos(t)) ** m * (1.0 + c) / math.pi

    return integrate(f, 0.0, math.pi, tol=tol, breakpoints=_fourier_breaks(max(float(lam), 0.0)))


@dataclass(frozen=True)
class LaplaceDensities:
    """Constants of the Laplace densities for one alpha in (0, 1].

    ``x_alpha`` is where the second branch of ``f`` switches on (infinite
    when ``beta <= 0``); ``x_end`` is where ``f`` vanishes for good (finite
    only when ``beta < 0``).
    """

    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", _check_alpha(self.alpha))

    @property
    def beta(self) -> float:
        return 2.0 * self.alpha - 1.0

    @property
    def x_alpha(self) -> float:
        return -math.log(self.beta) if self.beta > 0 else math.inf

    @property
    def x_end(self) -> float:
        return -math.log(-self.beta) if self.beta < 0 else math.inf

    def f(self, x):
        x = np.asarray(x, dtype=float)
        em = np.exp(-x)
        om = -np.expm1(-x)
        c = em / (math.pi * self.alpha)
        first = c * np.sqrt(np.maximum(self.beta + em, 0.0) / om)
        second = c * np.sqrt(np.maximum(self.beta - em, 0.0) / (1.0 + em))
        return first + second

    def g(self, x):
        x = np.asarray(x, dtype=float)
        a2 = 2.0 * self.alpha
        inside = (x > 0) & (x < a2)
        safe = np.where(inside, x, 1.0)
        return np.where(inside, np.sqrt(np.maximum(a2 - safe, 0.0) / safe) / (math.pi * self.alpha), 0.0)


def _positive(x):
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("densities are defined for x > 0")
    return x


def laplace_f_density(x, alpha: float):
    out = LaplaceDensities(alpha).f(_positive(x))
    return float(out) if out.ndim == 0 else out


def laplace_g_density(x, alpha: float):
    out = LaplaceDensities(alpha).g(_positive(x))
    return float(out) if out.ndim == 0 else out


def laplace_h_density(x):
    x = _positive(x)
    out = np.exp(-x) / np.sqrt(math.pi * x)
    return float(out) if out.ndim == 0 else out


def laplace_transform(
    density: str, s: float, alpha: float = 1.0, moment: int = 0, tol: float = 1e-12
) -> QuadResult:
    """int_0^inf x**moment * exp(-s x) * density(x) dx for density in {"f", "g", "h"}."""
    s = float(s)
    if s < 0:
        raise ValueError("s must be nonnegative")
    dens = LaplaceDensities(alpha)
    if density == "f":
        base = dens.f
        singular = [0.0]
        for point in (dens.x_alpha, dens.x_end):
            if 0 < point < X_MAX:
                singular.append(point)
        upper = min(X_MAX, dens.x_end)
    elif density == "g":
        base = dens.g
        singular = [0.0, 2.0 * dens.alpha]
        upper = 2.0 * dens.alpha
    elif density == "h":
        base = lambda x: np.exp(-x) / np.sqrt(math.pi * x)  # noqa: E731
        singular = [0.0]
        upper = X_MAX
    else:
        raise ValueError(f"unknown density {density!r}")

    def integrand(x):
        return x**moment * np.exp(-s * x) * base(x)

    breaks = [b for b in (1.0, 2.0, 5.0, 10.0, 20.0) if b < upper]
    res = integrate(integrand, 0.0, upper, tol=tol, breakpoints=breaks, singular=singular)
    tail = 0.0
    if upper == X_MAX:
        # densities are at most exp(-x) * 2/(pi alpha) * sqrt(2) out here
        tail = (X_MAX + 1.0) ** moment * math.exp(-X_MAX) * 3.0 / dens.alpha
    return QuadResult(res.value, res.est_abs_error + tail, res.subdivisions)


def laplace_transform_check(lam: float, alpha: float, tol: float = 1e-12) -> tuple[float, float]:
    """F(lam, alpha) directly (lhs) and as the Laplace transform of f at lam/alpha (rhs)."""
    lhs = f_lambda_alpha(lam, alpha, tol=tol).value
    rhs = laplace_transform("f", float(lam) / float(alpha), alpha, tol=tol).value
    return lhs, rhs


def g_laplace_check(lam: float, alpha: float = 1.0, tol: float = 1e-12) -> tuple[float, float]:
    """G(lam) from the cosine integral (lhs) and as the Laplace transform of g (rhs)."""
    lhs = g_fourier(lam, tol=tol).value
    rhs = laplace_transform("g", float(lam) / float(alpha), alpha, tol=tol).value
    return lhs, rhs


def _sign_runs(diff: np.ndarray) -> list[str]:
    runs: list[str] = []
    for d in diff:
        if d == 0:
            continue
        sym = "+" if d > 0 else "-"
        if not runs or runs[-1] != sym:
            runs.append(sym)
    return runs


def _grid(step: float, x_max: float, exclude: Sequence[float], window: float) -> np.ndarray:
    xs = step * np.arange(1, int(round(x_max / step)) + 1)
    keep = np.ones(xs.shape, dtype=bool)
    for e in exclude:
        if math.isfinite(e):
            keep &= np.abs(xs - e) > window / 2
    return xs[keep]


def f_g_sign_pattern(alpha: float, step: float = 1e-4, x_max: float = 4.0, window: float = 1e-6) -> list[str]:
    """Compressed sign runs of f - g on a grid, zeros skipped."""
    dens = LaplaceDensities(alpha)
    xs = _grid(step, x_max, (dens.x_alpha, 2.0 * dens.alpha, dens.x_end), window)
    return _sign_runs(dens.f(xs) - dens.g(xs))


def g_h_sign_pattern(step: float = 1e-4, x_max: float = 4.0, window: float = 1e-6) -> list[str]:
    """Compressed sign runs of g - h (alpha = 1) on a grid."""
    dens = LaplaceDensities(1.0)
    xs = _grid(step, x_max, (2.0,), window)
    return _sign_runs(dens.g(xs) - np.exp(-xs) / np.sqrt(math.pi * xs))

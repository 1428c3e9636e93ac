"""Scaled modified Bessel functions and the concentration bound function G.

``G(lam) = exp(-lam) * (I_0(lam) + I_1(lam))`` is the mass that the
symmetrized Poisson law with parameter ``lam`` puts on {0, 1}. For
``lam <= LAMBDA_SWITCH`` everything is summed from the power series in
scaled form; above it the cosine-integral representation is integrated
numerically, which needs no scaling since its integrand lies in [0, 2].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._gauss import integrate

__all__ = [
    "GEvaluation",
    "LAMBDA_SWITCH",
    "g_asymptotic_large",
    "g_bound_h",
    "g_bound_quarter",
    "g_bound_sqrt",
    "g_taylor_small",
    "g_value",
    "scaled_bessel_i",
    "scaled_bessel_i_fourier",
    "sympois_pmf",
]

LAMBDA_SWITCH = 30.0
ASYMPTOTIC_FROM = 1e7
_EPS = 2.220446049250313e-16
_FOURIER_TOL = 1e-14


@dataclass(frozen=True)
class GEvaluation:
    lam: float
    value: float
    method: str
    est_abs_error: float


def _check_lambda(lam) -> float:
    lam = float(lam)
    if math.isnan(lam):
        raise ValueError("lambda is NaN")
    if lam < 0:
        raise ValueError(f"lambda={lam} must be nonnegative")
    return lam


def _series(k: int, lam: float) -> tuple[float, float]:
    """exp(-lam) * I_k(lam) by the power series; returns (value, error bound)."""
    if lam == 0.0:
        return (1.0 if k == 0 else 0.0), 0.0
    q = 0.25 * lam * lam
    term = math.exp(k * (math.log(lam) - math.log(2.0)) - math.lgamma(k + 1) - lam)
    terms = [term]
    j = 0
    while True:
        j += 1
        term *= q / (j * (j + k))
        terms.append(term)
        total = math.fsum(terms)
        if term <= 1e-17 * total or total == 0.0:
            break
    # last term bounds the (geometrically decaying) tail; plus accumulated rounding
    return total, term + 4.0 * _EPS * len(terms) * total


def _fourier_breaks(lam: float) -> list[float]:
    # geometric panel edges on the sqrt(1/lam) scale of the integrand's peak at t = 0
    if lam <= 1.0:
        return []
    out, t = [], 1.0 / math.sqrt(lam)
    while t < math.pi:
        out.append(t)
        t *= 2.0
    return out


def _one_minus_cos(t):
    s = np.sin(0.5 * t)
    return 2.0 * s * s


def scaled_bessel_i_fourier(k: int, lam: float, tol: float = _FOURIER_TOL):
    """exp(-lam) I_k(lam) as (1/pi) * int_0^pi exp(-lam(1 - cos t)) cos(kt) dt."""
    lam = _check_lambda(lam)
    k = abs(int(k))

    def f(t):
        return np.exp(-lam * _one_minus_cos(t)) * np.cos(k * t) / math.pi

    return integrate(f, 0.0, math.pi, tol=tol, breakpoints=_fourier_breaks(lam))


def scaled_bessel_i(k: int, lam: float) -> float:
    """exp(-lam) * I_|k|(lam) for lam >= 0."""
    lam = _check_lambda(lam)
    k = abs(int(k))
    if lam <= LAMBDA_SWITCH:
        return _series(k, lam)[0]
    return scaled_bessel_i_fourier(k, lam).value


def sympois_pmf(lam: float, k: int) -> float:
    return scaled_bessel_i(k, lam)


def _g_integrand(lam):
    def f(t):
        return np.exp(-lam * _one_minus_cos(t)) * (1.0 + np.cos(t)) / math.pi

    return f


def _g_asymptotic_terms(lam: float, terms: int) -> tuple[float, float]:
    """Large-argument expansion of G; returns (value, size of next term)."""

    def coeffs(k):
        mu = 4 * k * k
        out, prod = [], 1.0
        for j in range(terms + 1):
            if j:
                prod *= -(mu - (2 * j - 1) ** 2) / (8.0 * j)
            out.append(prod)
        return out

    c = [a + b for a, b in zip(coeffs(0), coeffs(1))]
    scale = 1.0 / math.sqrt(2.0 * math.pi * lam)
    value = scale * math.fsum(c[j] / lam**j for j in range(terms))
    return value, scale * abs(c[terms]) / lam**terms


def g_value(lam: float) -> GEvaluation:
    """G(lam) with an absolute error estimate of at most 1e-10."""
    lam = _check_lambda(lam)
    if lam == 0.0:
        return GEvaluation(0.0, 1.0, "series", 0.0)
    if lam <= LAMBDA_SWITCH:
        v0, e0 = _series(0, lam)
        v1, e1 = _series(1, lam)
        return GEvaluation(lam, v0 + v1, "series", e0 + e1 + _EPS * (v0 + v1))
    if lam < ASYMPTOTIC_FROM:
        res = integrate(_g_integrand(lam), 0.0, math.pi, tol=_FOURIER_TOL, breakpoints=_fourier_breaks(lam))
        return GEvaluation(lam, res.value, "fourier_quadrature", res.est_abs_error)
    value, nxt = _g_asymptotic_terms(lam, 4)
    return GEvaluation(lam, value, "asymptotic", 2.0 * nxt + _EPS * value)


def g_bound_sqrt(lam: float) -> float:
    """sqrt(2 / (pi lam)), a strict upper bound for G on (0, inf)."""
    lam = float(lam)
    if not lam > 0:
        raise ValueError("lambda must be positive")
    return math.sqrt(2.0 / (math.pi * lam))


def g_bound_quarter(lam: float) -> float:
    """sqrt((2/pi) / (1/4 + lam)); sharper than :func:`g_bound_sqrt`."""
    lam = float(lam)
    if not lam > 0:
        raise ValueError("lambda must be positive")
    return math.sqrt((2.0 / math.pi) / (0.25 + lam))


def g_bound_h(lam: float) -> float:
    lam = _check_lambda(lam)
    return 1.0 / math.sqrt(1.0 + lam)


def g_asymptotic_large(lam: float) -> float:
    lam = float(lam)
    if not lam > 0:
        raise ValueError("lambda must be positive")
    return math.sqrt(2.0 / (math.pi * lam)) * (1.0 - 1.0 / (8.0 * lam) - 3.0 / (128.0 * lam * lam))


def g_taylor_small(lam: float) -> float:
    lam = float(lam)
    return 1.0 - lam / 2.0 + lam * lam / 4.0

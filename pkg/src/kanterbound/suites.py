"""Named bundles of checks behind ``kanterbound verify``."""

from __future__ import annotations

import math
import time
from fractions import Fraction
from typing import Callable

from . import bessel, quadrature
from .lattice import LatticePMF, psi, radc, interval_prob
from .verify import (
    VerifyOutcome,
    argmax_location_check,
    convergence_check,
    ell_counterexample,
    g_ell_floor_check,
    hoeffding_ineq_check,
    kanter_grid_sweep,
    mixture_identity_check,
    schur_counterexample,
    sharpness_gaps,
    symmetrized_bernoulli_check,
    sympois_mixture_check,
    theorem11_check,
    verify_kanter,
)

__all__ = ["SUITES", "run_suite"]

SUITES = ("all", "kanter", "identities", "counterexamples", "analytic")

DYADIC = [2.0**e for e in range(-6, 11)]
F_LAMBDAS = (0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0)
F_ALPHAS = tuple(k / 20 for k in range(1, 21))


def _timed(fn: Callable[[], VerifyOutcome]) -> VerifyOutcome:
    t0 = time.perf_counter()
    out = fn()
    out.runtime_ms = (time.perf_counter() - t0) * 1e3
    return out


def _sharpness() -> VerifyOutcome:
    ns = [10, 20, 40, 80, 160]
    gaps = sharpness_gaps(2, ns)
    ok = all(a > b for a, b in zip(gaps, gaps[1:])) and gaps[-1] < 0.01 and gaps[-1] > 0
    return VerifyOutcome("sharpness_squeeze", ok, gaps[-1], [[2, n] for n in ns], {"gaps": gaps})


def _symmetric_equality() -> VerifyOutcome:
    x0 = 3
    ws = [Fraction(0)] * (2 * x0 + 1)
    ws[0] = ws[-1] = Fraction(1, 6)
    ws[x0] = Fraction(2, 3)
    X = LatticePMF(-x0, tuple(ws))
    out = theorem11_check([X, X], x0, [Fraction(x0, 2)])
    out.name = "symmetric_equality"
    out.passed = out.margin == 0
    return out


def _kanter_checks(max_n: int, step: Fraction, margin: float) -> list[Callable[[], VerifyOutcome]]:
    return [
        lambda: kanter_grid_sweep(max_n, step, margin),
        lambda: verify_kanter([1, 1]),
        lambda: verify_kanter([Fraction(3, 10)]),
        _sharpness,
        lambda: argmax_location_check([Fraction(1, 2), Fraction(1, 3), Fraction(3, 4)]),
        _symmetric_equality,
    ]


def _psi_table() -> VerifyOutcome:
    bad = [m for m in range(21) if psi(m) != interval_prob(radc(m), 0, 2)]
    head = [psi(m) for m in range(5)]
    ok = not bad and head == [1, Fraction(1, 2), Fraction(1, 2), Fraction(3, 8), Fraction(3, 8)]
    return VerifyOutcome("psi_table", ok, None, bad, {"psi_0_4": head})


def _laplace_identities(tol: float) -> VerifyOutcome:
    gaps = {}
    g_lhs, g_rhs = quadrature.g_laplace_check(2.0, 1.0, tol)
    gaps["G_laplace"] = max(abs(g_rhs - bessel.g_value(2.0).value), abs(g_lhs - g_rhs))
    gaps["h_laplace"] = abs(quadrature.laplace_transform("h", 3.0, tol=tol).value - bessel.g_bound_h(3.0))
    f_lhs, f_rhs = quadrature.laplace_transform_check(1.0, 1.0, tol)
    gaps["F_laplace"] = abs(f_lhs - f_rhs)
    for a in (0.3, 1.0):
        gaps[f"mass_f_{a}"] = abs(quadrature.laplace_transform("f", 0.0, a, tol=tol).value - 1.0)
        gaps[f"mass_g_{a}"] = abs(quadrature.laplace_transform("g", 0.0, a, tol=tol).value - 1.0)
    gaps["mean_h"] = abs(quadrature.laplace_transform("h", 0.0, moment=1, tol=tol).value - 0.5)
    gaps["mean_g"] = abs(quadrature.laplace_transform("g", 0.0, 1.0, moment=1, tol=tol).value - 0.5)
    worst = max(gaps.values())
    return VerifyOutcome("laplace_identities", worst <= 1e-8, 1e-8 - worst, [], gaps)


def _identity_checks(tol: float) -> list[Callable[[], VerifyOutcome]]:
    return [
        lambda: mixture_identity_check([Fraction(1, 2), Fraction(1, 3)]),
        lambda: mixture_identity_check([Fraction(1, 7), 1, Fraction(5, 6), Fraction(2, 9)]),
        lambda: sympois_mixture_check(3.0, 1e-12),
        lambda: symmetrized_bernoulli_check([0.5, 0.25, 0.1, 0.4]),
        lambda: convergence_check(2.0, [10, 20, 40, 80]),
        _psi_table,
        lambda: _laplace_identities(min(tol, 1e-12)),
    ]


def _counterexample_checks() -> list[Callable[[], VerifyOutcome]]:
    def hoeffding_square():
        return hoeffding_ineq_check(lambda k: k * k, [Fraction(1, 5), Fraction(2, 3), Fraction(9, 10)])

    return [
        lambda: schur_counterexample(1, Fraction(1, 100)),
        lambda: ell_counterexample(1),
        lambda: ell_counterexample(3),
        lambda: g_ell_floor_check(3, 1),
        lambda: g_ell_floor_check(5, 2),
        hoeffding_square,
    ]


def _bound_chain() -> VerifyOutcome:
    worst, witness = math.inf, None
    for lam in DYADIC:
        g = bessel.g_value(lam)
        h, q, s = bessel.g_bound_h(lam), bessel.g_bound_quarter(lam), bessel.g_bound_sqrt(lam)
        gap = min(h, q) - g.value - g.est_abs_error
        if q >= s:
            gap = min(gap, s - q)
        if gap < worst:
            worst, witness = gap, lam
    g0 = bessel.g_value(0.0).value
    big = bessel.g_value(100.0).value
    rel = abs(bessel.g_asymptotic_large(100.0) - big) / big
    small = abs(bessel.g_taylor_small(0.01) - bessel.g_value(0.01).value)
    ok = worst > 0 and g0 == 1.0 and rel <= 1e-4 and small <= 5e-6
    return VerifyOutcome(
        "bound_chain", ok, worst, [witness], {"G0": g0, "asymptotic_rel_err_100": rel, "taylor_err_0.01": small}
    )


def _f_below_g(tol: float) -> VerifyOutcome:
    worst, witness, max_err = math.inf, None, 0.0
    for lam in F_LAMBDAS:
        g = bessel.g_value(lam)
        for a in F_ALPHAS:
            r = quadrature.f_lambda_alpha(lam, a, tol)
            max_err = max(max_err, r.est_abs_error)
            gap = g.value - g.est_abs_error - r.value - r.est_abs_error
            if gap < worst:
                worst, witness = gap, [lam, a]
    ok = worst > 1e-8 and max_err <= 1e-9
    return VerifyOutcome("F_below_G", ok, worst, [witness], {"max_est_abs_error": max_err})


def _extremal_convexity(tol: float) -> VerifyOutcome:
    worst, witness = math.inf, None
    for ell, m, alpha in [(0, 3, 0.4), (1, 2, 0.25), (2, 1, 0.5), (1, 4, 0.7), (3, 2, 0.1)]:
        lam = ell + m * alpha
        v = quadrature.extremal_integrand(lam, ell, m, alpha, tol)
        cap = max(quadrature.f_lambda_alpha(lam, alpha, tol).value, quadrature.f_lambda_alpha(lam, 1.0, tol).value)
        gap = cap + tol - v.value
        if gap < worst:
            worst, witness = gap, [ell, m, alpha]
    return VerifyOutcome("extremal_convexity", worst >= 0, worst, [witness])


def _sign_patterns() -> VerifyOutcome:
    pats = {a: quadrature.f_g_sign_pattern(a) for a in (0.2, 0.4, 0.6, 0.8, 1.0)}
    gh = quadrature.g_h_sign_pattern()
    ok = all(p == ["-", "+"] for p in pats.values()) and gh == ["-", "+", "-"]
    details = {f"f-g alpha={a}": "".join(p) for a, p in pats.items()}
    details["g-h"] = "".join(gh)
    return VerifyOutcome("sign_patterns", ok, None, [], details)


def _refinement(tol: float) -> VerifyOutcome:
    # tightening the tolerance must not move the value away from the series oracle
    worst = math.inf
    for lam in (0.5, 5.0):
        oracle = bessel.g_value(lam).value
        coarse = quadrature.g_fourier(lam, 1e-8)
        fine = quadrature.g_fourier(lam, tol)
        worst = min(worst, abs(coarse.value - oracle) + 1e-15 - abs(fine.value - oracle))
    return VerifyOutcome("quadrature_refinement", worst >= 0, worst, [])


def _analytic_checks(tol: float) -> list[Callable[[], VerifyOutcome]]:
    return [
        _bound_chain,
        lambda: _f_below_g(tol),
        _sign_patterns,
        lambda: _extremal_convexity(tol),
        lambda: _refinement(tol),
    ]


def run_suite(
    name: str,
    *,
    tol: float = quadrature.DEFAULT_TOL,
    max_n: int = 6,
    grid_step: Fraction = Fraction(1, 20),
    margin: float = 1e-10,
) -> list[VerifyOutcome]:
    """Run one named suite; every outcome carries its own wall time."""
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    checks: list[Callable[[], VerifyOutcome]] = []
    if name in ("all", "kanter"):
        checks += _kanter_checks(max_n, grid_step, margin)
    if name in ("all", "identities"):
        checks += _identity_checks(tol)
    if name in ("all", "counterexamples"):
        checks += _counterexample_checks()
    if name in ("all", "analytic"):
        checks += _analytic_checks(tol)
    if name == "analytic":
        checks.append(lambda: _laplace_identities(min(tol, 1e-12)))
    return [_timed(c) for c in checks]

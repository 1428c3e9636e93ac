"""Desk-scale verification of the Kanter inequality and its companions.

Every check returns a :class:`VerifyOutcome`. Strict inequalities against a
floating-point right-hand side are only certified when the exact left-hand
side clears ``rhs - est_abs_error``; witnesses are the worst case found (or
the counterexample exhibited).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import bessel
from ._scalar import Scalar, as_scalar
from .lattice import (
    LatticePMF,
    ParamVector,
    argmax_intervals,
    berc,
    beta_of_alpha,
    binom,
    convolve,
    expectation,
    interval_prob,
    max_interval_prob,
    mixture,
    poisson_truncated,
    psi,
    radc,
    reflect,
    stp,
    stpc,
    sympois_truncated,
    tv_distance,
)

__all__ = [
    "ExtremalCandidate",
    "VerifyOutcome",
    "argmax_location_check",
    "convergence_check",
    "ell_counterexample",
    "extremal_candidates",
    "extremal_max",
    "g_ell_floor_check",
    "hoeffding_ineq_check",
    "kanter_grid_sweep",
    "mixture_identity_check",
    "schur_counterexample",
    "second_difference",
    "sharpness_gaps",
    "symmetrized_bernoulli_check",
    "sympois_mixture_check",
    "theorem11_check",
    "verify_kanter",
]


@dataclass
class VerifyOutcome:
    name: str
    passed: bool
    margin: Scalar | None = None
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    runtime_ms: float = 0.0


def _exact_params(p) -> ParamVector:
    p = ParamVector.of(p)
    if p.mode == "float":
        p = ParamVector(tuple(Fraction(e) for e in p))
    return p


def _g_threshold(lam) -> tuple[float, Fraction]:
    """G(lam) and the exact number an exact lhs must stay below."""
    lam_f = float(lam)
    g = bessel.g_value(lam_f)
    # |G'| <= 1/2 covers rounding lam to a float
    err = g.est_abs_error + 0.5 * abs(Fraction(lam) - Fraction(lam_f))
    return g.value, Fraction(g.value) - Fraction(err)


def verify_kanter(p, use_exact: bool = True) -> VerifyOutcome:
    """max_k STPC_p({k, k+1}) < G(|p|) for one parameter vector with |p| > 0."""
    p = _exact_params(p) if use_exact else ParamVector(tuple(float(e) for e in ParamVector.of(p)))
    lam = p.total
    if not lam > 0:
        raise ValueError("need |p| > 0")
    k, lhs = max_interval_prob(stpc(p), 2)
    g, thr = _g_threshold(lam)
    passed = Fraction(lhs) < thr
    return VerifyOutcome(
        "kanter",
        passed,
        g - float(lhs),
        [list(p.entries)],
        {"k_star": k, "lhs": lhs, "G": g},
    )


def _int_step3(w: list, side: int, center: int) -> list:
    out = [0] * (len(w) + 2)
    for i, x in enumerate(w):
        out[i] += side * x
        out[i + 1] += center * x
        out[i + 2] += side * x
    return out


def kanter_grid_sweep(max_n: int = 6, step=Fraction(1, 20), margin: float = 0.0) -> VerifyOutcome:
    """Check the Kanter inequality on every grid vector up to permutation.

    Entries range over the positive multiples of ``step`` in (0, 1]; zero
    entries and reorderings leave STPC_p unchanged and are skipped. Each
    vector must satisfy ``lhs < G(|p|) - est_abs_error - margin`` exactly.
    Integer-scaled convolution keeps the sweep exact and fast.
    """
    step = as_scalar(step)
    if not isinstance(step, Fraction) or not 0 < step <= 1:
        raise ValueError("step must be a rational in (0, 1]")
    if max_n < 1:
        raise ValueError("max_n must be at least 1")
    a, b = step.numerator, step.denominator
    levels = int(1 / step)
    # stp(k a / b) scaled by 2b: [k a, 2(b - k a), k a]
    factors = [(k * a, 2 * (b - k * a)) for k in range(1, levels + 1)]
    thresholds: dict[int, tuple[float, Fraction]] = {}

    def threshold(s):
        if s not in thresholds:
            g, thr = _g_threshold(s * step)
            thresholds[s] = (g, thr - Fraction(margin))
        return thresholds[s]

    count = 0
    failures = []
    worst = (math.inf, None)

    def visit(w, den, first, depth, s, idx):
        nonlocal count, worst
        for k in range(first, levels):
            side, center = factors[k]
            nw = _int_step3(w, side, center)
            nden = den * 2 * b
            ns = s + k + 1
            idx.append(k + 1)
            top = max(x + y for x, y in zip(nw, nw[1:]))
            g, thr = threshold(ns)
            count += 1
            if not top * thr.denominator < thr.numerator * nden:
                failures.append([Fraction(i) * step for i in idx])
            gap = g - top / nden
            if gap < worst[0]:
                worst = (gap, [Fraction(i) * step for i in idx])
            if depth + 1 < max_n:
                visit(nw, nden, k, depth + 1, ns, idx)
            idx.pop()

    visit([1], 1, 0, 0, 0, [])
    return VerifyOutcome(
        "kanter_grid",
        not failures,
        worst[0],
        failures[:5] if failures else [worst[1]],
        {"vectors": count, "max_n": max_n, "step": step, "failures": len(failures)},
    )


def sharpness_gaps(lam, ns: Sequence[int]) -> list[float]:
    """G(lam) - STPC_p({0, 1}) for p = (lam/n, ..., lam/n), exact lhs."""
    lam = as_scalar(lam)
    lam = Fraction(lam) if not isinstance(lam, Fraction) else lam
    g = bessel.g_value(float(lam)).value
    out = []
    for n in ns:
        if lam / n > 1:
            raise ValueError(f"lam/n > 1 for n={n}")
        out.append(g - float(interval_prob(stpc([lam / n] * n), 0, 2)))
    return out


def theorem11_check(Xs: Sequence[LatticePMF], t, x_grid: Iterable = ()) -> VerifyOutcome:
    """P(|S - x| < t) <= STPC_p({0, 1}) for symmetric integer X_j, p_j = P(|X_j| >= t).

    ``x`` runs over ``x_grid`` plus every midpoint of two atoms of the sum,
    which includes a maximizer of the open-window probability.
    """
    t = as_scalar(t)
    if not t > 0:
        raise ValueError("t must be positive")
    if not Xs:
        raise ValueError("need at least one variable")
    for X in Xs:
        if X != reflect(X):
            raise ValueError("theorem11_check needs symmetric distributions")
    ps = [sum((w for k, w in X.items() if abs(k) >= t), 0 * X.weights[0]) for X in Xs]
    rhs = interval_prob(stpc(ps), 0, 2)
    S = Xs[0]
    for X in Xs[1:]:
        S = convolve(S, X)
    atoms = list(S.items())
    xs = {as_scalar(x) for x in x_grid}
    for i, (a, _) in enumerate(atoms):
        for c, _ in atoms[i:]:
            xs.add(Fraction(a + c, 2))
    best_x, best = None, None
    for x in sorted(xs):
        lhs = sum((w for k, w in atoms if abs(k - x) < t), 0 * rhs)
        if best is None or lhs > best:
            best_x, best = x, lhs
    margin = rhs - best
    return VerifyOutcome(
        "symmetric_window", margin >= 0, margin, [best_x], {"lhs": best, "rhs": rhs, "p": ps, "points": len(xs)}
    )


@dataclass(frozen=True)
class ExtremalCandidate:
    """Parameter vector with ``ell`` ones, ``m`` entries ``alpha`` and zeros elsewhere."""

    ell: int
    m: int
    alpha: Fraction
    value: Fraction

    @property
    def params(self) -> list:
        return [Fraction(1)] * self.ell + [self.alpha] * self.m


def extremal_candidates(n: int, lam) -> list[ExtremalCandidate]:
    """All maximizer candidates for STPC_p({0,1}) on {p in [0,1]^n : |p| = lam}."""
    lam = as_scalar(lam)
    lam = lam if isinstance(lam, Fraction) else Fraction(lam)
    if not 0 < lam <= n:
        raise ValueError(f"lambda={lam} outside (0, {n}]")
    out = []
    for ell in range(0, math.floor(lam) + 1):
        for m in range(1, n - ell + 1):
            alpha = (lam - ell) / m
            if 0 < alpha < 1:
                p = [Fraction(1)] * ell + [alpha] * m
                out.append(ExtremalCandidate(ell, m, alpha, interval_prob(stpc(p), 0, 2)))
    if lam.denominator == 1:
        ell = int(lam)
        out.append(ExtremalCandidate(ell, 0, Fraction(0), interval_prob(stpc([Fraction(1)] * ell), 0, 2)))
    out.sort(key=lambda c: (c.ell, c.m))
    return out


def extremal_max(n: int, lam) -> ExtremalCandidate:
    return max(extremal_candidates(n, lam), key=lambda c: (c.value, -c.ell, -c.m))


def second_difference(phi: Callable[[int], Scalar], k: int) -> Scalar:
    return phi(k + 2) - 2 * phi(k + 1) + phi(k)


def schur_counterexample(k: int, eps) -> VerifyOutcome:
    """Delta = Bin_{n, mean p} psi - BerC_p psi at p = (1-eps, ..., 1-eps, 1, 1-2 eps).

    A negative Delta shows that the binomial law with the same mean does
    not dominate, hence STPC_p({0,1}) is not Schur concave on [0, 1]^n.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    eps = as_scalar(eps)
    if not isinstance(eps, Fraction):
        raise ValueError("eps must be rational so that the sign is exact")
    if not 0 < eps <= Fraction(1, 2):
        raise ValueError("eps outside (0, 1/2]")
    n = k + 2
    p = [1 - eps] * k + [Fraction(1), 1 - 2 * eps]
    pv = ParamVector(tuple(p))
    delta = expectation(binom(n, pv.mean), psi) - expectation(berc(pv), psi)
    predicted = eps * eps * second_difference(psi, k)
    return VerifyOutcome(
        "schur_counterexample",
        delta < 0,
        -delta,
        [p],
        {"delta": delta, "predicted": predicted, "ratio": delta / predicted, "n": n},
    )


def hoeffding_ineq_check(phi: Callable[[int], Scalar], p) -> VerifyOutcome:
    """BerC_p phi <= Bin_{n, mean p} phi for phi convex on {0, ..., n}."""
    p = _exact_params(p)
    if p.n < 1:
        raise ValueError("need n >= 1")
    for k in range(p.n - 1):
        if second_difference(phi, k) < 0:
            raise ValueError(f"phi is not convex at k={k}")
    lhs = expectation(berc(p), phi)
    rhs = expectation(binom(p.n, p.mean), phi)
    return VerifyOutcome("hoeffding", lhs <= rhs, rhs - lhs, [list(p.entries)], {"lhs": lhs, "rhs": rhs})


def ell_counterexample(ell: int) -> VerifyOutcome:
    """Exhibit the failure of the two-point inequality for one- and three-point windows."""
    if ell == 1:
        found = None
        for m in range(1, 51):
            lhs = Fraction(math.comb(2 * m, m), 4**m)
            rhs = bessel.scaled_bessel_i(0, 2 * m)
            if float(lhs) > rhs + 1e-12:
                found = (m, lhs, rhs)
                break
        ratio = float(Fraction(math.comb(50, 25), 4**25)) / bessel.scaled_bessel_i(0, 50)
        if found is None:
            return VerifyOutcome("ell_counterexample_1", False, None, [], {"ratio_m25": ratio})
        m, lhs, rhs = found
        return VerifyOutcome(
            "ell_counterexample_1",
            True,
            float(lhs) - rhs,
            [{"p": "ones", "n": 2 * m}],
            {"m": m, "lhs": lhs, "rhs": rhs, "ratio_m25": ratio},
        )
    if ell == 3:
        ok, margin, worst = True, math.inf, None
        for i in range(1, 11):
            q = Fraction(i, 10)
            _, lhs = max_interval_prob(stp(q), 3)
            S = sympois_truncated(float(q))
            rhs = float(max_interval_prob(S, 3)[1])
            ok &= lhs == 1 and rhs < 1
            if 1 - rhs < margin:
                margin, worst = 1 - rhs, q
        return VerifyOutcome("ell_counterexample_3", ok, margin, [[worst]], {"q_grid": "1/10..1"})
    raise ValueError("only ell in {1, 3} is supported")


def g_ell_floor_check(ell: int, lam) -> VerifyOutcome:
    """Some p with |p| = lam puts all mass in one ell-point window when lam <= floor((ell-1)/2)."""
    if ell < 1:
        raise ValueError("ell must be at least 1")
    lam = as_scalar(lam)
    lam = lam if isinstance(lam, Fraction) else Fraction(lam)
    if lam < 0 or lam > (ell - 1) // 2:
        raise ValueError(f"lambda={lam} exceeds floor((ell-1)/2) = {(ell - 1) // 2}")
    whole = math.floor(lam)
    p = [Fraction(1)] * whole + ([lam - whole] if lam > whole else [])
    k, value = max_interval_prob(stpc(p), ell)
    return VerifyOutcome("g_ell_floor", value == 1, 1 - value, [p], {"k_star": k})


def mixture_identity_check(p) -> VerifyOutcome:
    """STPC_p equals the BerC_p-mixture of Rademacher convolutions, exactly."""
    p = _exact_params(p)
    lhs = stpc(p)
    B = berc(p)
    rhs = mixture([B[m] for m in range(p.n + 1)], [radc(m) for m in range(p.n + 1)])
    return VerifyOutcome("mixture_identity", lhs == rhs, tv_distance(lhs, rhs), [list(p.entries)])


def sympois_mixture_check(lam: float, tol: float = 1e-12) -> VerifyOutcome:
    """Truncated symmetrized Poisson vs the Poisson mixture of Rademacher convolutions."""
    lam = float(lam)
    S = sympois_truncated(lam, tol)
    pois = poisson_truncated(lam, tol)
    M = mixture(list(pois.weights), [radc(m, "float") for m in range(len(pois.weights))])
    d = tv_distance(S, M)
    return VerifyOutcome("sympois_mixture", d <= 2 * tol, 2 * tol - d, [lam], {"tv": d})


def symmetrized_bernoulli_check(p, tol: float = 1e-12) -> VerifyOutcome:
    """For p_max <= 1/2: STPC_p = BerC_b * reflect(BerC_b) with b_j = beta(p_j)."""
    pf = [float(e) for e in ParamVector.of(p)]
    if pf and max(pf) > 0.5:
        raise ValueError("needs p_max <= 1/2")
    b = [beta_of_alpha(e) for e in pf]
    B = berc(b) if b else berc([]).as_float()
    rhs = convolve(B, reflect(B))
    lhs = stpc(pf) if pf else stpc([]).as_float()
    d = tv_distance(lhs, rhs)
    return VerifyOutcome("symmetrized_bernoulli", d <= tol, tol - d, [pf], {"tv": d})


def convergence_check(lam: float, ns: Sequence[int]) -> VerifyOutcome:
    """TV(STPC_(lam/n,...), SymPois_lam) shrinks along ns and ends below 0.01."""
    lam = float(lam)
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    for n in ns:
        if lam / n > 1:
            raise ValueError(f"lambda/n > 1 for n={n}")
    S = sympois_truncated(lam)
    ds = [float(tv_distance(stpc([lam / n] * n) if lam else stpc([]).as_float(), S)) for n in ns]
    if lam == 0:
        passed = all(d == 0 for d in ds)
    else:
        passed = all(a > b for a, b in zip(ds, ds[1:])) and ds[-1] < 0.01
    return VerifyOutcome("convergence", passed, 0.01 - ds[-1], [list(ns)], {"tv": ds})


def argmax_location_check(p) -> VerifyOutcome:
    """The two-point window mass of STPC_p peaks exactly at k = -1 and k = 0.

    The one exception is an odd Rademacher convolution (nonzero entries
    all 1, an odd number of them): its support has a single parity, so the
    windows at k = -2 and k = 1 tie with the central ones.
    """
    p = _exact_params(p)
    ks = argmax_intervals(stpc(p), 2)
    nonzero = [e for e in p if e != 0]
    odd_rademacher = len(nonzero) % 2 == 1 and all(e == 1 for e in nonzero)
    expected = {-2, -1, 0, 1} if odd_rademacher else {-1, 0}
    return VerifyOutcome(
        "argmax_location",
        set(ks) == expected,
        None,
        [list(p.entries)],
        {"argmax": ks, "odd_rademacher": odd_rademacher},
    )

"""Concentration-function and total-variation smoothness bounds.

The concentration function of a real random variable is
``C(X, t) = sup_x P(X in [x, x + t])``. For independent ``X_1..X_n`` the
Kanter bound gives ``C(sum X_j, t) <= G(sum p_j)`` where each ``p_j`` is
read off the quantile function of ``X_j``; the closed forms
``sqrt(2/pi) / sqrt(1/4 + lam)`` and ``1 / sqrt(1 + lam)`` dominate ``G``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import bessel
from ._scalar import Scalar, as_scalar, common_mode, format_float, format_scalar, parse_scalar
from .lattice import LatticePMF, ParamVector, berc, convolve, expectation, psi

__all__ = [
    "BoundReport",
    "DiscreteRV",
    "Link",
    "conc",
    "conc_bound_pipeline",
    "kanter_conc_bound",
    "p_from_quantiles",
    "quantile",
    "sum_rv",
    "symmetric_conc_bound",
    "tv_shift",
    "tv_smoothness_bound",
]

SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)


@dataclass(frozen=True)
class DiscreteRV:
    """A finitely supported real random variable.

    ``atoms`` is a tuple of ``(location, probability)`` pairs with strictly
    increasing locations and positive probabilities summing to one.
    """

    atoms: tuple

    def __post_init__(self):
        atoms = tuple((as_scalar(x), as_scalar(p)) for x, p in self.atoms)
        if not atoms:
            raise ValueError("a DiscreteRV needs at least one atom")
        probs = [p for _, p in atoms]
        mode = common_mode(probs)
        for (x0, _), (x1, _) in zip(atoms, atoms[1:]):
            if not x0 < x1:
                raise ValueError("atom locations must be strictly increasing")
        if any(p <= 0 for p in probs):
            raise ValueError("atom probabilities must be positive")
        total = sum(probs, Fraction(0)) if mode == "exact" else math.fsum(probs)
        if (mode == "exact" and total != 1) or abs(float(total) - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {total}, not 1")
        object.__setattr__(self, "atoms", atoms)

    @classmethod
    def from_pairs(cls, pairs: Iterable) -> "DiscreteRV":
        """Build from unsorted pairs, merging repeated locations and dropping null atoms."""
        merged: dict = {}
        for x, p in pairs:
            x, p = as_scalar(x), as_scalar(p)
            merged[x] = merged.get(x, 0) + p
        return cls(tuple((x, merged[x]) for x in sorted(merged) if merged[x] != 0))

    @classmethod
    def from_lattice(cls, P: LatticePMF) -> "DiscreteRV":
        return cls(tuple((Fraction(k), w) for k, w in P.items()))

    @property
    def locations(self) -> list:
        return [x for x, _ in self.atoms]

    @property
    def probs(self) -> list:
        return [p for _, p in self.atoms]

    def to_dict(self) -> dict:
        return {"atoms": [[format_scalar(x), format_scalar(p)] for x, p in self.atoms]}

    @classmethod
    def from_dict(cls, data: dict) -> "DiscreteRV":
        pairs = []
        for x, p in data["atoms"]:
            x = parse_scalar(x) if isinstance(x, str) else x
            p = parse_scalar(p) if isinstance(p, str) else p
            pairs.append((x, p))
        return cls.from_pairs(pairs)

    @classmethod
    def from_json(cls, text: str) -> "DiscreteRV":
        return cls.from_dict(json.loads(text))


def sum_rv(Xs: Sequence[DiscreteRV]) -> DiscreteRV:
    """Distribution of the sum of independent variables (pairwise convolution)."""
    acc = {Fraction(0): Fraction(1)}
    for X in Xs:
        nxt: dict = {}
        for a, pa in acc.items():
            for b, pb in X.atoms:
                nxt[a + b] = nxt.get(a + b, 0) + pa * pb
        acc = nxt
    return DiscreteRV.from_pairs(acc.items())


def _check_t(t) -> Scalar:
    t = as_scalar(t)
    if t < 0:
        raise ValueError(f"t={t} must be nonnegative")
    return t


def conc(X: DiscreteRV, t) -> Scalar:
    """sup_x P(X in [x, x + t]); some maximizing window starts at an atom."""
    t = _check_t(t)
    locs, probs = X.locations, X.probs
    best = None
    j, running = 0, 0 * probs[0]
    for i, x in enumerate(locs):
        while j < len(locs) and locs[j] <= x + t:
            running += probs[j]
            j += 1
        if best is None or running > best:
            best = running
        running -= probs[i]
    return best


def quantile(X: DiscreteRV, y) -> Scalar:
    """Left-continuous inverse of the distribution function at y in (0, 1)."""
    y = as_scalar(y)
    if not 0 < y < 1:
        raise ValueError(f"y={y} outside (0, 1)")
    cum = 0
    for x, p in X.atoms:
        cum += p
        if cum >= y:
            return x
    return X.atoms[-1][0]


def p_from_quantiles(X: DiscreteRV, t) -> Scalar:
    """2 * Lebesgue measure of {y in (0, 1/2): h(1 - y) - h(y) > t}.

    Both ``h(y)`` and ``h(1 - y)`` are constant between consecutive points
    of ``{F_i} | {1 - F_i}`` (``F_i`` the cumulative probabilities), so the
    measure is an exact finite sum.
    """
    t = _check_t(t)
    half = Fraction(1, 2) if isinstance(X.probs[0], Fraction) else 0.5
    cums, c = [], 0
    for p in X.probs[:-1]:
        c += p
        cums.append(c)
    cuts = {0 * half, half}
    for c in cums:
        for point in (c, 1 - c):
            if 0 < point < half:
                cuts.add(point)
    cuts = sorted(cuts)
    measure = 0 * half
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        mid = (lo + hi) / 2
        if quantile(X, 1 - mid) - quantile(X, mid) > t:
            measure += hi - lo
    return 2 * measure


@dataclass(frozen=True)
class Link:
    """One quantity of a bound chain.

    ``strict`` marks a quantity that is a strict upper bound for the
    concentration (or distance) being bounded.
    """

    label: str
    value: Scalar
    citation: str
    strict: bool = False

    @property
    def clamped(self) -> float:
        return min(float(self.value), 1.0)


@dataclass(frozen=True)
class BoundReport:
    """Outcome of a bound computation.

    ``chain`` lists the quantities in the order they are derived; ``best``
    is the smallest clamped value among the upper-bound links.
    """

    inputs_digest: str
    chain: tuple
    best: float
    extras: dict = field(default_factory=dict)

    def link(self, label: str) -> Link:
        for lk in self.chain:
            if lk.label == label:
                return lk
        raise KeyError(label)

    def to_dict(self) -> dict:
        return {
            "inputs": self.inputs_digest,
            "chain": [
                {
                    "label": lk.label,
                    "value": _fmt(lk.value),
                    "clamped": format_float(lk.clamped),
                    "citation": lk.citation,
                    "strict": lk.strict,
                }
                for lk in self.chain
            ],
            "best": format_float(self.best),
            "extras": {k: _fmt_any(v) for k, v in sorted(self.extras.items())},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["label", "value", "citation"])
        for lk in self.chain:
            w.writerow([lk.label, _fmt(lk.value), lk.citation])
        return buf.getvalue()


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    return format_float(v)


def _fmt_any(v):
    if isinstance(v, (list, tuple)):
        return [_fmt_any(x) for x in v]
    if isinstance(v, (Fraction, float)):
        return _fmt(v)
    return v


def _best(chain: Sequence[Link], skip: Iterable[str] = ()) -> float:
    skip = set(skip)
    return min(lk.clamped for lk in chain if lk.label not in skip)


def _closed_forms(lam: float, citation_suffix: str = "") -> list[Link]:
    return [
        Link("sharp-constant", SQRT_2_OVER_PI / math.sqrt(0.25 + lam), "sqrt(2/pi)(1/4+lam)^-1/2" + citation_suffix, True),
        Link("root", 1.0 / math.sqrt(1.0 + lam), "(1+lam)^-1/2" + citation_suffix, lam > 0),
    ]


def _check_ps(ps) -> ParamVector:
    return ParamVector.of(ps)


def kanter_conc_bound(ps) -> BoundReport:
    """Bound chain G(|p|), sharp-constant and root forms for given p_j."""
    p = _check_ps(ps)
    lam = float(p.total)
    g = bessel.g_value(lam).value
    chain = (Link("G(|p|)", g, "kanter G bound", lam > 0), *_closed_forms(lam))
    return BoundReport(f"p={_fmt_any(list(p.entries))}", chain, _best(chain), {"lambda": lam})


def symmetric_conc_bound(ps) -> BoundReport:
    """Symmetric-summand version: p_j = 1 - P(|X_j| < t), strict when some p_j > 0."""
    p = _check_ps(ps)
    lam = float(p.total)
    g = bessel.g_value(lam).value
    chain = (Link("G(|p|)", g, "kanter symmetric concentration bound", lam > 0), *_closed_forms(lam))
    return BoundReport(f"p={_fmt_any(list(p.entries))}", chain, _best(chain), {"lambda": lam})


def stpc01_exact(p) -> Scalar:
    """STPC_p({0, 1}) as the Bernoulli-convolution expectation of psi."""
    return expectation(berc(p), psi)


def conc_bound_pipeline(Xs: Sequence[DiscreteRV], t) -> BoundReport:
    """Full chain C(sum X, t) <= BerC_p psi = STPC_p({0,1}) <= G(|p|) <= G(sum(1 - C(X_j, t)))."""
    if not Xs:
        raise ValueError("need at least one random variable")
    t = _check_t(t)
    ps = [p_from_quantiles(X, t) for X in Xs]
    cs = [conc(X, t) for X in Xs]
    if any(isinstance(p, float) for p in ps):
        ps = [float(p) for p in ps]
    lam_p = float(sum(ps))
    lam_c = float(sum(1 - c for c in cs))
    mid = stpc01_exact(ps)
    chain = (
        Link("STPC_p({0,1})", mid, "Le Cam reduction; Bernoulli-convolution expectation of psi"),
        Link("G(|p|)", bessel.g_value(lam_p).value, "kanter G bound", lam_p > 0),
        Link("G(sum(1-C))", bessel.g_value(lam_c).value, "kanter G bound, G decreasing", lam_c > 0),
        Link("sharp-constant", SQRT_2_OVER_PI / math.sqrt(0.25 + lam_p), "sqrt(2/pi)(1/4+|p|)^-1/2", True),
        Link("root", 1.0 / math.sqrt(1.0 + lam_c), "(1+sum(1-C))^-1/2", lam_c > 0),
    )
    extras = {"p": ps, "conc": cs, "t": t, "sum_p": lam_p, "sum_1_minus_conc": lam_c}
    return BoundReport(f"n={len(Xs)} t={_fmt(t)}", chain, _best(chain), extras)


def tv_shift(X: LatticePMF):
    """d_TV(X, 1 + X) = (1/2) sum_k |P(k) - P(k - 1)|."""
    total = 0 * X.weights[0]
    for k in range(X.min, X.max + 2):
        total += abs(X[k] - X[k - 1])
    return total / 2


def tv_smoothness_bound(Xs: Sequence[LatticePMF]) -> BoundReport:
    """Shift-smoothness bound for a sum of independent integer variables.

    Reports the exact ``d_TV(S, 1 + S)``, the new bound
    ``sqrt(2/pi) (1/4 + sum(1 - d_j))^-1/2`` and the Barbour-Xia bound
    ``(sum(1 - max(1/2, d_j)))^-1/2``.
    """
    if not Xs:
        raise ValueError("need at least one random variable")
    ds = [tv_shift(X) for X in Xs]
    s_new = float(sum(1 - d for d in ds))
    s_old = float(sum(1 - max(Fraction(1, 2) if isinstance(d, Fraction) else 0.5, d) for d in ds))
    new = SQRT_2_OVER_PI / math.sqrt(0.25 + s_new)
    old = 1.0 / math.sqrt(s_old) if s_old > 0 else math.inf
    S = Xs[0]
    for X in Xs[1:]:
        S = convolve(S, X)
    exact = tv_shift(S)
    chain = (
        Link("d_TV(S,1+S)", exact, "exact convolution"),
        Link("new", new, "sqrt(2/pi)(1/4+sum(1-d_j))^-1/2", True),
        Link("barbour-xia", old, "(sum(1-max(1/2,d_j)))^-1/2"),
    )
    extras = {"d": ds, "new_le_old": new <= old, "exact_le_new": float(exact) <= new}
    return BoundReport(f"n={len(Xs)}", chain, _best(chain, skip=["d_TV(S,1+S)"]), extras)

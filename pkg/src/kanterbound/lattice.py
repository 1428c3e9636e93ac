"""Finitely supported distributions on the integers.

A :class:`LatticePMF` stores the mass at ``offset + i`` in ``weights[i]``.
Weights are either all ``Fraction`` (exact mode) or all ``float`` (float
mode); zero tails are always trimmed so that exact equality of two
distributions is plain structural equality.

The named families here are the Bernoulli, binomial and symmetric
three-point laws, their convolutions, Rademacher convolutions and the
(truncated) symmetrized Poisson law.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import bessel
from ._scalar import (
    EXACT,
    FLOAT,
    ModeError,
    Scalar,
    as_scalar,
    common_mode,
    format_scalar,
    mode_of,
    one,
    parse_scalar,
    zero,
)

__all__ = [
    "LatticePMF",
    "ParamVector",
    "argmax_intervals",
    "beta_of_alpha",
    "ber",
    "berc",
    "binom",
    "convolve",
    "delta",
    "expectation",
    "interval_prob",
    "max_interval_prob",
    "mixture",
    "poisson_truncated",
    "psi",
    "radc",
    "reflect",
    "stp",
    "stpc",
    "sympois_truncated",
    "tv_distance",
]

FLOAT_SUM_TOL = 1e-12


@dataclass(frozen=True)
class LatticePMF:
    """Probability mass function with finite support on Z.

    ``tail_mass`` is nonzero only for truncations of infinite-support laws;
    it records the mass that was dropped (never redistributed).
    """

    offset: int
    weights: tuple
    tail_mass: float = field(default=0.0, compare=True)

    def __post_init__(self):
        ws = tuple(as_scalar(w) for w in self.weights)
        if not ws:
            raise ValueError("a LatticePMF needs at least one weight")
        mode = common_mode(ws)
        if any(w < 0 for w in ws):
            raise ValueError("weights must be nonnegative")
        lo, hi = 0, len(ws)
        while lo < hi and ws[lo] == 0:
            lo += 1
        while hi > lo and ws[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            raise ValueError("weights are all zero")
        total = sum(ws[lo:hi], zero(mode))
        if mode == EXACT:
            if total != 1:
                raise ValueError(f"exact weights sum to {total}, not 1")
        elif abs(total + self.tail_mass - 1.0) > FLOAT_SUM_TOL:
            raise ValueError(f"float weights sum to {total!r}, not 1")
        object.__setattr__(self, "offset", int(self.offset) + lo)
        object.__setattr__(self, "weights", ws[lo:hi])

    @property
    def mode(self) -> str:
        return mode_of(self.weights[0])

    @property
    def min(self) -> int:
        return self.offset

    @property
    def max(self) -> int:
        return self.offset + len(self.weights) - 1

    @property
    def support(self) -> range:
        return range(self.min, self.max + 1)

    def __getitem__(self, k: int) -> Scalar:
        i = k - self.offset
        if 0 <= i < len(self.weights):
            return self.weights[i]
        return zero(self.mode)

    def items(self):
        """Yield ``(k, mass)`` for the points carrying positive mass."""
        for i, w in enumerate(self.weights):
            if w:
                yield self.offset + i, w

    def to_dict(self) -> dict:
        out = {
            "offset": self.offset,
            "weights": [format_scalar(w) for w in self.weights],
            "mode": self.mode,
        }
        if self.tail_mass:
            out["tail_mass"] = self.tail_mass
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "LatticePMF":
        mode = data.get("mode")
        weights = []
        for w in data["weights"]:
            if isinstance(w, str):
                w = parse_scalar(w)
            elif mode == FLOAT:
                w = float(w)
            weights.append(w)
        if mode == FLOAT:
            weights = [float(w) for w in weights]
        elif mode == EXACT and any(isinstance(w, float) for w in weights):
            raise ValueError("exact-mode weights must be rationals")
        return cls(int(data["offset"]), tuple(weights), float(data.get("tail_mass", 0.0)))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "LatticePMF":
        return cls.from_dict(json.loads(text))

    def as_float(self) -> "LatticePMF":
        if self.mode == FLOAT:
            return self
        return LatticePMF(self.offset, tuple(float(w) for w in self.weights))


def delta(k: int = 0, mode: str = EXACT) -> LatticePMF:
    return LatticePMF(k, (one(mode),))


@dataclass(frozen=True)
class ParamVector:
    """A parameter vector ``p`` in the union of the cubes [0, 1]^n."""

    entries: tuple = ()

    def __post_init__(self):
        es = tuple(as_scalar(e) for e in self.entries)
        common_mode(es)
        for e in es:
            if not 0 <= e <= 1:
                raise ValueError(f"parameter {e} outside [0, 1]")
        object.__setattr__(self, "entries", es)

    @classmethod
    def of(cls, p) -> "ParamVector":
        return p if isinstance(p, ParamVector) else cls(tuple(p))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def mode(self) -> str:
        return mode_of(self.entries[0]) if self.entries else EXACT

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def total(self) -> Scalar:
        if not self.entries:
            return Fraction(0)
        if self.mode == FLOAT:
            return math.fsum(self.entries)
        return sum(self.entries, Fraction(0))

    @property
    def mean(self) -> Scalar:
        if not self.entries:
            raise ValueError("mean of an empty parameter vector")
        return self.total / self.n

    @property
    def max(self) -> Scalar:
        return max(self.entries, default=Fraction(0))


def _unit_interval(alpha, name="alpha") -> Scalar:
    alpha = as_scalar(alpha)
    if not 0 <= alpha <= 1:
        raise ValueError(f"{name}={alpha} outside [0, 1]")
    return alpha


def ber(alpha) -> LatticePMF:
    a = _unit_interval(alpha)
    return LatticePMF(0, (1 - a, a))


def stp(alpha) -> LatticePMF:
    a = _unit_interval(alpha)
    return LatticePMF(-1, (a / 2, 1 - a, a / 2))


def _raw_convolve(a: Sequence, b: Sequence, mode: str) -> list:
    out = [zero(mode)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def convolve(P: LatticePMF, Q: LatticePMF) -> LatticePMF:
    if P.mode != Q.mode:
        raise ModeError("cannot convolve exact with float distributions")
    ws = _raw_convolve(P.weights, Q.weights, P.mode)
    tail = 0.0
    if P.mode == FLOAT and (P.tail_mass or Q.tail_mass):
        tail = 1.0 - (1.0 - P.tail_mass) * (1.0 - Q.tail_mass)
    return LatticePMF(P.offset + Q.offset, tuple(ws), tail)


def _fold(factors: Iterable[LatticePMF], mode: str) -> LatticePMF:
    acc = delta(0, mode)
    for f in factors:
        acc = convolve(acc, f)
    return acc


def _int_convolve(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _exact_fold(p: ParamVector, factor) -> tuple[list, int]:
    """Integer weights and denominator of a product of scaled factors.

    ``factor(a, D)`` returns the integer weights of one factor scaled by
    its denominator, given the numerator ``a`` of ``p_j = a / D``.
    """
    D = math.lcm(*(e.denominator for e in p.entries)) if p.n else 1
    acc, den = [1], 1
    for e in p.entries:
        ws, d = factor(e.numerator * (D // e.denominator), D)
        acc = _int_convolve(acc, ws)
        den *= d
    return acc, den


def berc(p) -> LatticePMF:
    """Bernoulli convolution (Poisson binomial law) of ``p``."""
    p = ParamVector.of(p)
    if p.mode == FLOAT:
        return _fold((ber(a) for a in p), FLOAT)
    ws, den = _exact_fold(p, lambda a, D: ([D - a, a], D))
    return LatticePMF(0, tuple(Fraction(w, den) for w in ws))


def stpc(p) -> LatticePMF:
    """Convolution of symmetric three-point laws with parameters ``p``."""
    p = ParamVector.of(p)
    if p.mode == FLOAT:
        return _fold((stp(a) for a in p), FLOAT)
    ws, den = _exact_fold(p, lambda a, D: ([a, 2 * (D - a), a], 2 * D))
    return LatticePMF(-p.n, tuple(Fraction(w, den) for w in ws))


def radc(n: int, mode: str = EXACT) -> LatticePMF:
    """Sum of ``n`` independent uniform signs: mass C(n,j)/2^n at 2j - n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    ws = []
    for j in range(n + 1):
        ws.append(Fraction(math.comb(n, j), 2**n))
        if j < n:
            ws.append(Fraction(0))
    if mode == FLOAT:
        ws = [float(w) for w in ws]
    return LatticePMF(-n, tuple(ws))


def binom(n: int, alpha) -> LatticePMF:
    if n < 0:
        raise ValueError("n must be nonnegative")
    a = _unit_interval(alpha)
    if mode_of(a) == EXACT:
        ws = [math.comb(n, j) * a**j * (1 - a) ** (n - j) for j in range(n + 1)]
    else:
        ws = [math.comb(n, j) * a**j * (1.0 - a) ** (n - j) for j in range(n + 1)]
    return LatticePMF(0, tuple(ws))


def poisson_truncated(lam: float, tail_tol: float = 1e-15) -> LatticePMF:
    """Poisson(lam) masses on {0..K}, K minimal with dropped mass < tail_tol."""
    lam = float(lam)
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    if lam == 0:
        return delta(0, FLOAT)
    # generous upper cut, then trim from the far end so the tail is summed small-to-large
    kmax = int(lam + 40.0 * math.sqrt(lam) + 60)
    logs = [k * math.log(lam) - lam - math.lgamma(k + 1) for k in range(kmax + 1)]
    ws = [math.exp(v) for v in logs]
    tail = 0.0
    k = kmax
    while k > 0 and tail + ws[k] < tail_tol:
        tail += ws[k]
        k -= 1
    return LatticePMF(0, tuple(ws[: k + 1]), tail)


def sympois_truncated(lam, tail_tol: float = 1e-15) -> LatticePMF:
    """Symmetrized Poisson law truncated to |k| <= K.

    K is the smallest cut leaving omitted mass below ``tail_tol``. The
    omitted mass is stored in ``tail_mass``; the kept weights are not
    renormalized.
    """
    lam = float(lam)
    if math.isnan(lam) or lam < 0:
        raise ValueError("lambda must be nonnegative")
    if tail_tol <= 0:
        raise ValueError("tail_tol must be positive")
    if lam == 0:
        return delta(0, FLOAT)
    kmax = int(lam + 40.0 * math.sqrt(lam) + 60)
    ws = [bessel.scaled_bessel_i(k, lam) for k in range(kmax + 1)]
    tail = 0.0
    k = kmax
    while k > 0 and tail + 2.0 * ws[k] < tail_tol:
        tail += 2.0 * ws[k]
        k -= 1
    half = ws[: k + 1]
    full = tuple(reversed(half[1:])) + tuple(half)
    return LatticePMF(-k, full, tail)


def reflect(P: LatticePMF) -> LatticePMF:
    return LatticePMF(-P.max, tuple(reversed(P.weights)), P.tail_mass)


def mixture(weights: Sequence[Scalar], components: Sequence[LatticePMF]) -> LatticePMF:
    """The distribution ``sum_i weights[i] * components[i]``."""
    if len(weights) != len(components) or not components:
        raise ValueError("need matching, nonempty weights and components")
    mode = common_mode([*weights, *(c.weights[0] for c in components)])
    lo = min(c.min for c in components)
    hi = max(c.max for c in components)
    acc = [zero(mode)] * (hi - lo + 1)
    tail = 0.0
    for w, c in zip(weights, components):
        if not w:
            continue
        for k, m in c.items():
            acc[k - lo] += w * m
        tail += float(w) * c.tail_mass
    if mode == FLOAT:
        tail += 1.0 - math.fsum(weights)
    return LatticePMF(lo, tuple(acc), tail if mode == FLOAT else 0.0)


def interval_prob(P: LatticePMF, k: int, ell: int) -> Scalar:
    """Mass of the ell-point interval {k, ..., k + ell - 1}."""
    if ell < 1:
        raise ValueError("ell must be at least 1")
    lo = max(k, P.min)
    hi = min(k + ell - 1, P.max)
    total = zero(P.mode)
    for j in range(lo, hi + 1):
        total += P[j]
    return total


def _window_sums(P: LatticePMF, ell: int) -> list[tuple[int, Scalar]]:
    # every k whose window meets the support
    return [(k, interval_prob(P, k, ell)) for k in range(P.min - ell + 1, P.max + 1)]


def max_interval_prob(P: LatticePMF, ell: int) -> tuple[int, Scalar]:
    """Largest ell-point interval mass; smallest maximizing k on ties."""
    if ell < 1:
        raise ValueError("ell must be at least 1")
    best_k, best = None, None
    for k, v in _window_sums(P, ell):
        if best is None or v > best:
            best_k, best = k, v
    return best_k, best


def argmax_intervals(P: LatticePMF, ell: int) -> list[int]:
    """All k attaining the maximal ell-point interval mass."""
    sums = _window_sums(P, ell)
    top = max(v for _, v in sums)
    return [k for k, v in sums if v == top]


def tv_distance(P: LatticePMF, Q: LatticePMF) -> Scalar:
    if P.mode != Q.mode:
        raise ModeError("cannot compare exact with float distributions")
    lo, hi = min(P.min, Q.min), max(P.max, Q.max)
    diffs = [abs(P[k] - Q[k]) for k in range(lo, hi + 1)]
    if P.mode == FLOAT:
        # dropped tails are unknown mass; they can only widen the distance
        return 0.5 * (math.fsum(diffs) + abs(P.tail_mass - Q.tail_mass))
    return sum(diffs, Fraction(0)) / 2


def expectation(P: LatticePMF, phi: Callable[[int], Scalar]) -> Scalar:
    total = zero(P.mode)
    for k, w in P.items():
        total += w * phi(k)
    return total


def psi(m: int) -> Fraction:
    """Mass that the m-fold Rademacher convolution puts on {0, 1}."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    h = (m + 1) // 2
    return Fraction(math.comb(2 * h, h), 4**h)


def beta_of_alpha(alpha) -> float:
    """Bernoulli parameter b with Ber_b * reflect(Ber_b) equal to stp(alpha)."""
    a = float(as_scalar(alpha))
    if not 0 <= a <= 0.5:
        raise ValueError(f"alpha={a} outside [0, 1/2]")
    return (1.0 - math.sqrt(1.0 - 2.0 * a)) / 2.0

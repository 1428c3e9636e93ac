"""Adaptive 15-point Gauss-Legendre quadrature.

Each panel is integrated once whole and once as two halves; the absolute
difference is the panel's error estimate and the halves' sum its value.
The panel with the largest estimate is bisected until the summed estimate
drops below ``tol``. Points listed in ``singular`` get a ``x = a + u**2``
change of variables on the adjacent panels, which removes square-root
type endpoint behaviour.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

NODES, WEIGHTS = np.polynomial.legendre.leggauss(15)
MAX_PANELS = 10_000


class QuadratureError(RuntimeError):
    """The panel budget was exhausted before reaching the tolerance."""


@dataclass(frozen=True)
class QuadResult:
    value: float
    est_abs_error: float
    subdivisions: int


def _gl(f, a: float, b: float) -> float:
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    return half * float(np.dot(WEIGHTS, f(mid + half * NODES)))


def _substituted(f, a: float, b: float, side: str):
    """Integrand and u-interval after moving a sqrt-singularity at one end."""
    width = b - a
    if side == "left":
        return (lambda u: 2.0 * u * f(a + u * u)), 0.0, math.sqrt(width)
    return (lambda u: 2.0 * u * f(b - u * u)), 0.0, math.sqrt(width)


def integrate(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    tol: float = 1e-12,
    breakpoints: Iterable[float] = (),
    singular: Iterable[float] = (),
    max_panels: int = MAX_PANELS,
) -> QuadResult:
    """Integrate the vectorized ``f`` over ``[a, b]`` to absolute ``tol``."""
    if not b > a:
        if b == a:
            return QuadResult(0.0, 0.0, 1)
        raise ValueError("integration bounds must satisfy a < b")
    if tol <= 0:
        raise ValueError("tol must be positive")
    sing = sorted(set(float(s) for s in singular))
    cuts = sorted({a, b, *(float(c) for c in breakpoints if a < c < b), *(s for s in sing if a < s < b)})

    def is_sing(x):
        return any(abs(x - s) <= 1e-15 * max(1.0, abs(s)) for s in sing)

    # each piece: (integrand on u, u0, u1); both-ends-singular panels are split
    pieces = []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        sl, sh = is_sing(lo), is_sing(hi)
        if sl and sh:
            mid = 0.5 * (lo + hi)
            pieces.append(_substituted(f, lo, mid, "left"))
            pieces.append(_substituted(f, mid, hi, "right"))
        elif sl:
            pieces.append(_substituted(f, lo, hi, "left"))
        elif sh:
            pieces.append(_substituted(f, lo, hi, "right"))
        else:
            pieces.append((f, lo, hi))

    # heap entries: (-err, counter, piece, lo, hi, value); counter breaks ties
    heap = []
    counter = 0

    def push(piece, lo, hi):
        nonlocal counter
        g = pieces[piece][0]
        whole = _gl(g, lo, hi)
        mid = 0.5 * (lo + hi)
        halves = _gl(g, lo, mid) + _gl(g, mid, hi)
        err = abs(whole - halves)
        heapq.heappush(heap, (-err, counter, piece, lo, hi, halves))
        counter += 1
        return err

    total_err = 0.0
    for i, (_, lo, hi) in enumerate(pieces):
        total_err += push(i, lo, hi)

    while total_err > tol:
        if len(heap) >= max_panels:
            raise QuadratureError(
                f"no convergence within {max_panels} panels (estimated error {total_err:.3g})"
            )
        neg_err, _, piece, lo, hi, _ = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            raise QuadratureError("panel width reached floating-point resolution")
        total_err += neg_err
        total_err += push(piece, lo, mid)
        total_err += push(piece, mid, hi)
        if counter % 256 == 0:
            total_err = math.fsum(-e[0] for e in heap)

    panels = sorted(heap, key=lambda e: (e[2], e[3]))
    value = math.fsum(e[5] for e in panels)
    err = math.fsum(-e[0] for e in panels)
    return QuadResult(value, err, len(panels))

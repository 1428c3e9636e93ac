"""Sharp Bessel-function concentration bounds for sums of independent lattice variables.

The central object is ``G(lam) = exp(-lam) (I_0(lam) + I_1(lam))``, the best
constant in ``P(S in {k, k+1}) <= G(|p|)`` for a sum ``S`` of independent
symmetric three-point variables with parameters ``p``.
"""

from ._gauss import QuadResult, QuadratureError, integrate
from ._scalar import ModeError
from .bessel import (
    GEvaluation,
    g_asymptotic_large,
    g_bound_h,
    g_bound_quarter,
    g_bound_sqrt,
    g_taylor_small,
    g_value,
    scaled_bessel_i,
    sympois_pmf,
)
from .bounds import (
    BoundReport,
    DiscreteRV,
    Link,
    conc,
    conc_bound_pipeline,
    kanter_conc_bound,
    p_from_quantiles,
    quantile,
    sum_rv,
    symmetric_conc_bound,
    tv_shift,
    tv_smoothness_bound,
)
from .lattice import (
    LatticePMF,
    ParamVector,
    argmax_intervals,
    ber,
    berc,
    beta_of_alpha,
    binom,
    convolve,
    delta,
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
from .quadrature import (
    LaplaceDensities,
    extremal_integrand,
    f_lambda_alpha,
    g_fourier,
    laplace_transform,
    stpc01_fourier,
)
from .verify import VerifyOutcome, extremal_candidates, extremal_max, verify_kanter

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "DiscreteRV",
    "GEvaluation",
    "LaplaceDensities",
    "LatticePMF",
    "Link",
    "ModeError",
    "ParamVector",
    "QuadResult",
    "QuadratureError",
    "VerifyOutcome",
    "argmax_intervals",
    "ber",
    "berc",
    "beta_of_alpha",
    "binom",
    "conc",
    "conc_bound_pipeline",
    "convolve",
    "delta",
    "expectation",
    "extremal_candidates",
    "extremal_integrand",
    "extremal_max",
    "f_lambda_alpha",
    "g_asymptotic_large",
    "g_bound_h",
    "g_bound_quarter",
    "g_bound_sqrt",
    "g_fourier",
    "g_taylor_small",
    "g_value",
    "integrate",
    "interval_prob",
    "kanter_conc_bound",
    "laplace_transform",
    "max_interval_prob",
    "mixture",
    "p_from_quantiles",
    "poisson_truncated",
    "psi",
    "quantile",
    "radc",
    "reflect",
    "scaled_bessel_i",
    "stp",
    "stpc",
    "stpc01_fourier",
    "sum_rv",
    "symmetric_conc_bound",
    "sympois_pmf",
    "sympois_truncated",
    "tv_distance",
    "tv_shift",
    "tv_smoothness_bound",
    "verify_kanter",
]

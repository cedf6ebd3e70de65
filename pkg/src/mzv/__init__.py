"""Multiple zeta / t-value toolkit.

Exact closed forms of the Hoffman-element families H(a,b) and T(a,b),
arbitrary-precision constants with ball arithmetic, independent quadrature
and accelerated-series evaluation routes, and a harness that cross-checks
every identity between them.
"""

__version__ = "0.1.0"

from .exact_core import (
    BigRational,
    DivisibilityReport,
    RationalPolynomial,
    ZetaCombination,
    ZetaMonomial,
    binomial,
    divisibility_experiment,
    hat_H,
    hat_K,
    hat_T,
    hoffman_closed,
    poly_cot_closed_form,
    t_coefficient,
    zagier_coefficient,
)
from .numerics import (
    PrecisionConfig,
    RealBall,
    beta_even,
    clausen,
    const_log2,
    const_pi,
    eval_combination,
    render_ball,
    zeta_int,
)
from .quadrature import (
    IntegrandSpec,
    QuadratureError,
    QuadratureRule,
    arccos_moment,
    cot_moment_integral,
    cot_power_integral,
    gauss_legendre_rule,
    integrate,
)
from .series_mzv import (
    Composition,
    MhnTable,
    TruncationPlan,
    arcsin_even_coeff,
    arcsin_odd_coeff,
    mzv_extrapolated,
    mzv_truncated,
    prefix_mhn,
    single_sum_H,
    single_sum_T,
)
from .harness import CheckResult, SuiteConfig, VerificationReport, run_suite

__all__ = [
    "BigRational",
    "CheckResult",
    "Composition",
    "DivisibilityReport",
    "IntegrandSpec",
    "MhnTable",
    "PrecisionConfig",
    "QuadratureError",
    "QuadratureRule",
    "RationalPolynomial",
    "RealBall",
    "SuiteConfig",
    "TruncationPlan",
    "VerificationReport",
    "ZetaCombination",
    "ZetaMonomial",
    "arccos_moment",
    "arcsin_even_coeff",
    "arcsin_odd_coeff",
    "beta_even",
    "binomial",
    "clausen",
    "const_log2",
    "const_pi",
    "cot_moment_integral",
    "cot_power_integral",
    "divisibility_experiment",
    "eval_combination",
    "gauss_legendre_rule",
    "hat_H",
    "hat_K",
    "hat_T",
    "hoffman_closed",
    "integrate",
    "mzv_extrapolated",
    "mzv_truncated",
    "poly_cot_closed_form",
    "prefix_mhn",
    "render_ball",
    "run_suite",
    "single_sum_H",
    "single_sum_T",
    "t_coefficient",
    "zagier_coefficient",
    "zeta_int",
]

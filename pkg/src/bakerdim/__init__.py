"""Numerical toolkit for skew Baker-type transformations of the square.

The map contracts horizontally at rate beta1 on the upper half and beta2 on
the lower half while doubling vertically. The package codes its dynamics
symbolically, samples invariant measures reproducibly, and estimates and
bounds fractal dimensions, including the bifurcation of the attainable
dimension supremum at beta1 * beta2 = 1/4.
"""

from .params import Params
from .dynamics import (
    Point2,
    PointSet,
    Regime,
    apply_map,
    apply_map_batch,
    attractor_sample,
    conjugacy_defect,
    iterate,
    regime,
)
from .symbolic import (
    DEFAULT_TRUNCATION,
    BiWord,
    SymbolWord,
    ValueWithTail,
    code_point,
    code_x,
    coding_series,
    cylinder_diameter,
    dyadic_value,
    word_metric,
)
from .measures import (
    BernoulliSpec,
    DensityReport,
    contraction_rate,
    density_report,
    entropy,
    product_sample,
    pushforward_sample,
)
from .dimension import (
    BoundProfile,
    DimensionFit,
    MoranResult,
    RegimeError,
    bound_horizontal,
    bound_vertical,
    box_count,
    correlation_dimension,
    fit_box_dimension,
    moran_exponent,
    sup_bernoulli_bound,
    theoretical_attractor_dim,
)
from .verify import SuiteReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "BernoulliSpec",
    "BiWord",
    "BoundProfile",
    "DEFAULT_TRUNCATION",
    "DensityReport",
    "DimensionFit",
    "MoranResult",
    "Params",
    "Point2",
    "PointSet",
    "Regime",
    "RegimeError",
    "SuiteReport",
    "SymbolWord",
    "ValueWithTail",
    "apply_map",
    "apply_map_batch",
    "attractor_sample",
    "bound_horizontal",
    "bound_vertical",
    "box_count",
    "code_point",
    "code_x",
    "coding_series",
    "conjugacy_defect",
    "contraction_rate",
    "correlation_dimension",
    "cylinder_diameter",
    "density_report",
    "dyadic_value",
    "entropy",
    "fit_box_dimension",
    "iterate",
    "moran_exponent",
    "product_sample",
    "pushforward_sample",
    "regime",
    "run_suite",
    "sup_bernoulli_bound",
    "theoretical_attractor_dim",
    "word_metric",
    "__version__",
]

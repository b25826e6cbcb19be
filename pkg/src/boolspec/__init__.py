"""Exact Fourier analysis of Boolean functions on F_2^n."""
from .core import (
    BooleanFunction,
    BoolSpecError,
    InternalCheckError,
    PointSet,
    Spectrum,
    counting_convolution,
    from_points,
    inverse_wht,
    spectral_support,
    support,
    wht,
)
from .stats import (
    energy_naive,
    energy_representation,
    energy_spectral,
    influence_counts,
    total_influence_spectral,
)
from .uncertainty import (
    classical_check,
    corollary_report,
    optimal_radius,
    theorem_check,
    truncation_bound,
    weight_sum,
)

__version__ = "0.1.0"

# GEV distribution family
from .core import (
    XI_GUMBEL_THRESHOLD,
    GevParams,
    MissingnessFraction,
    adjust_params,
    gev_cdf,
    gev_logpdf,
    gev_pdf,
    gev_quantile,
    reduced_variate,
    return_level,
    return_level_gradient,
)

__all__ = [
    "XI_GUMBEL_THRESHOLD",
    "GevParams",
    "MissingnessFraction",
    "adjust_params",
    "gev_cdf",
    "gev_logpdf",
    "gev_pdf",
    "gev_quantile",
    "reduced_variate",
    "return_level",
    "return_level_gradient",
]

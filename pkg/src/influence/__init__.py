# Influence Package
from .curves import (
    InfluenceCurve,
    default_grid,
    expected_information,
    gev_scores,
    influence_curves,
    influence_params,
    influence_return_level,
    normal_to_gev,
)

__all__ = [
    "InfluenceCurve",
    "default_grid",
    "expected_information",
    "gev_scores",
    "influence_curves",
    "influence_params",
    "influence_return_level",
    "normal_to_gev",
]

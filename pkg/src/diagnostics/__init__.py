# Diagnostics Package
from .order_stats import beta_quantile, order_statistic_bands, plotting_positions
from .plots import (
    RETURN_PERIOD_TICKS,
    AdjustedMaxima,
    DensityPlotData,
    PpPlotData,
    QqPlotData,
    ReturnLevelPlotData,
    adjusted_block_maxima,
    density_plot_data,
    model_probabilities,
    pp_plot_data,
    qq_plot_data,
    return_level_plot_data,
    return_period_axis,
)
from .bundle import DiagnosticsBundle, build_diagnostics

__all__ = [
    "RETURN_PERIOD_TICKS",
    "AdjustedMaxima",
    "DensityPlotData",
    "DiagnosticsBundle",
    "PpPlotData",
    "QqPlotData",
    "ReturnLevelPlotData",
    "adjusted_block_maxima",
    "beta_quantile",
    "build_diagnostics",
    "density_plot_data",
    "model_probabilities",
    "order_statistic_bands",
    "plotting_positions",
    "pp_plot_data",
    "qq_plot_data",
    "return_level_plot_data",
    "return_period_axis",
]

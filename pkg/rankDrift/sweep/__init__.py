from .parameter_sweep import (
    SWEEP_PARAMETERS,
    ensemble_rbo,
    sweep_parameter,
    sweep_fixed_ratio,
    turnover_by_ratio,
)

__all__ = [
    "SWEEP_PARAMETERS",
    "ensemble_rbo",
    "sweep_parameter",
    "sweep_fixed_ratio",
    "turnover_by_ratio",
]

"""
Per-replicate, per-estimator outcome of the simulation study.
"""

import math
from dataclasses import asdict, dataclass
from typing import Optional

REPLICATE_COLUMNS = (
    "replicate",
    "estimator",
    "converged",
    "n_blocks_used",
    "mu",
    "sigma",
    "xi",
    "mu_diff",
    "sigma_diff",
    "xi_diff",
    "rl",
    "rl_error",
    "covered",
    "failure_reason",
)


@dataclass(frozen=True)
class ReplicateRecord:
    """
    Differences are against the full-data fit of the same replicate; NaN
    when either fit failed. `covered` is None when no interval was checked.
    """
    replicate: int
    estimator: str
    converged: bool
    n_blocks_used: int
    mu: float = math.nan
    sigma: float = math.nan
    xi: float = math.nan
    mu_diff: float = math.nan
    sigma_diff: float = math.nan
    xi_diff: float = math.nan
    rl: float = math.nan
    rl_error: float = math.nan
    covered: Optional[bool] = None
    failure_reason: str = ""

    def to_row(self) -> dict:
        row = asdict(self)
        return {name: row[name] for name in REPLICATE_COLUMNS}


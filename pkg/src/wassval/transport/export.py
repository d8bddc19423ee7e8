"""
WassVal - Transport export
CSV writers for transport plans (`i,j,mass`) and distance series (`t,w2`)
"""

from pathlib import Path
from typing import Sequence, Union

import pandas as pd

from .plan import TransportPlan


def plan_frame(plan: TransportPlan) -> pd.DataFrame:
    i, j, mass = plan.triplets()
    return pd.DataFrame({"i": i, "j": j, "mass": mass})


def write_plan_csv(plan: TransportPlan, path: Union[str, Path]) -> Path:
    """Write the positive couplings of a plan as a sparse triplet CSV."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    plan_frame(plan).to_csv(path, index=False)
    return path


def write_series_csv(
    times: Sequence[float],
    values: Sequence[float],
    path: Union[str, Path],
    value_column: str = "w2",
) -> Path:
    """Write a distance time series as `t,<value_column>`."""
    if len(times) != len(values):
        raise ValueError(f"{len(times)} times for {len(values)} values")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    pd.DataFrame({"t": list(times), value_column: list(values)}).to_csv(path, index=False)
    return path

from typing import Sequence

import numpy as np


def mean_std(values: Sequence[float]) -> tuple[float, float]:
    """Arithmetic mean and sample (n - 1) standard deviation; std is 0 for one value."""
    if len(values) == 0:
        raise ValueError("mean_std needs at least one value")
    data = np.asarray(values, dtype=float)
    mean = float(np.mean(data))
    if len(data) == 1:
        return mean, 0.0
    return mean, float(np.std(data, ddof=1))

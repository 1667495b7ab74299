"""Common result container for caption metrics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class MetricScore:
    """A metric value plus named sub-components (per-n precisions, penalties, ...)."""

    value: float
    components: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError(f"metric value must be finite, got {self.value!r}")

"""Range-based RF link model.

Field behaviour of the real radio pair is reduced to three bands: full
strength out to ~900 m, a degraded band with probabilistic frame loss, and
a dead link past ~1050 m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum


class LinkQuality(Enum):
    FULL = "full"
    DEGRADED = "degraded"
    DEAD = "dead"


@dataclass(frozen=True)
class LinkBudget:
    full_strength_range_m: float = 900.0
    dropout_range_m: float = 1050.0
    degraded_loss_rate: float = 0.5

    def __post_init__(self):
        if not 0.0 < self.full_strength_range_m <= self.dropout_range_m:
            raise ValueError(
                f"need 0 < full strength range <= dropout range, got "
                f"{self.full_strength_range_m!r}, {self.dropout_range_m!r}"
            )
        if not 0.0 <= self.degraded_loss_rate <= 1.0:
            raise ValueError(f"loss rate {self.degraded_loss_rate!r} outside [0, 1]")


def link_quality(distance_m: float, budget: LinkBudget = LinkBudget()) -> LinkQuality:
    """Band the link falls in at a given separation. Monotone in distance."""
    if not math.isfinite(distance_m) or distance_m < 0:
        raise ValueError(f"distance must be finite and non-negative, got {distance_m!r}")
    if distance_m < budget.full_strength_range_m:
        return LinkQuality.FULL
    if distance_m <= budget.dropout_range_m:
        return LinkQuality.DEGRADED
    return LinkQuality.DEAD

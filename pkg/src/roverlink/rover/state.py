"""Actuator and power state types, with the hard safety invariants baked in.

Wheel order everywhere: (front-left, mid-left, rear-left, front-right,
mid-right, rear-right).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..telemetry import SectionId

WHEEL_COUNT = 6
ARM_JOINT_COUNT = 6
MAX_STEER_DEG = 35.0
MAX_ARM_PAYLOAD_KG = 5.0

_ZEROS = (0.0,) * WHEEL_COUNT


def clamp(value: float, lo: float, hi: float) -> float:
    if not math.isfinite(value):
        raise ValueError(f"cannot clamp non-finite value {value!r}")
    return max(lo, min(hi, value))


@dataclass(frozen=True)
class DriveState:
    """What the wheels are actually commanded to do.

    Invariants enforced on construction: throttles in [-1, 1], steering
    within +/-35 degrees, and an e-stopped state always has zero throttle.
    """

    wheel_throttle: tuple[float, ...] = _ZEROS
    steer_deg: float = 0.0
    estopped: bool = False

    def __post_init__(self):
        throttles = tuple(float(t) for t in self.wheel_throttle)
        if len(throttles) != WHEEL_COUNT:
            raise ValueError(f"need {WHEEL_COUNT} wheel throttles, got {len(throttles)}")
        for t in throttles:
            if not math.isfinite(t) or not -1.0 <= t <= 1.0:
                raise ValueError(f"wheel throttle {t!r} outside [-1, 1]")
        if not math.isfinite(self.steer_deg) or abs(self.steer_deg) > MAX_STEER_DEG:
            raise ValueError(f"steer {self.steer_deg!r} exceeds +/-{MAX_STEER_DEG}")
        if self.estopped and any(t != 0.0 for t in throttles):
            raise ValueError("e-stopped drive state must have zero throttle")
        object.__setattr__(self, "wheel_throttle", throttles)
        object.__setattr__(self, "steer_deg", float(self.steer_deg))

    @classmethod
    def stopped(cls, estopped: bool = False) -> "DriveState":
        return cls(_ZEROS, 0.0, estopped)

    @classmethod
    def straight(cls, throttle: float, steer_deg: float = 0.0) -> "DriveState":
        t = clamp(throttle, -1.0, 1.0)
        return cls((t,) * WHEEL_COUNT, clamp(steer_deg, -MAX_STEER_DEG, MAX_STEER_DEG))

    @property
    def mean_throttle(self) -> float:
        return sum(self.wheel_throttle) / WHEEL_COUNT

    @property
    def moving(self) -> bool:
        return any(t != 0.0 for t in self.wheel_throttle)


@dataclass(frozen=True)
class ArmState:
    """Joint rates plus the simulated payload overload flag."""

    joint_rate: tuple[float, ...] = (0.0,) * ARM_JOINT_COUNT
    payload_kg: float = 0.0

    def __post_init__(self):
        rates = tuple(float(r) for r in self.joint_rate)
        if len(rates) != ARM_JOINT_COUNT:
            raise ValueError(f"need {ARM_JOINT_COUNT} joint rates, got {len(rates)}")
        for r in rates:
            if not math.isfinite(r) or not -1.0 <= r <= 1.0:
                raise ValueError(f"joint rate {r!r} outside [-1, 1]")
        if not math.isfinite(self.payload_kg) or self.payload_kg < 0:
            raise ValueError(f"payload {self.payload_kg!r} must be non-negative")
        object.__setattr__(self, "joint_rate", rates)

    @property
    def overload(self) -> bool:
        return self.payload_kg > MAX_ARM_PAYLOAD_KG

    @property
    def moving(self) -> bool:
        return any(r != 0.0 for r in self.joint_rate)


@dataclass(frozen=True)
class BatteryPack:
    capacity_mah: float
    nominal_v: float
    charge_fraction: float = 1.0

    def __post_init__(self):
        if self.capacity_mah <= 0 or self.nominal_v <= 0:
            raise ValueError("pack capacity and voltage must be positive")
        if not 0.0 <= self.charge_fraction <= 1.0:
            raise ValueError(f"charge fraction {self.charge_fraction!r} outside [0, 1]")


@dataclass(frozen=True)
class PowerSection:
    """One of the three power buses: packs either in series or in parallel."""

    id: SectionId
    packs: tuple[BatteryPack, ...]
    series: bool = False
    taps_v: tuple[float, ...] = field(default_factory=tuple)

    def __post_init__(self):
        packs = tuple(self.packs)
        if not packs:
            raise ValueError("a power section needs at least one pack")
        object.__setattr__(self, "packs", packs)
        object.__setattr__(self, "taps_v", tuple(self.taps_v))

    @property
    def bus_v(self) -> float:
        if self.series:
            return sum(p.nominal_v for p in self.packs)
        return self.packs[0].nominal_v

    @property
    def charge_fraction(self) -> float:
        return min(p.charge_fraction for p in self.packs)

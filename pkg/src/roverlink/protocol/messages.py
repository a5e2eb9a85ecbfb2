"""The base-station <-> rover message set.

Every message is a frozen dataclass; the wire form is a JSON object with a
``"type"`` discriminator and lowerCamelCase keys. Control messages (anything
an operator sends that changes rover state) carry a per-session sequence
number assigned at the single send point of the control session.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Union

from ..geodesy import GeoPoint
from ..telemetry import TelemetrySnapshot, snapshot_to_wire
from .wire import from_wire, to_wire


class ArmJointName(Enum):
    BASE = "base"
    SHOULDER = "shoulder"
    ELBOW = "elbow"
    WRIST = "wrist"
    GRIP_ROTATE = "gripRotate"
    GRIP_CLOSE = "gripClose"


class ScienceAction(Enum):
    DRILL = "drill"
    READ_SENSORS = "readSensors"
    RUN_BIOMASS = "runBiomass"
    RUN_CAPILLARY = "runCapillary"


def _check_unit(name: str, value: float):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ValueError(f"{name} must be a finite number, got {value!r}")
    if not -1.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [-1, 1], got {value!r}")


@dataclass(frozen=True)
class Drive:
    """Manual drive request. Steering is a request; the 35-degree clamp is
    enforced onboard, not here."""

    throttle: float
    steer_deg: float
    seq: int = 0

    def __post_init__(self):
        _check_unit("throttle", self.throttle)
        if not math.isfinite(self.steer_deg):
            raise ValueError(f"steer_deg must be finite, got {self.steer_deg!r}")


@dataclass(frozen=True)
class ArmJoint:
    joint: ArmJointName
    rate: float
    seq: int = 0

    def __post_init__(self):
        _check_unit("rate", self.rate)


@dataclass(frozen=True)
class EStop:
    seq: int = 0


@dataclass(frozen=True)
class ClearEStop:
    seq: int = 0


@dataclass(frozen=True)
class SetWaypoints:
    points: tuple[GeoPoint, ...]
    seq: int = 0

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))


@dataclass(frozen=True)
class StartAutonomy:
    seq: int = 0


@dataclass(frozen=True)
class AbortAutonomy:
    seq: int = 0


@dataclass(frozen=True)
class ScienceCommand:
    action: ScienceAction
    seq: int = 0


@dataclass(frozen=True)
class Ack:
    seq: int
    accepted: bool


@dataclass(frozen=True)
class Telemetry:
    snapshot: TelemetrySnapshot


@dataclass(frozen=True)
class Heartbeat:
    seq: int


Message = Union[
    Drive,
    ArmJoint,
    EStop,
    ClearEStop,
    SetWaypoints,
    StartAutonomy,
    AbortAutonomy,
    ScienceCommand,
    Ack,
    Telemetry,
    Heartbeat,
]

WIRE_TYPES: dict[str, type] = {
    "drive": Drive,
    "armJoint": ArmJoint,
    "estop": EStop,
    "clearEstop": ClearEStop,
    "setWaypoints": SetWaypoints,
    "startAutonomy": StartAutonomy,
    "abortAutonomy": AbortAutonomy,
    "scienceCommand": ScienceCommand,
    "ack": Ack,
    "telemetry": Telemetry,
    "heartbeat": Heartbeat,
}

_TYPE_TAGS = {cls: tag for tag, cls in WIRE_TYPES.items()}

CONTROL_TYPES = (
    Drive,
    ArmJoint,
    EStop,
    ClearEStop,
    SetWaypoints,
    StartAutonomy,
    AbortAutonomy,
    ScienceCommand,
)


def is_control(msg: Message) -> bool:
    return isinstance(msg, CONTROL_TYPES)


def message_to_dict(msg: Message) -> dict:
    if type(msg) is Telemetry:  # hot path: telemetry flows every tick
        return {"type": "telemetry", "snapshot": snapshot_to_wire(msg.snapshot)}
    tag = _TYPE_TAGS.get(type(msg))
    if tag is None:
        raise TypeError(f"{type(msg).__name__} is not a wire message")
    body = to_wire(msg)
    return {"type": tag, **body}


def message_from_dict(data: dict) -> Message:
    if not isinstance(data, dict):
        raise ValueError(f"expected object, got {type(data).__name__}")
    tag = data.get("type")
    cls = WIRE_TYPES.get(tag)
    if cls is None:
        raise ValueError(f"unknown message type {tag!r}")
    body = {k: v for k, v in data.items() if k != "type"}
    return from_wire(cls, body)

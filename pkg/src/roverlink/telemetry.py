"""Telemetry vocabulary shared by the wire protocol, the rover and the base.

One TelemetrySnapshot is a timestamped aggregation of everything the base
station needs to render: the seven-sensor environmental fusion, attitude,
the latest GPS fix, autonomy progress, power buses and the e-stop latch.
Sensor fields are optional: a missing probe is reported as absent, never
fabricated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .nmea import GpsFix


class AutonomyTag(Enum):
    IDLE = "idle"
    ALIGN_HEADING = "alignHeading"
    TRAVERSE_GPS = "traverseGps"
    VISION_APPROACH = "visionApproach"
    ARRIVED = "arrived"
    FAULT = "fault"


ACTIVE_AUTONOMY_TAGS = frozenset(
    {AutonomyTag.ALIGN_HEADING, AutonomyTag.TRAVERSE_GPS, AutonomyTag.VISION_APPROACH}
)


class SectionId(Enum):
    DRIVE = "drive"
    COMPUTE = "compute"
    COMMS = "comms"


@dataclass(frozen=True)
class Orientation:
    roll_deg: float = 0.0
    pitch_deg: float = 0.0
    yaw_deg: float = 0.0


@dataclass(frozen=True)
class AutonomyStatus:
    tag: AutonomyTag = AutonomyTag.IDLE
    current_index: int = 0
    fault_reason: str | None = None


@dataclass(frozen=True)
class SectionPower:
    id: SectionId
    bus_v: float
    charge_fraction: float
    taps_v: tuple[float, ...] = ()


@dataclass(frozen=True)
class TelemetrySnapshot:
    t: float  # milliseconds on the rover clock
    orientation: Orientation = Orientation()
    fix: GpsFix = field(default_factory=GpsFix.no_fix)
    autonomy: AutonomyStatus = AutonomyStatus()
    power: tuple[SectionPower, ...] = ()
    estopped: bool = False
    arm_overload: bool = False
    camera_ok: bool = True  # status stub; video itself never rides this channel
    co2_ppm: float | None = None
    co_ppm: float | None = None
    air_temp_c: float | None = None
    humidity_pct: float | None = None
    soil_temp_c: float | None = None
    soil_moisture: float | None = None

    def __post_init__(self):
        if self.humidity_pct is not None and not 0.0 <= self.humidity_pct <= 100.0:
            raise ValueError(f"humidity {self.humidity_pct!r} outside [0, 100]")
        if self.soil_moisture is not None and not 0.0 <= self.soil_moisture <= 1.0:
            raise ValueError(f"soil moisture {self.soil_moisture!r} outside [0, 1]")
        object.__setattr__(self, "power", tuple(self.power))


def snapshot_to_wire(snap: TelemetrySnapshot) -> dict:
    """Hand-written wire form of a snapshot, for the telemetry hot path.

    Must stay byte-for-byte equal to the generic dataclass codec's output;
    a test asserts parity on generated snapshots.
    """
    fix = snap.fix
    point = fix.point
    return {
        "t": snap.t,
        "orientation": {
            "rollDeg": snap.orientation.roll_deg,
            "pitchDeg": snap.orientation.pitch_deg,
            "yawDeg": snap.orientation.yaw_deg,
        },
        "fix": {
            "point": None if point is None else {"lat": point.lat, "lon": point.lon},
            "utcTime": fix.utc_time,
            "quality": fix.quality.value,
            "satellites": fix.satellites,
            "hdop": fix.hdop,
            "altitudeM": fix.altitude_m,
        },
        "autonomy": {
            "tag": snap.autonomy.tag.value,
            "currentIndex": snap.autonomy.current_index,
            "faultReason": snap.autonomy.fault_reason,
        },
        "power": [
            {
                "id": s.id.value,
                "busV": s.bus_v,
                "chargeFraction": s.charge_fraction,
                "tapsV": list(s.taps_v),
            }
            for s in snap.power
        ],
        "estopped": snap.estopped,
        "armOverload": snap.arm_overload,
        "cameraOk": snap.camera_ok,
        "co2Ppm": snap.co2_ppm,
        "coPpm": snap.co_ppm,
        "airTempC": snap.air_temp_c,
        "humidityPct": snap.humidity_pct,
        "soilTempC": snap.soil_temp_c,
        "soilMoisture": snap.soil_moisture,
    }

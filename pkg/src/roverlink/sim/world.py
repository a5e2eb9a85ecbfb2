"""Deterministic rover + field simulator.

Kinematics are a front-steered unicycle: speed is the mean wheel throttle
times the max speed, and the heading rate follows from the steering angle
and the wheelbase (v/L * tan(steer)). All motion goes through great-circle
projection, so a course behaves identically anywhere on the globe.

Every random draw comes from the world's seeded generator: identical seed
plus identical command trace gives a bit-identical trajectory.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from enum import Enum

from ..geodesy import (
    DegenerateBearingError,
    GeoPoint,
    Heading,
    angular_difference,
    haversine_distance,
    initial_bearing,
    destination_point,
)
from ..nmea import FixQuality, GpsFix, encode_fix
from ..protocol.link import LinkBudget
from ..rover.autonomy import BeaconObservation
from ..rover.state import DriveState

DEFAULT_WHEELBASE_M = 0.9
DEFAULT_MAX_SPEED_MPS = 1.0
BEACON_DETECTION_RANGE_M = 3.5
CAMERA_FOV_DEG = 165.0

# vertical-drop limit line: reconstructed from the two measured anchor
# points (60 deg, 0.45 m) and (90 deg, 0.7 m), flat outside
_DROP_ANCHOR_LO = (60.0, 0.45)
_DROP_ANCHOR_HI = (90.0, 0.70)
MAX_SLOPE_ANGLE_DEG = 35.0
MAX_SLOPE_HEIGHT_M = 1.2
MAX_OBSTACLE_HEIGHT_M = 0.254  # tallest rock a wheel climbed on the test ramp


class TerrainKind(Enum):
    VERTICAL_DROP = "verticalDrop"
    SLOPE = "slope"
    OBSTACLE = "obstacle"


@dataclass(frozen=True)
class TerrainFeature:
    kind: TerrainKind
    location: GeoPoint
    extent_m: float
    angle_deg: float
    height_m: float

    def __post_init__(self):
        if not 0.0 < self.angle_deg <= 90.0:
            raise ValueError(f"angle {self.angle_deg!r} outside (0, 90]")
        if self.height_m <= 0.0:
            raise ValueError(f"height {self.height_m!r} must be positive")
        if self.extent_m <= 0.0:
            raise ValueError(f"extent {self.extent_m!r} must be positive")


@dataclass(frozen=True)
class NoiseModel:
    gps_error_radius_m: float = 3.0
    compass_sigma_deg: float = 2.0

    def __post_init__(self):
        if self.gps_error_radius_m < 0 or self.compass_sigma_deg < 0:
            raise ValueError("noise parameters must be non-negative")


@dataclass(frozen=True)
class Beacon:
    pos: GeoPoint
    waypoint_index: int


@dataclass
class RoverBody:
    pos: GeoPoint
    heading: Heading
    speed_mps: float = 0.0
    yaw_rate_dps: float = 0.0


@dataclass
class SimWorld:
    seed: int
    rover: RoverBody
    base_pos: GeoPoint
    terrain: tuple[TerrainFeature, ...] = ()
    beacons: tuple[Beacon, ...] = ()
    noise: NoiseModel = NoiseModel()
    link: LinkBudget = LinkBudget()
    wheelbase_m: float = DEFAULT_WHEELBASE_M
    max_speed_mps: float = DEFAULT_MAX_SPEED_MPS
    t_ms: float = 0.0
    rng: random.Random = field(default=None, repr=False)  # type: ignore[assignment]

    def __post_init__(self):
        self.terrain = tuple(self.terrain)
        self.beacons = tuple(self.beacons)
        if self.rng is None:
            self.rng = random.Random(self.seed)

    @property
    def base_distance_m(self) -> float:
        return haversine_distance(self.rover.pos, self.base_pos)


def vertical_drop_limit_m(angle_deg: float) -> float:
    """Max negotiable drop height at a given face angle (piecewise linear)."""
    lo_a, lo_h = _DROP_ANCHOR_LO
    hi_a, hi_h = _DROP_ANCHOR_HI
    if angle_deg <= lo_a:
        return lo_h
    if angle_deg >= hi_a:
        return hi_h
    return lo_h + (angle_deg - lo_a) * (hi_h - lo_h) / (hi_a - lo_a)


def traversable(feature: TerrainFeature) -> bool:
    """Can the rover cross this feature, pass/fail."""
    if feature.kind is TerrainKind.VERTICAL_DROP:
        return feature.height_m <= vertical_drop_limit_m(feature.angle_deg)
    if feature.kind is TerrainKind.SLOPE:
        return (
            feature.angle_deg <= MAX_SLOPE_ANGLE_DEG
            and feature.height_m <= MAX_SLOPE_HEIGHT_M
        )
    return feature.height_m <= MAX_OBSTACLE_HEIGHT_M


def _blocked(world: SimWorld, candidate: GeoPoint) -> bool:
    for feature in world.terrain:
        if traversable(feature):
            continue
        if haversine_distance(candidate, feature.location) <= feature.extent_m:
            return True
    return False


def step(world: SimWorld, drive: DriveState, dt_ms: float) -> SimWorld:
    """Advance the rover pose by one tick of the given drive command."""
    if dt_ms <= 0:
        raise ValueError(f"dt must be positive, got {dt_ms!r}")
    dt_s = dt_ms / 1000.0

    v = world.max_speed_mps * drive.mean_throttle
    yaw_rate = 0.0
    if v != 0.0 and drive.steer_deg != 0.0:
        yaw_rate = math.degrees(
            (v / world.wheelbase_m) * math.tan(math.radians(drive.steer_deg))
        )

    # integrate along the mid-step heading for a cleaner circular path
    move_heading = Heading(world.rover.heading + yaw_rate * dt_s / 2.0)
    new_heading = Heading(world.rover.heading + yaw_rate * dt_s)
    distance = v * dt_s

    new_pos = world.rover.pos
    if distance != 0.0:
        bearing = move_heading if distance > 0 else Heading(move_heading + 180.0)
        candidate = destination_point(world.rover.pos, bearing, abs(distance))
        if _blocked(world, candidate):
            v = 0.0  # stopped at the boundary of an impassable feature
        else:
            new_pos = candidate

    world.rover.pos = new_pos
    world.rover.heading = new_heading
    world.rover.speed_mps = v
    world.rover.yaw_rate_dps = yaw_rate
    world.t_ms += dt_ms
    return world


def sample_gps(world: SimWorld) -> bytes:
    """One GPS observation as a raw GGA sentence.

    The true position is displaced by a uniform draw on a disk of the
    configured error radius, then encoded, so the onboard NMEA parser is
    exercised end to end.
    """
    radius = world.noise.gps_error_radius_m
    offset_bearing = world.rng.random() * 360.0
    offset_dist = radius * math.sqrt(world.rng.random())
    observed = (
        destination_point(world.rover.pos, offset_bearing, offset_dist)
        if offset_dist > 0.0
        else world.rover.pos
    )
    fix = GpsFix(
        point=observed,
        utc_time=(world.t_ms / 1000.0) % 86400.0,
        quality=FixQuality.FIX,
        satellites=8,
        hdop=0.9,
        altitude_m=14.0,
    )
    return encode_fix(fix).raw()


def sample_compass(world: SimWorld) -> Heading:
    """Magnetometer heading: truth plus seeded Gaussian noise."""
    sigma = world.noise.compass_sigma_deg
    noise = world.rng.gauss(0.0, sigma) if sigma > 0 else 0.0
    return Heading(world.rover.heading + noise)


def observe_beacon(
    world: SimWorld,
    waypoint_index: int,
    detection_range_m: float = BEACON_DETECTION_RANGE_M,
    fov_deg: float = CAMERA_FOV_DEG,
) -> BeaconObservation | None:
    """What the camera stack reports for the active waypoint's beacon.

    Detection needs true range within ``detection_range_m`` and the beacon
    inside the camera's field of view. The returned bearing is noiseless
    and relative to the rover's nose.
    """
    beacon = next((b for b in world.beacons if b.waypoint_index == waypoint_index), None)
    if beacon is None:
        return None
    range_m = haversine_distance(world.rover.pos, beacon.pos)
    if range_m > detection_range_m:
        return None
    try:
        relative = angular_difference(world.rover.heading, initial_bearing(world.rover.pos, beacon.pos))
    except DegenerateBearingError:
        relative = 0.0  # standing on the beacon
    if abs(relative) > fov_deg / 2.0:
        return None
    return BeaconObservation(bearing_deg=relative, range_m=range_m)

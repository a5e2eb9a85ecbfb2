"""Scenario files: world geometry, waypoints, noise and link budget in YAML.

Minimal scenario::

    name: short-hop
    start: {lat: 23.78, lon: 90.42, heading_deg: 0}
    waypoints:
      - {lat: 23.781, lon: 90.42}

Beacons default to one per waypoint, placed exactly on it; ``base`` defaults
to the start position.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import yaml

from ..geodesy import GeoPoint, Heading
from ..protocol.link import LinkBudget
from .world import (
    DEFAULT_MAX_SPEED_MPS,
    DEFAULT_WHEELBASE_M,
    Beacon,
    NoiseModel,
    RoverBody,
    SimWorld,
    TerrainFeature,
    TerrainKind,
)


@dataclass(frozen=True)
class AmbientConditions:
    """Environmental truth fed to the sensor fusion box."""

    co2_ppm: float = 460.0
    co_ppm: float = 2.0
    air_temp_c: float = 31.0
    humidity_pct: float = 58.0
    soil_temp_c: float = 24.0
    soil_moisture: float = 0.18


@dataclass(frozen=True)
class Scenario:
    name: str
    start: GeoPoint
    start_heading_deg: float = 0.0
    base_pos: GeoPoint | None = None
    waypoints: tuple[GeoPoint, ...] = ()
    noise: NoiseModel = NoiseModel()
    link: LinkBudget = LinkBudget()
    terrain: tuple[TerrainFeature, ...] = ()
    beacons: tuple[Beacon, ...] | None = None  # None = one per waypoint
    ambient: AmbientConditions = AmbientConditions()
    wheelbase_m: float = DEFAULT_WHEELBASE_M
    max_speed_mps: float = DEFAULT_MAX_SPEED_MPS
    timeout_s: float = 900.0

    def __post_init__(self):
        object.__setattr__(self, "waypoints", tuple(self.waypoints))
        object.__setattr__(self, "terrain", tuple(self.terrain))
        if self.beacons is not None:
            object.__setattr__(self, "beacons", tuple(self.beacons))


def _point(data) -> GeoPoint:
    if not isinstance(data, dict) or "lat" not in data or "lon" not in data:
        raise ValueError(f"expected {{lat, lon}} mapping, got {data!r}")
    return GeoPoint(float(data["lat"]), float(data["lon"]))


def scenario_from_dict(data: dict) -> Scenario:
    if not isinstance(data, dict):
        raise ValueError("scenario file must hold a mapping")
    known = {
        "name",
        "start",
        "base",
        "waypoints",
        "noise",
        "link",
        "terrain",
        "beacons",
        "ambient",
        "rover",
        "timeout_s",
    }
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown scenario keys {sorted(unknown)}")

    start_raw = data.get("start")
    if start_raw is None:
        raise ValueError("scenario needs a start position")
    start = _point(start_raw)
    heading = float(start_raw.get("heading_deg", 0.0))

    waypoints = tuple(_point(p) for p in data.get("waypoints", ()))

    noise = NoiseModel(**data["noise"]) if "noise" in data else NoiseModel()
    link = LinkBudget(**data["link"]) if "link" in data else LinkBudget()

    terrain = []
    for item in data.get("terrain", ()):
        item = dict(item)
        kind = TerrainKind(item.pop("kind"))
        location = GeoPoint(float(item.pop("lat")), float(item.pop("lon")))
        terrain.append(TerrainFeature(kind=kind, location=location, **item))

    beacons = None
    if "beacons" in data and data["beacons"] != "auto":
        beacons = tuple(
            Beacon(pos=_point(b), waypoint_index=int(b["waypoint_index"]))
            for b in data["beacons"]
        )

    rover_raw = data.get("rover", {})
    ambient = AmbientConditions(**data["ambient"]) if "ambient" in data else AmbientConditions()

    return Scenario(
        name=str(data.get("name", "unnamed")),
        start=start,
        start_heading_deg=heading,
        base_pos=_point(data["base"]) if "base" in data else None,
        waypoints=waypoints,
        noise=noise,
        link=link,
        terrain=tuple(terrain),
        beacons=beacons,
        ambient=ambient,
        wheelbase_m=float(rover_raw.get("wheelbase_m", DEFAULT_WHEELBASE_M)),
        max_speed_mps=float(rover_raw.get("max_speed_mps", DEFAULT_MAX_SPEED_MPS)),
        timeout_s=float(data.get("timeout_s", 900.0)),
    )


def load_scenario(path: str | Path) -> Scenario:
    with open(path) as fh:
        return scenario_from_dict(yaml.safe_load(fh))


def build_world(scenario: Scenario, seed: int) -> SimWorld:
    beacons = scenario.beacons
    if beacons is None:
        beacons = tuple(
            Beacon(pos=p, waypoint_index=i) for i, p in enumerate(scenario.waypoints)
        )
    return SimWorld(
        seed=seed,
        rover=RoverBody(pos=scenario.start, heading=Heading(scenario.start_heading_deg)),
        base_pos=scenario.base_pos or scenario.start,
        terrain=scenario.terrain,
        beacons=beacons,
        noise=scenario.noise,
        link=scenario.link,
        wheelbase_m=scenario.wheelbase_m,
        max_speed_mps=scenario.max_speed_mps,
    )

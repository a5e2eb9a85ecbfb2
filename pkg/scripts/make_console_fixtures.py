#!/usr/bin/env python3
"""Regenerate the frontend test fixtures.

Writes a short recorded mission trace and a projection oracle table into
frontend/tests/fixtures/. Both are deterministic; rerun after changing the
trace schema or the projection math.
"""

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from roverlink.basestation.mapview import MapView, project_to_map
from roverlink.geodesy import GeoPoint, destination_point
from roverlink.sim.runner import run_mission
from roverlink.sim.scenario import Scenario
from roverlink.sim.world import NoiseModel

FIXTURES = ROOT / "frontend" / "tests" / "fixtures"


def make_trace() -> None:
    start = GeoPoint(23.78, 90.42)
    scenario = Scenario(
        name="console-fixture",
        start=start,
        waypoints=(destination_point(start, 55.0, 12.0),),
        noise=NoiseModel(2.0, 2.0),
    )
    path = FIXTURES / "trace.jsonl"
    result = run_mission(scenario, seed=9, record_path=path)
    print(f"trace: {path} ({result.ticks} ticks, arrived={result.arrived}, "
          f"{len(result.telemetry_received)} telemetry frames)")


def make_projection_cases() -> None:
    import random

    rng = random.Random(17)
    cases = []
    for _ in range(60):
        south = rng.uniform(-60, 60)
        west = rng.uniform(-170, 170)
        lat_span = rng.uniform(0.001, 2.0)
        lon_span = rng.uniform(0.001, 2.0)
        view = MapView(north=south + lat_span, south=south, east=west + lon_span, west=west)
        width = rng.choice([320, 520, 800])
        height = rng.choice([240, 420, 600])
        point = GeoPoint(
            rng.uniform(view.south, view.north), rng.uniform(view.west, view.east)
        )
        x, y = project_to_map(point, view, width, height)
        cases.append(
            {
                "bounds": {"north": view.north, "south": view.south,
                           "east": view.east, "west": view.west},
                "width": width,
                "height": height,
                "point": {"lat": point.lat, "lon": point.lon},
                "x": x,
                "y": y,
            }
        )
    path = FIXTURES / "projection_cases.json"
    path.write_text(json.dumps(cases, indent=1))
    print(f"projection oracle: {path} ({len(cases)} cases)")


if __name__ == "__main__":
    FIXTURES.mkdir(parents=True, exist_ok=True)
    make_trace()
    make_projection_cases()

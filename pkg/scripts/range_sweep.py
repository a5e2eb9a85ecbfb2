#!/usr/bin/env python3
"""Communication range experiment: drive straight away from the base and
report where telemetry starts dropping and where the control link dies.

    python3 scripts/range_sweep.py [--seed 1]
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from roverlink.geodesy import GeoPoint
from roverlink.sim.runner import ManualDriveScript, run_mission
from roverlink.sim.scenario import Scenario
from roverlink.sim.world import NoiseModel


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--start-distance", type=float, default=850.0)
    args = parser.parse_args()

    from roverlink.geodesy import destination_point

    base = GeoPoint(23.78, 90.42)
    scenario = Scenario(
        name="range-sweep",
        start=destination_point(base, 0.0, args.start_distance),
        base_pos=base,
        noise=NoiseModel(0.0, 0.0),
        timeout_s=400.0,
    )

    events = {"degraded_at": None, "dead_at": None, "halted_at": None}

    def watch(world, controller, out):
        d = world.base_distance_m
        if events["degraded_at"] is None and d >= world.link.full_strength_range_m:
            events["degraded_at"] = d
        if events["dead_at"] is None and d > world.link.dropout_range_m:
            events["dead_at"] = d
        if events["dead_at"] is not None and events["halted_at"] is None and not out.drive.moving:
            events["halted_at"] = d

    result = run_mission(
        scenario,
        seed=args.seed,
        base_driver=ManualDriveScript(throttle=1.0, steer_deg=0.0),
        on_tick=watch,
    )

    print(f"full-strength link out to     {events['degraded_at']:.0f} m" if events["degraded_at"] else "never left full strength")
    print(f"link dead past                {events['dead_at']:.0f} m" if events["dead_at"] else "link never died")
    if events["halted_at"]:
        print(f"failsafe halted the rover at  {events['halted_at']:.0f} m")
    print(f"telemetry frames received:    {len(result.telemetry_received)}")
    print(f"link declared dead at t =     {result.link_dead_ms and result.link_dead_ms / 1000.0:.1f} s")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

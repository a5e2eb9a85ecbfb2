#!/usr/bin/env python3
"""Monte-Carlo run of a waypoint course across many seeds.

Prints one line per seed plus a success-rate summary. Example:

    python3 scripts/run_course.py --scenario scenarios/six_waypoint_course.yaml \
        --seeds 100 [--gps-radius 3.0]
"""

import argparse
import statistics
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from dataclasses import replace

from roverlink.sim.runner import run_course_batch
from roverlink.sim.scenario import load_scenario
from roverlink.sim.world import NoiseModel


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--scenario", default="scenarios/six_waypoint_course.yaml")
    parser.add_argument("--seeds", type=int, default=100)
    parser.add_argument("--gps-radius", type=float, default=None,
                        help="override the scenario's GPS error radius")
    parser.add_argument("--verbose", action="store_true")
    args = parser.parse_args()

    scenario = load_scenario(args.scenario)
    if args.gps_radius is not None:
        scenario = replace(
            scenario,
            noise=NoiseModel(args.gps_radius, scenario.noise.compass_sigma_deg),
        )

    outcomes = run_course_batch(scenario, range(args.seeds))
    durations = [o.sim_time_ms / 1000.0 for o in outcomes if o.arrived]
    arrived = sum(o.arrived for o in outcomes)

    if args.verbose:
        for o in outcomes:
            mark = "ok " if o.arrived else "FAIL"
            print(f"seed {o.seed:3d}  {mark}  tag={o.final_tag:<14s} "
                  f"t={o.sim_time_ms/1000.0:6.1f}s  waypoints={len(o.advances)}")

    print(f"\nscenario: {scenario.name}  (gps radius {scenario.noise.gps_error_radius_m} m, "
          f"compass sigma {scenario.noise.compass_sigma_deg} deg)")
    print(f"arrived: {arrived}/{args.seeds}")
    if durations:
        print(f"mission time: median {statistics.median(durations):.1f}s, "
              f"min {min(durations):.1f}s, max {max(durations):.1f}s")
    return 0 if arrived == args.seeds else 1


if __name__ == "__main__":
    raise SystemExit(main())

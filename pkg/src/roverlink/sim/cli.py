"""`sim` command line: run scenarios headlessly or serve a live rover.

    sim run --scenario scenarios/six_waypoint_course.yaml --seed 7 \
            [--headless] [--record trace.jsonl]
    sim serve --scenario ... [--control-port 7401] [--telemetry-port 7402]

`run` executes the closed loop in simulated time and prints a JSON summary.
`serve` exposes the simulated rover on real sockets so a base station can
connect and drive it.
"""

from __future__ import annotations

import argparse
import json
import sys

from .runner import run_mission
from .scenario import load_scenario


def _cmd_run(args) -> int:
    scenario = load_scenario(args.scenario)
    last_second = -1.0

    def progress(world, controller, out):
        nonlocal last_second
        second = world.t_ms // 1000
        if second != last_second:
            last_second = second
            state = controller.autonomy
            print(
                f"t={world.t_ms / 1000.0:7.1f}s tag={state.tag.value:<14s} "
                f"wp={state.current_index} pos=({world.rover.pos.lat:.6f},"
                f"{world.rover.pos.lon:.6f}) v={world.rover.speed_mps:.2f}",
                file=sys.stderr,
            )

    result = run_mission(
        scenario,
        seed=args.seed,
        record_path=args.record,
        on_tick=None if args.headless else progress,
    )
    print(json.dumps(result.summary(), indent=2))
    return 0 if result.arrived or not scenario.waypoints else 1


def _cmd_serve(args) -> int:
    from ..rover.config import load_config
    from .serve import serve_scenario

    scenario = load_scenario(args.scenario)
    config = load_config(args.config)  # ROVER_CONFIG env var overrides
    print(
        f"serving simulated rover for scenario {scenario.name!r}: "
        f"control tcp/{args.control_port}, telemetry udp/{args.telemetry_port}",
        file=sys.stderr,
    )
    serve_scenario(
        scenario,
        seed=args.seed,
        control_port=args.control_port,
        telemetry_port=args.telemetry_port,
        config=config,
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a scenario in simulated time")
    run_p.add_argument("--scenario", required=True)
    run_p.add_argument("--seed", type=int, default=0)
    run_p.add_argument("--headless", action="store_true", help="no per-second progress")
    run_p.add_argument("--record", default=None, help="write a per-tick JSONL trace")
    run_p.set_defaults(func=_cmd_run)

    serve_p = sub.add_parser("serve", help="expose the simulated rover on real sockets")
    serve_p.add_argument("--scenario", required=True)
    serve_p.add_argument("--seed", type=int, default=0)
    serve_p.add_argument("--control-port", type=int, default=7401)
    serve_p.add_argument("--telemetry-port", type=int, default=7402)
    serve_p.add_argument("--config", default=None, help="rover key=value config file")
    serve_p.set_defaults(func=_cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())

"""`basestation` command line.

    basestation connect --rover <host:port> [--map <image> --bounds lat1,lon1,lat2,lon2]
                        [--log <dir>] [--console-port 8080] [--telemetry-port 7402]
                        [--ui-dir frontend/dist] [--no-keyboard]

Connects to the rover's control port, starts the telemetry intake and the
web console endpoint, and (on a TTY) reads tap-style keyboard teleop: a
tapped W/A/S/D key counts as held for a short window, space is e-stop,
C clears it, Q quits.
"""

from __future__ import annotations

import argparse
import select
import sys
import threading
import time
from pathlib import Path

from ..protocol.messages import ClearEStop, EStop
from ..protocol.session import SessionDeadError
from .app import BasestationApp
from .exports import write_trail_files
from .missionlog import EmptyLogError
from .web import serve_console

KEY_HOLD_MS = 400.0


def _default_ui_dir() -> str | None:
    here = Path(__file__).resolve()
    for parent in here.parents:
        candidate = parent / "frontend" / "dist"
        if (candidate / "index.html").exists():
            return str(candidate)
    return None


def _keyboard_loop(app: BasestationApp, stop: threading.Event) -> None:
    """Tap-based teleop on a raw TTY (terminals cannot report key release)."""
    import termios
    import tty

    fd = sys.stdin.fileno()
    old = termios.tcgetattr(fd)
    held: dict[str, float] = {}
    try:
        tty.setcbreak(fd)
        while not stop.is_set():
            ready, _, _ = select.select([sys.stdin], [], [], 0.05)
            now = time.monotonic() * 1000.0
            if ready:
                ch = sys.stdin.read(1).lower()
                if ch == "q":
                    stop.set()
                    break
                if ch == " ":
                    try:
                        app.send_command(EStop())
                    except SessionDeadError:
                        pass
                elif ch == "c":
                    try:
                        app.send_command(ClearEStop())
                    except SessionDeadError:
                        pass
                elif ch in "wasd":
                    held[ch] = now + KEY_HOLD_MS
            app.pressed_keys = {k for k, until in held.items() if until > now}
    finally:
        termios.tcsetattr(fd, termios.TCSADRAIN, old)


def _cmd_connect(args) -> int:
    host, _, port = args.rover.partition(":")
    bounds = None
    if args.bounds:
        parts = [float(x) for x in args.bounds.split(",")]
        if len(parts) != 4:
            print("--bounds wants lat1,lon1,lat2,lon2", file=sys.stderr)
            return 2
        bounds = tuple(parts)

    app = BasestationApp(
        rover_host=host,
        rover_port=int(port or 7401),
        telemetry_port=args.telemetry_port,
        log_dir=args.log,
        map_bounds=bounds,
    )
    try:
        app.connect()
    except OSError as exc:
        print(f"cannot connect to rover at {args.rover}: {exc}", file=sys.stderr)
        return 1
    print(f"connected to rover at {args.rover}", file=sys.stderr)

    ui_dir = args.ui_dir or _default_ui_dir()
    console = threading.Thread(
        target=serve_console,
        kwargs={
            "bridge": app.bridge,
            "port": args.console_port,
            "ui_dir": ui_dir,
            "map_image": args.map,
            "map_bounds": bounds,
        },
        daemon=True,
    )
    console.start()
    print(
        f"console at http://127.0.0.1:{args.console_port}/ "
        f"(ui bundle: {ui_dir or 'not built'})",
        file=sys.stderr,
    )

    stop = threading.Event()
    keyboard = None
    if not args.no_keyboard and sys.stdin.isatty():
        keyboard = threading.Thread(target=_keyboard_loop, args=(app, stop), daemon=True)
        keyboard.start()
        print("teleop: tap w/a/s/d, space = e-stop, c = clear, q = quit", file=sys.stderr)

    try:
        app.run(stop)
    except KeyboardInterrupt:
        stop.set()
    finally:
        if args.log:
            try:
                svg, csv = write_trail_files(app.log, Path(args.log) / "trail")
                print(f"trail written to {svg} and {csv}", file=sys.stderr)
            except EmptyLogError:
                pass
        app.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="basestation", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    connect = sub.add_parser("connect", help="connect to a rover and run the console")
    connect.add_argument("--rover", required=True, help="host:port of the rover control channel")
    connect.add_argument("--map", default=None, help="offline map image (served to the console)")
    connect.add_argument("--bounds", default=None, help="map bounds: lat1,lon1,lat2,lon2")
    connect.add_argument("--log", default=None, help="mission log directory")
    connect.add_argument("--console-port", type=int, default=8080)
    connect.add_argument("--telemetry-port", type=int, default=7402)
    connect.add_argument("--ui-dir", default=None, help="built console bundle directory")
    connect.add_argument("--no-keyboard", action="store_true")
    connect.set_defaults(func=_cmd_connect)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())

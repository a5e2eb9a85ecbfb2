"""Live mode: the simulated rover behind real sockets.

The rover is the TCP server; a base station connects as the client and
telemetry is pushed back as UDP datagrams to the connected peer's address.
One operator at a time; on session death the rover failsafes and waits for
the next connection.
"""

from __future__ import annotations

import socket
import time

from ..clock import SystemClock
from ..protocol.messages import Telemetry
from ..protocol.net import SocketTransport, TelemetrySender
from ..protocol.session import ControlSession, SessionRole
from ..rover.config import RoverConfig
from ..rover.controller import RoverController, SensorReadings
from .scenario import Scenario, build_world
from .world import observe_beacon, sample_compass, sample_gps, step


def serve_scenario(
    scenario: Scenario,
    seed: int = 0,
    control_port: int = 7401,
    telemetry_port: int = 7402,
    config: RoverConfig | None = None,
    stop_event=None,
    ready_callback=None,
) -> None:
    clock = SystemClock()
    config = config or RoverConfig()
    world = build_world(scenario, seed)
    controller = RoverController(config=config, clock=clock)
    ambient = scenario.ambient

    listener = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    listener.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    listener.bind(("0.0.0.0", control_port))
    listener.listen(1)
    listener.settimeout(0.2)
    if ready_callback is not None:
        ready_callback(listener.getsockname()[1])

    tick_s = config.tick_ms / 1000.0
    try:
        while stop_event is None or not stop_event.is_set():
            try:
                conn, peer = listener.accept()
            except socket.timeout:
                continue

            session = ControlSession(
                SessionRole.SERVER,
                SocketTransport(conn),
                clock,
                config.heartbeat_interval_ms,
                config.watchdog_ms,
            )
            telemetry_out = TelemetrySender((peer[0], telemetry_port))
            last = time.monotonic()
            try:
                while session.alive and (stop_event is None or not stop_event.is_set()):
                    now = time.monotonic()
                    dt_ms = max(1.0, (now - last) * 1000.0)
                    last = now

                    for msg in session.poll():
                        for ack in controller.handle_message(msg):
                            if session.alive:
                                session.send(ack)

                    sensors = SensorReadings(
                        gps_nmea=sample_gps(world),
                        compass_heading_deg=float(sample_compass(world)),
                        accel_g=(0.0, 0.0, 1.0),
                        gyro_dps=(0.0, 0.0, world.rover.yaw_rate_dps),
                        beacon=observe_beacon(world, controller.active_waypoint_index),
                        co2_ppm=ambient.co2_ppm,
                        co_ppm=ambient.co_ppm,
                        air_temp_c=ambient.air_temp_c,
                        humidity_pct=ambient.humidity_pct,
                        soil_temp_c=ambient.soil_temp_c,
                        soil_moisture=ambient.soil_moisture,
                    )
                    out = controller.tick(sensors, dt_ms)
                    step(world, out.drive, dt_ms)
                    if out.telemetry is not None:
                        telemetry_out.send(Telemetry(snapshot=out.telemetry))

                    time.sleep(max(0.0, tick_s - (time.monotonic() - now)))
            finally:
                controller.on_link_dead()
                telemetry_out.close()
                session.close()
    finally:
        listener.close()

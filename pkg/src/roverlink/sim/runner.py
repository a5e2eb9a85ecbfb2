"""Closed-loop mission runner.

Wires a simulated base station to the onboard controller through the real
wire protocol (framed control session + latest-wins telemetry channel),
gates both channels with the range-based RF model, and steps the world on
a shared manual clock. No wall time, no ambient entropy: a (scenario, seed)
pair replays bit-identically.
"""

from __future__ import annotations

import hashlib
import json
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path

from ..clock import ManualClock
from ..geodesy import haversine_distance
from ..protocol.framing import encode_frame
from ..protocol.link import LinkQuality, link_quality
from ..protocol.messages import Ack, Drive, SetWaypoints, StartAutonomy, Telemetry
from ..protocol.session import ControlSession, SessionDeadError, SessionRole, TransportClosed
from ..protocol.wire import to_wire
from ..rover.config import RoverConfig
from ..rover.controller import RoverController, SensorReadings
from ..telemetry import AutonomyTag, TelemetrySnapshot
from .scenario import Scenario, build_world
from .world import SimWorld, observe_beacon, sample_compass, sample_gps, step

TICK_MS = 50.0


class GatedTransport:
    """Memory transport endpoint whose delivery is pumped by the RF gate."""

    def __init__(self):
        self.inbox: deque[bytes] = deque()
        self.pending: deque[bytes] = deque()  # written, not yet "on the air"
        self.peer: "GatedTransport | None" = None
        self.closed = False

    def write(self, data: bytes) -> None:
        if self.closed or self.peer is None or self.peer.closed:
            raise TransportClosed("stream closed")
        self.pending.append(bytes(data))

    def read(self) -> bytes:
        if self.inbox:
            return self.inbox.popleft()
        if self.closed or self.peer is None or self.peer.closed:
            raise TransportClosed("stream closed")
        return b""

    def close(self) -> None:
        self.closed = True


class RfGate:
    """Moves bytes between two gated endpoints unless the link is dead.

    TCP is reliable: in the degraded band frames still get through (the
    stack retransmits); past the dropout range the stream simply stalls,
    which is what trips the heartbeat watchdog.
    """

    def __init__(self):
        self.base_end = GatedTransport()
        self.rover_end = GatedTransport()
        self.base_end.peer = self.rover_end
        self.rover_end.peer = self.base_end

    def pump(self, quality: LinkQuality) -> None:
        if quality is LinkQuality.DEAD:
            return
        while self.base_end.pending:
            self.rover_end.inbox.append(self.base_end.pending.popleft())
        while self.rover_end.pending:
            self.base_end.inbox.append(self.rover_end.pending.popleft())


@dataclass
class AutonomyMission:
    """Default base-side script: dispatch the course, then start autonomy."""

    waypoints: tuple
    _sent: bool = False

    def __call__(self, t_ms: float, session: ControlSession) -> None:
        if not self._sent and session.alive:
            try:
                session.send(SetWaypoints(points=self.waypoints))
                session.send(StartAutonomy())
            except SessionDeadError:
                return
            self._sent = True


@dataclass
class ManualDriveScript:
    """Streams a constant drive command at the operator rate."""

    throttle: float = 1.0
    steer_deg: float = 0.0
    period_ms: float = 100.0
    _next_ms: float = 0.0

    def __call__(self, t_ms: float, session: ControlSession) -> None:
        if t_ms >= self._next_ms and session.alive:
            try:
                session.send(Drive(throttle=self.throttle, steer_deg=self.steer_deg))
            except SessionDeadError:
                return
            self._next_ms = t_ms + self.period_ms


@dataclass(frozen=True)
class VisionEntry:
    waypoint_index: int
    t_ms: float
    measured_distance_m: float | None
    true_distance_m: float


@dataclass(frozen=True)
class WaypointAdvance:
    waypoint_index: int
    t_ms: float
    true_distance_m: float
    tag_before: AutonomyTag


@dataclass
class MissionResult:
    scenario_name: str
    seed: int
    arrived: bool = False
    final_tag: AutonomyTag = AutonomyTag.IDLE
    fault_reason: str | None = None
    sim_time_ms: float = 0.0
    ticks: int = 0
    vision_entries: list[VisionEntry] = field(default_factory=list)
    advances: list[WaypointAdvance] = field(default_factory=list)
    telemetry_received: list[TelemetrySnapshot] = field(default_factory=list)
    telemetry_sha256: str = ""
    acks: list[Ack] = field(default_factory=list)
    link_dead_ms: float | None = None
    rover_stopped_ms: float | None = None

    def summary(self) -> dict:
        return {
            "scenario": self.scenario_name,
            "seed": self.seed,
            "arrived": self.arrived,
            "finalTag": self.final_tag.value,
            "faultReason": self.fault_reason,
            "simTimeS": round(self.sim_time_ms / 1000.0, 1),
            "ticks": self.ticks,
            "telemetryFrames": len(self.telemetry_received),
            "telemetrySha256": self.telemetry_sha256,
            "waypointsReached": len(self.advances),
        }


def run_mission(
    scenario: Scenario,
    seed: int,
    record_path: str | Path | None = None,
    base_driver=None,
    config: RoverConfig | None = None,
    on_tick=None,
    stop_when=None,
    max_sim_s: float | None = None,
) -> MissionResult:
    """Run one scenario to completion under a manual clock."""
    clock = ManualClock()
    world = build_world(scenario, seed)
    config = config or RoverConfig()
    controller = RoverController(config=config, clock=clock)

    gate = RfGate()
    base_session = ControlSession(
        SessionRole.CLIENT, gate.base_end, clock,
        config.heartbeat_interval_ms, config.watchdog_ms,
    )
    rover_session = ControlSession(
        SessionRole.SERVER, gate.rover_end, clock,
        config.heartbeat_interval_ms, config.watchdog_ms,
    )

    if base_driver is None:
        base_driver = AutonomyMission(waypoints=scenario.waypoints)

    result = MissionResult(scenario_name=scenario.name, seed=seed)
    telemetry_hash = hashlib.sha256()
    ambient = scenario.ambient
    failsafed = False
    arrived_grace = 0
    fault_grace = 0
    timeout_ms = (max_sim_s if max_sim_s is not None else scenario.timeout_s) * 1000.0

    gps_divider = 4  # 5 Hz GPS (the receiver's ceiling) vs the 20 Hz tick
    # link band only needs recomputing once the rover could have moved
    # across a threshold; track an upper bound on movement since last check
    link_distance = world.base_distance_m
    link_moved_bound = 0.0
    max_step_m = world.max_speed_mps * (TICK_MS / 1000.0)
    record_fh = open(record_path, "w") if record_path is not None else None
    try:
        while clock.now_ms() < timeout_ms:
            t = clock.now_ms()

            if base_session.alive:
                base_driver(t, base_session)

            if link_distance + link_moved_bound >= world.link.full_strength_range_m:
                link_distance = world.base_distance_m  # near a band edge: be exact
                link_moved_bound = 0.0
            quality = link_quality(link_distance, world.link)
            link_moved_bound += max_step_m
            gate.pump(quality)

            for msg in rover_session.poll():
                for ack in controller.handle_message(msg):
                    if rover_session.alive:
                        rover_session.send(ack)

            if result.ticks % 4 == 0:  # the client side has no 50 ms deadlines
                for msg in base_session.poll():
                    if isinstance(msg, Ack):
                        result.acks.append(msg)

            if not rover_session.alive and not failsafed:
                controller.on_link_dead()
                failsafed = True
                result.link_dead_ms = t

            prev_tag = controller.autonomy.tag
            prev_index = controller.autonomy.current_index

            sensors = SensorReadings(
                gps_nmea=sample_gps(world) if result.ticks % gps_divider == 0 else None,
                compass_heading_deg=float(sample_compass(world)),
                accel_g=(0.0, 0.0, 1.0),
                gyro_dps=(0.0, 0.0, world.rover.yaw_rate_dps),
                beacon=(
                    observe_beacon(world, controller.active_waypoint_index)
                    if prev_tag is AutonomyTag.VISION_APPROACH
                    else None
                ),
                co2_ppm=ambient.co2_ppm,
                co_ppm=ambient.co_ppm,
                air_temp_c=ambient.air_temp_c,
                humidity_pct=ambient.humidity_pct,
                soil_temp_c=ambient.soil_temp_c,
                soil_moisture=ambient.soil_moisture,
            )
            out = controller.tick(sensors, TICK_MS)

            new_tag = controller.autonomy.tag
            new_index = controller.autonomy.current_index
            if new_tag is AutonomyTag.VISION_APPROACH and prev_tag is not AutonomyTag.VISION_APPROACH:
                wp = scenario.waypoints[new_index]
                fix = controller.last_fix
                measured = (
                    haversine_distance(fix.point, wp)
                    if fix is not None and fix.point is not None
                    else None
                )
                result.vision_entries.append(
                    VisionEntry(new_index, t, measured, haversine_distance(world.rover.pos, wp))
                )
            if new_index > prev_index and prev_index < len(scenario.waypoints):
                wp = scenario.waypoints[prev_index]
                result.advances.append(
                    WaypointAdvance(
                        prev_index, t, haversine_distance(world.rover.pos, wp), prev_tag
                    )
                )

            if result.rover_stopped_ms is None and failsafed and not out.drive.moving:
                result.rover_stopped_ms = t

            delivered_snapshot = None
            if out.telemetry is not None:
                frame = encode_frame(Telemetry(snapshot=out.telemetry))
                deliver = quality is LinkQuality.FULL or (
                    quality is LinkQuality.DEGRADED
                    and world.rng.random() >= world.link.degraded_loss_rate
                )
                if deliver:
                    # the frame is what went on the air; decode-identity is
                    # covered by the codec tests, no need to re-parse here
                    delivered_snapshot = out.telemetry
                    result.telemetry_received.append(delivered_snapshot)
                    telemetry_hash.update(frame)

            if record_fh is not None:
                record_fh.write(
                    json.dumps(
                        {
                            "tMs": t,
                            "truth": {
                                "lat": world.rover.pos.lat,
                                "lon": world.rover.pos.lon,
                                "headingDeg": float(world.rover.heading),
                                "speedMps": world.rover.speed_mps,
                            },
                            "link": quality.value,
                            "autonomy": {"tag": new_tag.value, "index": new_index},
                            "telemetry": (
                                to_wire(delivered_snapshot)
                                if delivered_snapshot is not None
                                else None
                            ),
                        },
                        separators=(",", ":"),
                    )
                    + "\n"
                )

            step(world, out.drive, TICK_MS)

            if on_tick is not None:
                on_tick(world, controller, out)

            result.ticks += 1
            clock.advance(TICK_MS)

            if stop_when is not None:
                if stop_when(world, controller):
                    break
            else:
                if controller.autonomy.tag is AutonomyTag.ARRIVED:
                    arrived_grace += 1
                    if arrived_grace >= 4:  # flush a couple of telemetry frames
                        break
                elif controller.autonomy.tag is AutonomyTag.FAULT or failsafed:
                    fault_grace += 1
                    if fault_grace >= int(config.watchdog_ms / TICK_MS) + 10:
                        break
    finally:
        if record_fh is not None:
            record_fh.close()

    result.final_tag = controller.autonomy.tag
    result.fault_reason = controller.autonomy.fault_reason
    result.arrived = controller.autonomy.tag is AutonomyTag.ARRIVED
    result.sim_time_ms = clock.now_ms()
    result.telemetry_sha256 = telemetry_hash.hexdigest()
    return result


@dataclass(frozen=True)
class CourseOutcome:
    """Light, picklable summary of one mission for batch runs."""

    seed: int
    arrived: bool
    final_tag: str
    sim_time_ms: float
    vision_entries: tuple[tuple[int, float | None, float], ...]  # (wp, measured, true)
    advances: tuple[tuple[int, float, str], ...]  # (wp, true distance, tag before)
    telemetry_sha256: str


def _course_worker(args) -> CourseOutcome:
    scenario, seed = args
    r = run_mission(scenario, seed)
    return CourseOutcome(
        seed=seed,
        arrived=r.arrived,
        final_tag=r.final_tag.value,
        sim_time_ms=r.sim_time_ms,
        vision_entries=tuple(
            (v.waypoint_index, v.measured_distance_m, v.true_distance_m)
            for v in r.vision_entries
        ),
        advances=tuple(
            (a.waypoint_index, a.true_distance_m, a.tag_before.value) for a in r.advances
        ),
        telemetry_sha256=r.telemetry_sha256,
    )


def run_course_batch(
    scenario: Scenario, seeds, processes: int | None = None
) -> list[CourseOutcome]:
    """Run one scenario across many seeds, in parallel when cores allow."""
    import multiprocessing

    jobs = [(scenario, seed) for seed in seeds]
    if processes is None:
        processes = min(multiprocessing.cpu_count(), 16)
    if processes <= 1 or len(jobs) <= 1:
        return [_course_worker(job) for job in jobs]
    with multiprocessing.Pool(processes=processes) as pool:
        return pool.map(_course_worker, jobs, chunksize=max(1, len(jobs) // (processes * 8)))

"""The onboard controller.

One logical loop owns all mutable state: inbound control messages are
interpreted (and always acked), the safety latches are enforced, the
autonomy state machine is stepped, attitude is filtered, the batteries are
drained, and a telemetry snapshot is aggregated at the telemetry cadence.

Safety rules, in priority order:
* a manual EStop latches: every actuator output is zero until ClearEStop;
* link loss is a soft failsafe: outputs zero and autonomy faults, but
  manual driving resumes on reconnect without clearing anything;
* steering is clamped onboard no matter what the operator requested.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from ..clock import SystemClock
from ..geodesy import DegenerateBearingError, haversine_distance, initial_bearing
from ..nmea import GpsFix, NmeaError, parse_sentence, to_fix
from ..protocol.messages import (
    AbortAutonomy,
    Ack,
    ArmJoint,
    ArmJointName,
    ClearEStop,
    Drive,
    EStop,
    Message,
    ScienceAction,
    ScienceCommand,
    SetWaypoints,
    StartAutonomy,
    is_control,
)
from ..telemetry import (
    AutonomyStatus,
    AutonomyTag,
    Orientation,
    SectionId,
    TelemetrySnapshot,
)
from .autonomy import AutonomyParams, AutonomyState, BeaconObservation, run_autonomy_step
from .config import RoverConfig
from .orientation import compute_orientation
from .power import power_step, section_power_report
from .state import ArmState, DriveState, clamp

_JOINT_INDEX = {name: i for i, name in enumerate(ArmJointName)}


@dataclass(frozen=True)
class SensorReadings:
    """One tick's worth of raw inputs. Missing sensors stay None."""

    gps_nmea: bytes | None = None
    compass_heading_deg: float | None = None
    accel_g: tuple[float, float, float] | None = None
    gyro_dps: tuple[float, float, float] | None = None
    beacon: BeaconObservation | None = None
    co2_ppm: float | None = None
    co_ppm: float | None = None
    air_temp_c: float | None = None
    humidity_pct: float | None = None
    soil_temp_c: float | None = None
    soil_moisture: float | None = None
    arm_payload_kg: float | None = None
    camera_ok: bool = True


@dataclass(frozen=True)
class TickOutput:
    drive: DriveState
    arm: ArmState
    telemetry: TelemetrySnapshot | None


class RoverController:
    def __init__(self, config: RoverConfig | None = None, clock=None):
        self.config = config or RoverConfig()
        self.clock = clock or SystemClock()
        self.estopped = False
        self.autonomy = AutonomyState()
        self.orientation = Orientation()
        self._power = self.config.power
        self.arm = ArmState()
        self._manual_throttle = 0.0
        self._manual_steer = 0.0
        self._manual_drive = DriveState.stopped()
        self._last_fix: GpsFix | None = None
        self._last_fix_ms: float | None = None
        self._nav_cache = None
        self._last_drive = DriveState.stopped()
        self._since_telemetry_ms = float("inf")  # first tick emits
        self._section_ids = tuple(section.id for section in self.config.power)
        self._pending_amp_ms = [0.0] * len(self._section_ids)
        self.science_log: list[tuple[float, ScienceAction]] = []

        p = self.config
        self._params = AutonomyParams(
            align_tolerance_deg=p.align_tolerance_deg,
            steer_gain=p.steer_gain,
            cruise_throttle=p.cruise_throttle,
            approach_throttle=p.approach_throttle,
            align_throttle=p.align_throttle,
            takeover_radius_m=p.takeover_radius_m,
            arrival_radius_m=p.arrival_radius_m,
            no_fix_limit=p.no_fix_limit,
            realign_threshold_deg=p.realign_threshold_deg,
            vision_search_ticks=p.vision_search_ticks,
            takeover_debounce=p.takeover_debounce,
            max_steer_deg=p.max_steer_deg,
        )

    # ------------------------------------------------------------- messages

    def handle_message(self, msg: Message) -> list[Message]:
        """Apply one control message; returns the Acks to send back.

        EStop always wins: it is applied immediately and any motion command
        arriving while the latch is set is rejected, never queued.
        """
        if not is_control(msg):
            return []

        if isinstance(msg, EStop):
            self.estopped = True
            self._zero_motion()
            if self.autonomy.active:
                self.autonomy = replace(self.autonomy, tag=AutonomyTag.IDLE)
            return [Ack(msg.seq, True)]

        if isinstance(msg, ClearEStop):
            self.estopped = False
            return [Ack(msg.seq, True)]

        if isinstance(msg, Drive):
            if self.estopped:
                return [Ack(msg.seq, False)]
            self._manual_throttle = clamp(msg.throttle, -1.0, 1.0)
            self._manual_steer = clamp(
                msg.steer_deg, -self.config.max_steer_deg, self.config.max_steer_deg
            )
            self._manual_drive = DriveState.straight(self._manual_throttle, self._manual_steer)
            return [Ack(msg.seq, True)]

        if isinstance(msg, ArmJoint):
            if self.estopped:
                return [Ack(msg.seq, False)]
            rates = list(self.arm.joint_rate)
            rates[_JOINT_INDEX[msg.joint]] = clamp(msg.rate, -1.0, 1.0)
            self.arm = replace(self.arm, joint_rate=tuple(rates))
            return [Ack(msg.seq, True)]

        if isinstance(msg, SetWaypoints):
            if self.autonomy.active:
                return [Ack(msg.seq, False)]  # abort first, then re-dispatch
            self.autonomy = AutonomyState(waypoints=msg.points)
            return [Ack(msg.seq, True)]

        if isinstance(msg, StartAutonomy):
            if self.estopped or not self.autonomy.waypoints or self.autonomy.active:
                return [Ack(msg.seq, False)]
            index = self.autonomy.current_index
            if self.autonomy.tag is not AutonomyTag.FAULT or index >= len(self.autonomy.waypoints):
                index = 0  # fresh start; a fault resumes where it stopped
            self.autonomy = replace(
                self.autonomy,
                tag=AutonomyTag.ALIGN_HEADING,
                current_index=index,
                fault_reason=None,
                no_fix_ticks=0,
                takeover_streak=0,
                blind_ticks=0,
            )
            return [Ack(msg.seq, True)]

        if isinstance(msg, AbortAutonomy):
            self.autonomy = replace(
                self.autonomy, tag=AutonomyTag.IDLE, current_index=0, fault_reason=None
            )
            self._last_drive = DriveState.stopped()
            return [Ack(msg.seq, True)]

        if isinstance(msg, ScienceCommand):
            if self.estopped and msg.action is not ScienceAction.READ_SENSORS:
                return [Ack(msg.seq, False)]  # the drill and pumps are actuators too
            self.science_log.append((self.clock.now_ms(), msg.action))
            return [Ack(msg.seq, True)]

        return []

    def on_link_dead(self) -> None:
        """Soft failsafe on session death: stop everything, fault autonomy,
        but do not set the manual e-stop latch."""
        self._zero_motion()
        if self.autonomy.active:
            self.autonomy = replace(
                self.autonomy, tag=AutonomyTag.FAULT, fault_reason="link lost"
            )

    def _zero_motion(self) -> None:
        self._manual_throttle = 0.0
        self._manual_steer = 0.0
        self._manual_drive = DriveState.stopped()
        self.arm = replace(self.arm, joint_rate=(0.0,) * 6)
        self._last_drive = DriveState.stopped(estopped=self.estopped)

    # ----------------------------------------------------------------- tick

    def tick(self, sensors: SensorReadings, dt_ms: float) -> TickOutput:
        """One 50 ms control step: fuse sensors, drive, drain batteries."""
        if dt_ms <= 0:
            raise ValueError(f"dt must be positive, got {dt_ms!r}")
        now = self.clock.now_ms()

        if sensors.accel_g is not None or sensors.gyro_dps is not None:
            self.orientation = compute_orientation(
                sensors.accel_g,
                sensors.gyro_dps,
                self.orientation,
                dt_ms,
                mag_heading_deg=sensors.compass_heading_deg,
                alpha=self.config.filter_alpha,
            )

        fresh_fix = False
        if sensors.gps_nmea is not None:
            try:
                parsed = to_fix(parse_sentence(sensors.gps_nmea))
            except NmeaError:
                parsed = None  # garbled sentence: no new fix this tick
            if parsed is not None:
                self._last_fix = parsed
                self._last_fix_ms = now
                fresh_fix = True

        fix = self._last_fix
        if fix is not None and self._last_fix_ms is not None:
            if now - self._last_fix_ms > self.config.fix_hold_ms:
                fix = None  # too stale to navigate on

        heading = (
            sensors.compass_heading_deg
            if sensors.compass_heading_deg is not None
            else self.orientation.yaw_deg
        )

        if sensors.arm_payload_kg is not None:
            self.arm = replace(self.arm, payload_kg=max(0.0, sensors.arm_payload_kg))

        if self.estopped:
            drive = DriveState.stopped(estopped=True)
        elif self.autonomy.active:
            self.autonomy, drive = run_autonomy_step(
                self.autonomy,
                fix,
                heading,
                sensors.beacon,
                dt_ms,
                self._params,
                nav=self._nav_solution(fix),
                fresh_fix=fresh_fix,
            )
        else:
            drive = self._manual_drive
        self._last_drive = drive

        # accumulate the drain as amp-milliseconds and materialize the pack
        # state lazily (the drain is linear, so this is exact)
        pending = self._pending_amp_ms
        for i, load in enumerate(self._load_model(drive)):
            pending[i] += load * dt_ms

        telemetry = None
        self._since_telemetry_ms += dt_ms
        if self._since_telemetry_ms >= self.config.telemetry_period_ms:
            self._since_telemetry_ms = 0.0
            telemetry = self.build_snapshot(sensors, now)

        return TickOutput(drive=drive, arm=self.arm, telemetry=telemetry)

    def _nav_solution(self, fix) -> tuple[float, float | None] | None:
        """Distance/bearing to the active waypoint, memoized per fix object.

        A fix is held across several control ticks between GPS samples; the
        spherical solution only depends on (fix, target), so recomputing it
        each tick is waste.
        """
        if fix is None or fix.point is None:
            return None
        target = self.autonomy.target
        if target is None:
            return None
        cached = self._nav_cache
        if cached is not None and cached[0] is fix and cached[1] is target:
            return cached[2]
        distance = haversine_distance(fix.point, target)
        try:
            bearing = float(initial_bearing(fix.point, target))
        except DegenerateBearingError:
            bearing = None
        nav = (distance, bearing)
        self._nav_cache = (fix, target, nav)
        return nav

    def _settle_power(self) -> None:
        pending = self._pending_amp_ms
        if any(v > 0.0 for v in pending):
            loads = dict(zip(self._section_ids, pending))
            self._power = power_step(self._power, loads, 1.0)  # amp-ms over 1 ms
            self._pending_amp_ms = [0.0] * len(pending)

    def _load_model(self, drive: DriveState) -> list[float]:
        """Section currents (amps) in config.power order."""
        drive_load = self.config.wheel_full_load_a * sum(abs(t) for t in drive.wheel_throttle)
        arm_load = self.config.arm_full_load_a * sum(abs(r) for r in self.arm.joint_rate)
        loads = []
        for sid in self._section_ids:
            if sid is SectionId.DRIVE:
                loads.append(drive_load + arm_load)
            elif sid is SectionId.COMPUTE:
                loads.append(self.config.compute_load_a)
            else:
                loads.append(self.config.comms_load_a)
        return loads

    def build_snapshot(self, sensors: SensorReadings, t_ms: float) -> TelemetrySnapshot:
        """Aggregate the telemetry snapshot; absent sensors stay absent."""
        self._settle_power()
        fix = self._last_fix if self._last_fix is not None else GpsFix.no_fix()
        return TelemetrySnapshot(
            t=t_ms,
            orientation=self.orientation,
            fix=fix,
            autonomy=AutonomyStatus(
                tag=self.autonomy.tag,
                current_index=self.autonomy.current_index,
                fault_reason=self.autonomy.fault_reason,
            ),
            power=section_power_report(self._power),
            estopped=self.estopped,
            arm_overload=self.arm.overload,
            camera_ok=sensors.camera_ok,
            co2_ppm=sensors.co2_ppm,
            co_ppm=sensors.co_ppm,
            air_temp_c=sensors.air_temp_c,
            humidity_pct=sensors.humidity_pct,
            soil_temp_c=sensors.soil_temp_c,
            soil_moisture=sensors.soil_moisture,
        )

    @property
    def power(self) -> tuple:
        self._settle_power()
        return self._power

    @property
    def active_waypoint_index(self) -> int:
        return self.autonomy.current_index

    @property
    def last_fix(self) -> GpsFix | None:
        return self._last_fix

    @property
    def last_drive(self) -> DriveState:
        return self._last_drive

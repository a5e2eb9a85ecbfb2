"""GPS + compass waypoint traversal with a vision takeover phase.

State graph::

    Idle -> AlignHeading -> TraverseGps -> VisionApproach -> (next waypoint)
                                                          -> Arrived
    any active state -> Fault (GPS lost / link lost)

AlignHeading turns (tight forward arc; the front-steered chassis cannot
pivot on the spot) until the heading error is inside the tolerance.
TraverseGps drives with proportional steering on the bearing error and
hands over to VisionApproach once the navigation solution says the target
is inside the takeover radius. VisionApproach steers on the beacon bearing
reported by the camera stack and calls the waypoint reached inside the
arrival radius; if the beacon never shows (the GPS flagged us close when
we were not), it sweeps a search circle and eventually falls back to GPS
traversal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from ..geodesy import GeoPoint, angular_difference, haversine_distance, initial_bearing
from ..geodesy import DegenerateBearingError
from ..nmea import FixQuality, GpsFix
from ..telemetry import ACTIVE_AUTONOMY_TAGS, AutonomyTag
from .state import DriveState, clamp


@dataclass(frozen=True)
class BeaconObservation:
    """A detected waypoint beacon: bearing relative to the rover's nose
    (positive = to the right) and true range."""

    bearing_deg: float
    range_m: float


@dataclass(frozen=True)
class AutonomyParams:
    align_tolerance_deg: float = 10.0
    steer_gain: float = 0.5  # degrees of steer per degree of bearing error
    cruise_throttle: float = 0.75
    approach_throttle: float = 0.5
    align_throttle: float = 0.5
    takeover_radius_m: float = 3.5
    arrival_radius_m: float = 1.0
    no_fix_limit: int = 40
    realign_threshold_deg: float = 60.0
    vision_search_ticks: int = 600
    takeover_debounce: int = 3
    max_steer_deg: float = 35.0


@dataclass(frozen=True)
class AutonomyState:
    tag: AutonomyTag = AutonomyTag.IDLE
    waypoints: tuple[GeoPoint, ...] = field(default_factory=tuple)
    current_index: int = 0
    fault_reason: str | None = None
    no_fix_ticks: int = 0
    takeover_streak: int = 0
    blind_ticks: int = 0

    def __post_init__(self):
        object.__setattr__(self, "waypoints", tuple(self.waypoints))
        if self.tag in ACTIVE_AUTONOMY_TAGS and self.current_index >= len(self.waypoints):
            raise ValueError(
                f"active autonomy needs current_index < {len(self.waypoints)}, "
                f"got {self.current_index}"
            )

    @property
    def active(self) -> bool:
        return self.tag in ACTIVE_AUTONOMY_TAGS

    @property
    def target(self) -> GeoPoint | None:
        if self.current_index < len(self.waypoints):
            return self.waypoints[self.current_index]
        return None


def _arc_turn(direction: float, params: AutonomyParams) -> DriveState:
    """Tightest turn the steering allows; differential throttle helps the
    inside wheels follow the smaller radius."""
    steer = math.copysign(params.max_steer_deg, direction)
    outer = clamp(params.align_throttle * 1.3, 0.0, 1.0)
    inner = params.align_throttle * 0.7
    left, right = (outer, inner) if direction > 0 else (inner, outer)
    return DriveState((left,) * 3 + (right,) * 3, steer)


def _steered_run(throttle: float, steer_deg: float, params: AutonomyParams) -> DriveState:
    steer = clamp(steer_deg, -params.max_steer_deg, params.max_steer_deg)
    diff = (steer / params.max_steer_deg) * 0.25
    left = clamp(throttle * (1.0 + diff), -1.0, 1.0)
    right = clamp(throttle * (1.0 - diff), -1.0, 1.0)
    return DriveState((left,) * 3 + (right,) * 3, steer)


def run_autonomy_step(
    state: AutonomyState,
    fix: GpsFix | None,
    heading_deg: float,
    beacon: BeaconObservation | None,
    dt_ms: float,
    params: AutonomyParams = AutonomyParams(),
    nav: tuple[float, float | None] | None = None,
    fresh_fix: bool = True,
) -> tuple[AutonomyState, DriveState]:
    """Advance the traversal state machine one control tick.

    Faults are states, not exceptions. Inactive states command zero drive.
    ``nav`` is an optional precomputed (distance, bearing) for the current
    fix/target pair, so a caller holding a fix across several ticks does not
    redo the spherical math. ``fresh_fix`` marks ticks that carry a new GPS
    sample; the takeover debounce only counts those.
    """
    if not state.active:
        return state, DriveState.stopped()

    if fix is None or fix.quality is FixQuality.NO_FIX or fix.point is None:
        state = replace(state, no_fix_ticks=state.no_fix_ticks + 1)
        if state.no_fix_ticks >= params.no_fix_limit:
            state = replace(state, tag=AutonomyTag.FAULT, fault_reason="gps lost")
        return state, DriveState.stopped()
    if state.no_fix_ticks:
        state = replace(state, no_fix_ticks=0)

    here = fix.point
    target = state.target
    assert target is not None  # guaranteed by the active-state invariant

    if nav is not None:
        distance_m, bearing = nav
    else:
        distance_m = haversine_distance(here, target)
        try:
            bearing = float(initial_bearing(here, target))
        except DegenerateBearingError:
            bearing = None
    bearing_err = 0.0 if bearing is None else angular_difference(heading_deg, bearing)

    if state.tag in (AutonomyTag.ALIGN_HEADING, AutonomyTag.TRAVERSE_GPS):
        # GPS says we are inside the takeover radius: require a short streak
        # of agreeing samples before handing over to the camera
        if distance_m <= params.takeover_radius_m:
            streak = state.takeover_streak + (1 if fresh_fix else 0)
            if streak >= params.takeover_debounce:
                state = replace(
                    state,
                    tag=AutonomyTag.VISION_APPROACH,
                    takeover_streak=0,
                    blind_ticks=0,
                )
                return state, _steered_run(params.approach_throttle, 0.0, params)
            if streak != state.takeover_streak:
                state = replace(state, takeover_streak=streak)
        elif state.takeover_streak and fresh_fix:
            state = replace(state, takeover_streak=0)

    if state.tag is AutonomyTag.ALIGN_HEADING:
        if abs(bearing_err) < params.align_tolerance_deg:
            state = replace(state, tag=AutonomyTag.TRAVERSE_GPS)
            return state, _steered_run(
                params.cruise_throttle, params.steer_gain * bearing_err, params
            )
        return state, _arc_turn(bearing_err, params)

    if state.tag is AutonomyTag.TRAVERSE_GPS:
        if abs(bearing_err) >= params.realign_threshold_deg:
            state = replace(state, tag=AutonomyTag.ALIGN_HEADING)
            return state, _arc_turn(bearing_err, params)
        return state, _steered_run(
            params.cruise_throttle, params.steer_gain * bearing_err, params
        )

    # VisionApproach
    if beacon is None:
        state = replace(state, blind_ticks=state.blind_ticks + 1)
        if state.blind_ticks > params.vision_search_ticks:
            # camera never confirmed: the takeover was premature, go back to GPS
            state = replace(state, tag=AutonomyTag.TRAVERSE_GPS, blind_ticks=0)
            return state, _steered_run(
                params.cruise_throttle, params.steer_gain * bearing_err, params
            )
        # sweep a search circle toward where GPS puts the target
        direction = bearing_err if bearing_err != 0.0 else 1.0
        return state, _arc_turn(direction, params)

    state = replace(state, blind_ticks=0)
    if beacon.range_m <= params.arrival_radius_m:
        next_index = state.current_index + 1
        if next_index >= len(state.waypoints):
            state = replace(state, tag=AutonomyTag.ARRIVED, current_index=next_index)
        else:
            state = replace(
                state,
                tag=AutonomyTag.ALIGN_HEADING,
                current_index=next_index,
                takeover_streak=0,
                blind_ticks=0,
            )
        return state, DriveState.stopped()

    return state, _steered_run(params.approach_throttle, 1.5 * beacon.bearing_deg, params)

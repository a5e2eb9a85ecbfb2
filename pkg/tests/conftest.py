import math

from hypothesis import strategies as st

from roverlink.geodesy import GeoPoint, Heading, destination_point
from roverlink.nmea import FixQuality, GpsFix
from roverlink.protocol import messages as m
from roverlink.sim.scenario import Scenario
from roverlink.sim.world import NoiseModel
from roverlink.telemetry import (
    AutonomyStatus,
    AutonomyTag,
    Orientation,
    SectionId,
    SectionPower,
    TelemetrySnapshot,
)

finite = dict(allow_nan=False, allow_infinity=False)

lats = st.floats(min_value=-90.0, max_value=90.0, **finite)
lons = st.floats(min_value=-179.999999, max_value=180.0, **finite)
geopoints = st.builds(GeoPoint, lats, lons)
headings = st.builds(Heading, st.floats(min_value=-1e6, max_value=1e6, **finite))
unit = st.floats(min_value=-1.0, max_value=1.0, **finite)


def message_strategy():
    steer = st.floats(min_value=-1e3, max_value=1e3, **finite)
    seq = st.integers(min_value=0, max_value=2**31)
    return st.one_of(
        st.builds(m.Drive, throttle=unit, steer_deg=steer, seq=seq),
        st.builds(m.ArmJoint, joint=st.sampled_from(m.ArmJointName), rate=unit, seq=seq),
        st.builds(m.EStop, seq=seq),
        st.builds(m.ClearEStop, seq=seq),
        st.builds(m.SetWaypoints, points=st.lists(geopoints, max_size=8).map(tuple), seq=seq),
        st.builds(m.StartAutonomy, seq=seq),
        st.builds(m.AbortAutonomy, seq=seq),
        st.builds(m.ScienceCommand, action=st.sampled_from(m.ScienceAction), seq=seq),
        st.builds(m.Ack, seq=seq, accepted=st.booleans()),
        st.builds(m.Heartbeat, seq=seq),
        st.builds(m.Telemetry, snapshot=snapshot_strategy()),
    )


def fix_strategy():
    real = st.builds(
        GpsFix,
        point=geopoints,
        utc_time=st.one_of(st.none(), st.floats(min_value=0, max_value=86399.99, **finite)),
        quality=st.sampled_from([FixQuality.FIX, FixQuality.DGPS]),
        satellites=st.integers(min_value=0, max_value=24),
        hdop=st.one_of(st.none(), st.floats(min_value=0.1, max_value=50.0, **finite)),
        altitude_m=st.one_of(st.none(), st.floats(min_value=-400.0, max_value=9000.0, **finite)),
    )
    return st.one_of(st.just(GpsFix.no_fix()), real)


def snapshot_strategy():
    maybe = lambda s: st.one_of(st.none(), s)
    return st.builds(
        TelemetrySnapshot,
        t=st.floats(min_value=0, max_value=1e10, **finite),
        orientation=st.builds(
            Orientation,
            roll_deg=st.floats(min_value=-180, max_value=180, **finite),
            pitch_deg=st.floats(min_value=-90, max_value=90, **finite),
            yaw_deg=st.floats(min_value=0, max_value=359.999, **finite),
        ),
        fix=fix_strategy(),
        autonomy=st.builds(
            AutonomyStatus,
            tag=st.sampled_from(AutonomyTag),
            current_index=st.integers(min_value=0, max_value=64),
            fault_reason=st.one_of(st.none(), st.just("gps lost"), st.just("link lost")),
        ),
        power=st.lists(
            st.builds(
                SectionPower,
                id=st.sampled_from(SectionId),
                bus_v=st.floats(min_value=1, max_value=50, **finite),
                charge_fraction=st.floats(min_value=0, max_value=1, **finite),
                taps_v=st.lists(
                    st.floats(min_value=1, max_value=24, **finite), max_size=3
                ).map(tuple),
            ),
            max_size=3,
        ).map(tuple),
        estopped=st.booleans(),
        arm_overload=st.booleans(),
        camera_ok=st.booleans(),
        co2_ppm=maybe(st.floats(min_value=0, max_value=10000, **finite)),
        co_ppm=maybe(st.floats(min_value=0, max_value=1000, **finite)),
        air_temp_c=maybe(st.floats(min_value=-60, max_value=80, **finite)),
        humidity_pct=maybe(st.floats(min_value=0, max_value=100, **finite)),
        soil_temp_c=maybe(st.floats(min_value=-60, max_value=80, **finite)),
        soil_moisture=maybe(st.floats(min_value=0, max_value=1, **finite)),
    )


COURSE_START = GeoPoint(23.780000, 90.420000)
COURSE_LEGS = [(40.0, 10.0), (90.0, 10.0), (20.0, 10.0), (300.0, 20.0), (250.0, 10.0), (200.0, 12.0)]


def course_waypoints(start: GeoPoint = COURSE_START) -> tuple[GeoPoint, ...]:
    """Six waypoints: three ~10 m legs, one ~20 m leg, two more ~10 m legs."""
    out = []
    p = start
    for bearing, dist in COURSE_LEGS:
        p = destination_point(p, bearing, dist)
        out.append(p)
    return tuple(out)


def course_scenario(gps_radius_m: float = 3.0, compass_sigma_deg: float = 2.0) -> Scenario:
    return Scenario(
        name="six-waypoint-course",
        start=COURSE_START,
        start_heading_deg=0.0,
        waypoints=course_waypoints(),
        noise=NoiseModel(gps_radius_m, compass_sigma_deg),
    )

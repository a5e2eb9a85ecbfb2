import math

import pytest
from hypothesis import given, strategies as st

from roverlink.geodesy import GeoPoint, Heading, angular_difference, haversine_distance
from roverlink.nmea import parse_sentence, to_fix
from roverlink.rover.state import DriveState
from roverlink.sim.world import (
    Beacon,
    NoiseModel,
    RoverBody,
    SimWorld,
    TerrainFeature,
    TerrainKind,
    observe_beacon,
    sample_compass,
    sample_gps,
    step,
    traversable,
    vertical_drop_limit_m,
)

HOME = GeoPoint(23.78, 90.42)


def make_world(seed=1, noise=NoiseModel(0.0, 0.0), heading=0.0, **kw):
    return SimWorld(
        seed=seed,
        rover=RoverBody(pos=HOME, heading=Heading(heading)),
        base_pos=HOME,
        noise=noise,
        **kw,
    )


# --------------------------------------------------------------- kinematics


def test_zero_throttle_holds_pose():
    world = make_world()
    before = (world.rover.pos, float(world.rover.heading))
    step(world, DriveState.stopped(), 50.0)
    assert (world.rover.pos, float(world.rover.heading)) == before
    assert world.t_ms == 50.0


def test_straight_run_ten_meters():
    world = make_world()
    drive = DriveState.straight(1.0, 0.0)
    for _ in range(200):  # 10 s at 1 m/s
        step(world, drive, 50.0)
    travelled = haversine_distance(HOME, world.rover.pos)
    assert travelled == pytest.approx(10.0, abs=1e-6)
    assert float(world.rover.heading) == 0.0


def test_full_steer_closes_a_circle():
    world = make_world()
    drive = DriveState.straight(1.0, 35.0)
    # turn radius L / tan(steer); one revolution takes 2 pi R / v
    radius = world.wheelbase_m / math.tan(math.radians(35.0))
    period_s = 2 * math.pi * radius / world.max_speed_mps
    whole_ticks = int(period_s / 0.05)
    start_heading = float(world.rover.heading)
    for _ in range(whole_ticks):
        step(world, drive, 50.0)
    step(world, drive, (period_s - whole_ticks * 0.05) * 1000.0)  # finish the period
    err = abs(angular_difference(world.rover.heading, start_heading))
    assert err < 1.0
    assert haversine_distance(HOME, world.rover.pos) < 0.3


def test_displacement_bounded_by_max_speed():
    world = make_world()
    drive = DriveState.straight(1.0, 10.0)
    for _ in range(100):
        before = world.rover.pos
        step(world, drive, 50.0)
        moved = haversine_distance(before, world.rover.pos)
        assert moved <= world.max_speed_mps * 0.05 + 1e-6


def test_reverse_throttle_moves_backward():
    world = make_world(heading=0.0)
    step(world, DriveState.straight(-1.0, 0.0), 1000.0)
    assert world.rover.pos.lat < HOME.lat


def test_blocked_by_impassable_feature():
    wall = TerrainFeature(
        kind=TerrainKind.VERTICAL_DROP,
        location=GeoPoint(23.78009, 90.42),  # ~10 m north
        extent_m=3.0,
        angle_deg=90.0,
        height_m=2.0,
    )
    world = make_world(terrain=(wall,))
    drive = DriveState.straight(1.0, 0.0)
    for _ in range(600):
        step(world, drive, 50.0)
    # rover stopped at the boundary instead of passing through
    gap = haversine_distance(world.rover.pos, wall.location)
    assert gap >= 3.0 - 0.06
    assert world.rover.speed_mps == 0.0


def test_passable_feature_does_not_block():
    bump = TerrainFeature(
        kind=TerrainKind.VERTICAL_DROP,
        location=GeoPoint(23.78009, 90.42),
        extent_m=3.0,
        angle_deg=90.0,
        height_m=0.5,
    )
    world = make_world(terrain=(bump,))
    drive = DriveState.straight(1.0, 0.0)
    for _ in range(600):
        step(world, drive, 50.0)
    assert haversine_distance(HOME, world.rover.pos) > 20.0


# ------------------------------------------------------------ traversability


@pytest.mark.parametrize(
    "angle,height,passable",
    [
        (90.0, 0.70, True),
        (90.0, 0.80, False),
        (60.0, 0.45, True),
        (60.0, 0.46, False),
        (30.0, 0.45, True),  # flat extrapolation below the first anchor
        (75.0, 0.575, True),  # midpoint of the interpolated segment
        (75.0, 0.60, False),
    ],
)
def test_vertical_drop_anchors(angle, height, passable):
    feature = TerrainFeature(TerrainKind.VERTICAL_DROP, HOME, 1.0, angle, height)
    assert traversable(feature) is passable


def test_slope_limits():
    assert traversable(TerrainFeature(TerrainKind.SLOPE, HOME, 1.0, 35.0, 1.2)) is True
    assert traversable(TerrainFeature(TerrainKind.SLOPE, HOME, 1.0, 36.0, 0.1)) is False
    assert traversable(TerrainFeature(TerrainKind.SLOPE, HOME, 1.0, 35.0, 1.21)) is False


def test_obstacle_limit():
    assert traversable(TerrainFeature(TerrainKind.OBSTACLE, HOME, 1.0, 90.0, 0.254)) is True
    assert traversable(TerrainFeature(TerrainKind.OBSTACLE, HOME, 1.0, 90.0, 0.3)) is False


@given(
    st.sampled_from(list(TerrainKind)),
    st.floats(min_value=0.01, max_value=90.0, allow_nan=False),
    st.floats(min_value=0.01, max_value=3.0, allow_nan=False),
    st.floats(min_value=0.01, max_value=3.0, allow_nan=False),
)
def test_traversable_monotone_in_height(kind, angle, h1, h2):
    lo, hi = sorted((h1, h2))
    low_f = TerrainFeature(kind, HOME, 1.0, angle, lo)
    high_f = TerrainFeature(kind, HOME, 1.0, angle, hi)
    if traversable(high_f):
        assert traversable(low_f)


def test_drop_limit_interpolation_is_linear():
    assert vertical_drop_limit_m(60.0) == pytest.approx(0.45)
    assert vertical_drop_limit_m(90.0) == pytest.approx(0.70)
    assert vertical_drop_limit_m(75.0) == pytest.approx(0.575)
    assert vertical_drop_limit_m(10.0) == pytest.approx(0.45)


# -------------------------------------------------------------------- noise


def test_gps_zero_noise_matches_truth_to_encoding_resolution():
    world = make_world(noise=NoiseModel(0.0, 0.0))
    fix = to_fix(parse_sentence(sample_gps(world)))
    # 4-decimal minute encoding quantizes to ~0.19 m
    assert haversine_distance(fix.point, world.rover.pos) < 0.2


def test_gps_noise_bounded_and_mean_two_thirds_radius():
    world = make_world(seed=42, noise=NoiseModel(3.0, 0.0))
    offsets = []
    for _ in range(10_000):
        fix = to_fix(parse_sentence(sample_gps(world)))
        offsets.append(haversine_distance(fix.point, world.rover.pos))
    # quantization from the minute encoding adds up to ~0.14 m
    assert max(offsets) <= 3.0 + 0.15
    mean = sum(offsets) / len(offsets)
    assert mean == pytest.approx(2.0, abs=0.1)  # uniform disk: mean = 2r/3


def test_gps_same_seed_identical_stream():
    w1 = make_world(seed=7, noise=NoiseModel(3.0, 2.0))
    w2 = make_world(seed=7, noise=NoiseModel(3.0, 2.0))
    s1 = [sample_gps(w1) for _ in range(100)]
    s2 = [sample_gps(w2) for _ in range(100)]
    assert s1 == s2


def test_compass_zero_sigma_exact():
    world = make_world(heading=123.0)
    assert float(sample_compass(world)) == 123.0


def test_compass_sigma_statistics():
    world = make_world(seed=5, noise=NoiseModel(0.0, 2.0), heading=180.0)
    samples = [float(sample_compass(world)) for _ in range(10_000)]
    assert all(0.0 <= s < 360.0 for s in samples)
    mean = sum(samples) / len(samples)
    var = sum((s - mean) ** 2 for s in samples) / (len(samples) - 1)
    assert math.sqrt(var) == pytest.approx(2.0, abs=0.1)


# ------------------------------------------------------------------ beacons


def beacon_world(beacon_bearing_deg, beacon_range_m, heading=0.0):
    pos = GeoPoint(23.78, 90.42)
    from roverlink.geodesy import destination_point

    beacon_pos = destination_point(pos, beacon_bearing_deg, beacon_range_m)
    return make_world(
        heading=heading,
        beacons=(Beacon(pos=beacon_pos, waypoint_index=0),),
    )


def test_beacon_visible_ahead_within_range():
    world = beacon_world(0.0, 3.4)
    obs = observe_beacon(world, 0)
    assert obs is not None
    assert obs.range_m == pytest.approx(3.4, abs=1e-6)
    assert obs.bearing_deg == pytest.approx(0.0, abs=1e-9)


def test_beacon_out_of_range_absent():
    assert observe_beacon(beacon_world(0.0, 5.0), 0) is None
    assert observe_beacon(beacon_world(0.0, 3.51), 0) is None


def test_beacon_outside_fov_absent():
    world = beacon_world(180.0, 2.0)  # directly behind
    assert observe_beacon(world, 0) is None
    world = beacon_world(83.0, 2.0)  # just outside the 82.5 deg half-angle
    assert observe_beacon(world, 0) is None
    world = beacon_world(82.0, 2.0)  # just inside
    obs = observe_beacon(world, 0)
    assert obs is not None
    assert obs.bearing_deg == pytest.approx(82.0, abs=1e-6)


def test_beacon_only_for_matching_waypoint_index():
    world = beacon_world(0.0, 2.0)
    assert observe_beacon(world, 3) is None

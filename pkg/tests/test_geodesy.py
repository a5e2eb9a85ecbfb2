import math
import random

import pytest
from hypothesis import given, strategies as st

from roverlink.geodesy import (
    DegenerateBearingError,
    EarthModel,
    GeoPoint,
    Heading,
    MEAN_EARTH_RADIUS_M,
    angular_difference,
    destination_point,
    haversine_distance,
    initial_bearing,
    normalize_heading,
)

from conftest import geopoints, headings

R = MEAN_EARTH_RADIUS_M


def vincenty_sphere(a: GeoPoint, b: GeoPoint, radius_m: float = R) -> float:
    """Independent oracle: the atan2 form of the great-circle distance."""
    phi1, phi2 = math.radians(a.lat), math.radians(b.lat)
    dlam = math.radians(b.lon - a.lon)
    y = math.hypot(
        math.cos(phi2) * math.sin(dlam),
        math.cos(phi1) * math.sin(phi2) - math.sin(phi1) * math.cos(phi2) * math.cos(dlam),
    )
    x = math.sin(phi1) * math.sin(phi2) + math.cos(phi1) * math.cos(phi2) * math.cos(dlam)
    return radius_m * math.atan2(y, x)


# ---------------------------------------------------------------- GeoPoint


def test_geopoint_validates_latitude():
    with pytest.raises(ValueError):
        GeoPoint(90.0001, 0.0)
    with pytest.raises(ValueError):
        GeoPoint(float("nan"), 0.0)


def test_geopoint_normalizes_longitude():
    assert GeoPoint(0.0, 540.0).lon == 180.0
    assert GeoPoint(0.0, -180.0).lon == 180.0
    assert GeoPoint(0.0, -540.0).lon == 180.0
    assert GeoPoint(0.0, 180.0).lon == 180.0
    assert GeoPoint(0.0, 181.0).lon == -179.0


@given(geopoints)
def test_geopoint_lon_always_in_range(p):
    assert -180.0 < p.lon <= 180.0


def test_heading_normalizes():
    assert Heading(370.0) == 10.0
    assert Heading(-10.0) == 350.0
    assert Heading(360.0) == 0.0
    assert float(Heading(-1e-16)) in (0.0,)  # modulo rounding lands exactly on 360


@given(st.floats(min_value=-1e9, max_value=1e9, allow_nan=False))
def test_normalize_heading_range(deg):
    assert 0.0 <= normalize_heading(deg) < 360.0


# ---------------------------------------------------------------- distance


def test_distance_identical_points_is_zero():
    p = GeoPoint(23.78, 90.42)
    assert haversine_distance(p, p) == 0.0


def test_distance_one_degree_arc():
    # R * (pi / 180), computed independently from the arc length formula
    expected = R * math.pi / 180.0
    assert haversine_distance(GeoPoint(0, 0), GeoPoint(0, 1)) == pytest.approx(
        expected, rel=1e-12
    )
    assert expected == pytest.approx(111_194.93, abs=0.005)


def test_distance_antipodal_arc():
    expected = math.pi * R  # half circumference
    assert haversine_distance(GeoPoint(0, 0), GeoPoint(0, 180)) == pytest.approx(
        expected, rel=1e-12
    )
    assert expected == pytest.approx(20_015_086.8, abs=0.05)


def test_distance_respects_earth_model():
    small = EarthModel(radius_m=1000.0)
    quarter = haversine_distance(GeoPoint(0, 0), GeoPoint(0, 90), small)
    assert quarter == pytest.approx(1000.0 * math.pi / 2, rel=1e-12)


@given(geopoints, geopoints)
def test_distance_symmetric_exactly(a, b):
    assert haversine_distance(a, b) == haversine_distance(b, a)


@given(geopoints, geopoints, geopoints)
def test_triangle_inequality(a, b, c):
    assert haversine_distance(a, c) <= (
        haversine_distance(a, b) + haversine_distance(b, c) + 1e-6
    )


def test_distance_agrees_with_vincenty_oracle():
    rng = random.Random(20_2408)
    checked = 0
    while checked < 1000:
        a = GeoPoint(rng.uniform(-90, 90), rng.uniform(-180, 180))
        b = GeoPoint(rng.uniform(-90, 90), rng.uniform(-180, 180))
        d = haversine_distance(a, b)
        if d <= 1000.0:
            continue
        assert d == pytest.approx(vincenty_sphere(a, b), rel=1e-9)
        checked += 1


# ----------------------------------------------------------------- bearing


def test_cardinal_bearings():
    o = GeoPoint(0, 0)
    assert float(initial_bearing(o, GeoPoint(1, 0))) == pytest.approx(0.0, abs=1e-12)
    assert float(initial_bearing(o, GeoPoint(0, 1))) == pytest.approx(90.0, abs=1e-12)
    assert float(initial_bearing(o, GeoPoint(-1, 0))) == pytest.approx(180.0, abs=1e-12)
    assert float(initial_bearing(o, GeoPoint(0, -1))) == pytest.approx(270.0, abs=1e-12)


def test_bearing_degenerate_cases():
    p = GeoPoint(10.0, 20.0)
    with pytest.raises(DegenerateBearingError):
        initial_bearing(p, p)
    with pytest.raises(DegenerateBearingError):
        initial_bearing(p, GeoPoint(-10.0, -160.0))  # antipode


@given(geopoints, geopoints)
def test_bearing_in_range_or_degenerate(a, b):
    try:
        bearing = initial_bearing(a, b)
    except DegenerateBearingError:
        return
    assert 0.0 <= float(bearing) < 360.0


# ----------------------------------------------------- destination + round trip


def test_destination_zero_distance():
    origin = GeoPoint(12.5, -33.25)
    assert destination_point(origin, Heading(77.0), 0.0) == origin


def test_destination_rejects_negative_distance():
    with pytest.raises(ValueError):
        destination_point(GeoPoint(0, 0), Heading(0), -1.0)


def test_destination_inverse_of_arc_length():
    d = R * math.pi / 180.0  # exactly one degree of arc
    p = destination_point(GeoPoint(0, 0), Heading(90.0), d)
    assert p.lat == pytest.approx(0.0, abs=1e-6)
    assert p.lon == pytest.approx(1.0, abs=1e-6)


# asin near the poles is ill-conditioned and a bearing from the pole itself
# is meaningless, so the round-trip contract holds away from them
nonpolar_points = st.builds(
    GeoPoint,
    st.floats(min_value=-89.0, max_value=89.0, allow_nan=False, allow_infinity=False),
    st.floats(min_value=-179.999999, max_value=180.0, allow_nan=False, allow_infinity=False),
)


@given(
    nonpolar_points,
    st.floats(min_value=0.0, max_value=359.999, allow_nan=False),
    st.floats(min_value=1.0, max_value=1_000_000.0, allow_nan=False),
)
def test_destination_round_trips_distance_and_bearing(origin, bearing_deg, distance_m):
    target = destination_point(origin, Heading(bearing_deg), distance_m)
    assert haversine_distance(origin, target) == pytest.approx(distance_m, rel=1e-6)
    if abs(target.lat) > 89.99:
        return  # target at a pole: bearing recovery is degenerate there
    recovered = float(initial_bearing(origin, target))
    err = abs(angular_difference(recovered, bearing_deg))
    assert err < 1e-4


# --------------------------------------------------------- angular difference


@pytest.mark.parametrize(
    "current,target,expected",
    [
        (0.0, 90.0, 90.0),
        (350.0, 10.0, 20.0),
        (0.0, 180.0, 180.0),  # tie resolves clockwise
        (180.0, 0.0, 180.0),
        (90.0, 0.0, -90.0),
        (10.0, 350.0, -20.0),
    ],
)
def test_angular_difference_cases(current, target, expected):
    assert angular_difference(current, target) == pytest.approx(expected)


@given(headings, headings)
def test_angular_difference_range_and_composition(current, target):
    diff = angular_difference(current, target)
    assert -180.0 < diff <= 180.0
    recomposed = normalize_heading(float(current) + diff)
    assert abs(angular_difference(recomposed, target)) < 1e-9

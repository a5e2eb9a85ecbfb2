"""Spherical-earth navigation math: distances, bearings, point projection.

Conventions used across the whole stack:

* positions are latitude/longitude in decimal degrees on a sphere,
* headings/bearings are compass degrees in [0, 360), 0 = north, clockwise
  positive (so +90 is east),
* radians never cross an API boundary.

A mean-radius sphere is accurate to ~0.5% of the true geodesic, orders of
magnitude below the GPS error this stack is designed around.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

MEAN_EARTH_RADIUS_M = 6_371_000.0

# Below this value of sin(central angle) two points are treated as coincident
# (or antipodal) and a bearing between them is undefined.
_DEGENERATE_SIN_ANGLE = 1e-12


class DegenerateBearingError(ValueError):
    """Bearing is undefined: endpoints coincident (or antipodal).

    Callers steering a vehicle should hold the current heading instead of
    inventing one.
    """


def normalize_heading(deg: float) -> float:
    """Wrap an angle in degrees into [0, 360)."""
    if not math.isfinite(deg):
        raise ValueError(f"heading must be finite, got {deg!r}")
    wrapped = math.fmod(deg, 360.0)
    if wrapped < 0.0:
        wrapped += 360.0
    if wrapped >= 360.0:  # fmod rounding can land exactly on 360
        wrapped = 0.0
    return wrapped


class Heading(float):
    """Compass heading in degrees, normalized into [0, 360) on construction.

    Behaves as a plain float in arithmetic; construction is the single
    normalization point.
    """

    __slots__ = ()

    def __new__(cls, deg: float = 0.0) -> "Heading":
        return super().__new__(cls, normalize_heading(float(deg)))

    def __repr__(self) -> str:
        return f"Heading({float(self):g})"


@dataclass(frozen=True)
class GeoPoint:
    """A latitude/longitude pair in decimal degrees.

    Latitude must lie in [-90, 90]; longitude is wrapped into (-180, 180]
    on construction.
    """

    lat: float
    lon: float

    def __post_init__(self):
        if not (math.isfinite(self.lat) and math.isfinite(self.lon)):
            raise ValueError(f"coordinates must be finite, got ({self.lat!r}, {self.lon!r})")
        if not -90.0 <= self.lat <= 90.0:
            raise ValueError(f"latitude {self.lat!r} outside [-90, 90]")
        lon = math.fmod(self.lon, 360.0)
        if lon > 180.0:
            lon -= 360.0
        elif lon <= -180.0:
            lon += 360.0
        object.__setattr__(self, "lat", float(self.lat))
        object.__setattr__(self, "lon", float(lon))


@dataclass(frozen=True)
class EarthModel:
    """Sphere radius used for all arc-length conversions."""

    radius_m: float = MEAN_EARTH_RADIUS_M

    def __post_init__(self):
        if not (math.isfinite(self.radius_m) and self.radius_m > 0):
            raise ValueError(f"earth radius must be positive, got {self.radius_m!r}")


MEAN_SPHERE = EarthModel()


_ANTIPODAL_H = 1.0 - 1e-6  # within ~13 km of the antipode


def haversine_distance(a: GeoPoint, b: GeoPoint, earth: EarthModel = MEAN_SPHERE) -> float:
    """Great-circle distance between two points, in meters.

    Haversine form: h = sin^2(dlat/2) + cos(lat1) cos(lat2) sin^2(dlon/2),
    d = 2 R asin(sqrt(h)). Absolute deltas keep the result exactly symmetric
    in its arguments. Near-antipodal pairs, where asin(sqrt(h)) is badly
    conditioned, are evaluated through the complement: pi R minus the (small,
    well-conditioned) distance to the antipode.
    """
    phi1 = math.radians(a.lat)
    phi2 = math.radians(b.lat)
    dphi = math.radians(abs(b.lat - a.lat))
    dlam = math.radians(abs(b.lon - a.lon))
    h = math.sin(dphi / 2.0) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlam / 2.0) ** 2
    if h > _ANTIPODAL_H:
        # canonical argument order keeps the result exactly symmetric
        lo, hi = sorted((a, b), key=lambda p: (p.lat, p.lon))
        antipode = GeoPoint(-hi.lat, hi.lon + 180.0)
        return math.pi * earth.radius_m - haversine_distance(lo, antipode, earth)
    return 2.0 * earth.radius_m * math.asin(min(1.0, math.sqrt(h)))


def initial_bearing(a: GeoPoint, b: GeoPoint) -> Heading:
    """Forward azimuth of the great circle from ``a`` toward ``b``.

    Raises DegenerateBearingError when the points coincide (or are antipodal)
    and no unique bearing exists.
    """
    phi1 = math.radians(a.lat)
    phi2 = math.radians(b.lat)
    dlam = math.radians(b.lon - a.lon)
    y = math.sin(dlam) * math.cos(phi2)
    x = math.cos(phi1) * math.sin(phi2) - math.sin(phi1) * math.cos(phi2) * math.cos(dlam)
    if math.hypot(y, x) < _DEGENERATE_SIN_ANGLE:
        raise DegenerateBearingError(f"no bearing between {a} and {b}")
    return Heading(math.degrees(math.atan2(y, x)))


def destination_point(
    origin: GeoPoint,
    bearing: float,
    distance_m: float,
    earth: EarthModel = MEAN_SPHERE,
) -> GeoPoint:
    """Point reached by traveling ``distance_m`` along the great circle at ``bearing``.

    Inverse of the (haversine_distance, initial_bearing) pair; round-trips
    with them to float precision.
    """
    if distance_m < 0:
        raise ValueError(f"distance must be non-negative, got {distance_m!r}")
    if distance_m == 0.0:
        return origin
    delta = distance_m / earth.radius_m
    theta = math.radians(normalize_heading(float(bearing)))
    phi1 = math.radians(origin.lat)
    lam1 = math.radians(origin.lon)

    sin_phi2 = math.sin(phi1) * math.cos(delta) + math.cos(phi1) * math.sin(delta) * math.cos(theta)
    sin_phi2 = max(-1.0, min(1.0, sin_phi2))
    phi2 = math.asin(sin_phi2)
    lam2 = lam1 + math.atan2(
        math.sin(theta) * math.sin(delta) * math.cos(phi1),
        math.cos(delta) - math.sin(phi1) * sin_phi2,
    )
    return GeoPoint(math.degrees(phi2), math.degrees(lam2))


def angular_difference(current: float, target: float) -> float:
    """Smallest signed rotation from ``current`` to ``target``, in (-180, 180].

    Positive means clockwise (turn right). An exact 180-degree opposition
    resolves to +180 so alignment controllers always get a deterministic
    turn direction.
    """
    diff = (normalize_heading(float(target)) - normalize_heading(float(current))) % 360.0
    if diff > 180.0:
        diff -= 360.0
    return diff + 0.0  # fold -0.0 into 0.0

"""Offline map view: an equirectangular crop plotted onto a pixel canvas.

The view holds a lat/lon bounds rectangle plus the rover trail and the
dispatched waypoints. Projection maps the bounds onto the canvas corners;
a point outside the bounds expands them first, so nothing is ever clipped
off the plot.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..geodesy import GeoPoint

# degenerate (single-point) bounds get this much padding so the projection
# always has a finite scale
_MIN_SPAN_DEG = 1e-6


@dataclass
class MapView:
    north: float
    south: float
    east: float
    west: float
    trail: list[GeoPoint] = field(default_factory=list)
    waypoints: list[GeoPoint] = field(default_factory=list)

    def __post_init__(self):
        if self.north < self.south:
            self.north, self.south = self.south, self.north
        if self.east < self.west:
            self.east, self.west = self.west, self.east

    @classmethod
    def from_corners(cls, a: GeoPoint, b: GeoPoint) -> "MapView":
        return cls(
            north=max(a.lat, b.lat),
            south=min(a.lat, b.lat),
            east=max(a.lon, b.lon),
            west=min(a.lon, b.lon),
        )

    @classmethod
    def fit(cls, points: list[GeoPoint], pad_fraction: float = 0.05) -> "MapView":
        if not points:
            raise ValueError("cannot fit a view to zero points")
        north = max(p.lat for p in points)
        south = min(p.lat for p in points)
        east = max(p.lon for p in points)
        west = min(p.lon for p in points)
        pad_lat = max((north - south) * pad_fraction, _MIN_SPAN_DEG)
        pad_lon = max((east - west) * pad_fraction, _MIN_SPAN_DEG)
        return cls(north + pad_lat, south - pad_lat, east + pad_lon, west - pad_lon)

    def include(self, point: GeoPoint) -> None:
        self.north = max(self.north, point.lat)
        self.south = min(self.south, point.lat)
        self.east = max(self.east, point.lon)
        self.west = min(self.west, point.lon)

    def contains(self, point: GeoPoint) -> bool:
        return self.south <= point.lat <= self.north and self.west <= point.lon <= self.east

    def add_fix(self, point: GeoPoint) -> None:
        self.include(point)
        self.trail.append(point)

    def set_waypoints(self, points: list[GeoPoint]) -> None:
        self.waypoints = list(points)
        for p in points:
            self.include(p)

    @property
    def lat_span(self) -> float:
        return max(self.north - self.south, _MIN_SPAN_DEG)

    @property
    def lon_span(self) -> float:
        return max(self.east - self.west, _MIN_SPAN_DEG)


def project_to_map(
    point: GeoPoint, view: MapView, width: float, height: float
) -> tuple[float, float]:
    """Pixel position of a point; NW corner is (0, 0), SE is (width, height).

    Out-of-bounds points expand the view bounds first.
    """
    if width <= 0 or height <= 0:
        raise ValueError(f"canvas must be positive, got {width!r} x {height!r}")
    if not view.contains(point):
        view.include(point)
    x = (point.lon - view.west) / view.lon_span * width
    y = (view.north - point.lat) / view.lat_span * height
    return x, y


def unproject_from_map(
    x: float, y: float, view: MapView, width: float, height: float
) -> GeoPoint:
    """Inverse of project_to_map for the current bounds."""
    if width <= 0 or height <= 0:
        raise ValueError(f"canvas must be positive, got {width!r} x {height!r}")
    lon = view.west + (x / width) * view.lon_span
    lat = view.north - (y / height) * view.lat_span
    return GeoPoint(lat, lon)

"""Trail exports: an SVG plot of the driven path and a CSV of the fixes.

The CSV uses full-precision floats so re-ingesting it reproduces the trail
exactly.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path

from ..geodesy import GeoPoint
from .mapview import MapView, project_to_map
from .missionlog import EmptyLogError, MissionLog

SVG_WIDTH = 800
SVG_HEIGHT = 600


def trail_to_csv(fixes: list[tuple[float, GeoPoint]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["t_ms", "lat", "lon"])
    for t_ms, point in fixes:
        writer.writerow([repr(float(t_ms)), repr(point.lat), repr(point.lon)])
    return buf.getvalue()


def trail_from_csv(text: str) -> list[tuple[float, GeoPoint]]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != ["t_ms", "lat", "lon"]:
        raise ValueError(f"unexpected CSV header {header!r}")
    return [(float(t), GeoPoint(float(lat), float(lon))) for t, lat, lon in reader]


def trail_to_svg(
    fixes: list[tuple[float, GeoPoint]],
    waypoints: list[GeoPoint],
    width: int = SVG_WIDTH,
    height: int = SVG_HEIGHT,
) -> str:
    view = MapView.fit([p for _, p in fixes] + list(waypoints))
    points = " ".join(
        f"{x:.2f},{y:.2f}"
        for x, y in (project_to_map(p, view, width, height) for _, p in fixes)
    )
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="#10141a"/>',
        f'<polyline fill="none" stroke="#4dd2ff" stroke-width="2" points="{points}"/>',
    ]
    for i, wp in enumerate(waypoints):
        x, y = project_to_map(wp, view, width, height)
        parts.append(
            f'<circle class="waypoint" cx="{x:.2f}" cy="{y:.2f}" r="6" '
            f'fill="none" stroke="#ffb454" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{x + 8:.2f}" y="{y - 8:.2f}" fill="#ffb454" font-size="12">{i + 1}</text>'
        )
    if fixes:
        x0, y0 = project_to_map(fixes[0][1], view, width, height)
        xn, yn = project_to_map(fixes[-1][1], view, width, height)
        parts.append(f'<circle cx="{x0:.2f}" cy="{y0:.2f}" r="4" fill="#7dff8a"/>')
        parts.append(f'<circle cx="{xn:.2f}" cy="{yn:.2f}" r="4" fill="#ff6b6b"/>')
    parts.append("</svg>")
    return "\n".join(parts)


def export_trail(log: MissionLog, width: int = SVG_WIDTH, height: int = SVG_HEIGHT) -> tuple[str, str]:
    """Render the mission log's trail. Returns (svg, csv) documents."""
    fixes = log.fixes()
    if not fixes:
        raise EmptyLogError("no position fixes logged yet")
    waypoints = log.waypoints()
    return trail_to_svg(fixes, waypoints, width, height), trail_to_csv(fixes)


def write_trail_files(log: MissionLog, basepath: str | Path) -> tuple[Path, Path]:
    svg, csv_text = export_trail(log)
    base = Path(basepath)
    svg_path = base.with_suffix(".svg")
    csv_path = base.with_suffix(".csv")
    svg_path.write_text(svg)
    csv_path.write_text(csv_text)
    return svg_path, csv_path

#!/usr/bin/env python3
"""Print the vertical-drop traversability grid (angle x height) and the
slope/obstacle limits the simulator enforces.

    python3 scripts/drop_matrix.py
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from roverlink.geodesy import GeoPoint
from roverlink.sim.world import (
    MAX_OBSTACLE_HEIGHT_M,
    MAX_SLOPE_ANGLE_DEG,
    MAX_SLOPE_HEIGHT_M,
    TerrainFeature,
    TerrainKind,
    traversable,
    vertical_drop_limit_m,
)

HOME = GeoPoint(0.0, 0.0)


def main() -> int:
    heights = [h / 100.0 for h in range(20, 95, 5)]
    angles = list(range(50, 95, 5))

    print("vertical drop: passable (#) vs flip risk (.)  [rows: height m, cols: angle deg]")
    print("      " + " ".join(f"{a:3d}" for a in angles))
    for h in heights:
        row = []
        for a in angles:
            feature = TerrainFeature(TerrainKind.VERTICAL_DROP, HOME, 1.0, float(a), h)
            row.append("  #" if traversable(feature) else "  .")
        print(f"{h:5.2f} " + " ".join(row))

    print("\nlimit line: " + ", ".join(f"{a} deg -> {vertical_drop_limit_m(a):.3f} m" for a in angles))
    print(f"slope limit: {MAX_SLOPE_ANGLE_DEG:.0f} deg at up to {MAX_SLOPE_HEIGHT_M} m")
    print(f"obstacle limit: {MAX_OBSTACLE_HEIGHT_M} m")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

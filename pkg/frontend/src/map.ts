// Map pane: trail, waypoints and the rover marker on a canvas, using the
// shared equirectangular projection. Clicking the canvas appends a pending
// waypoint (dispatched by the app through setWaypoints).

import { Bounds, expand, fitBounds, project, unproject } from "./project.js";
import type { GeoPointWire, SnapshotWire } from "./types.js";

export type OfflineMap = { bounds: Bounds; image: CanvasImageSource | null };

export type MapModel = {
  trail: GeoPointWire[];
  waypoints: GeoPointWire[];
  pending: GeoPointWire[];
  snapshot: SnapshotWire | null;
  offline?: OfflineMap | null;
};

export function mapBounds(model: MapModel): Bounds | null {
  const anchor: GeoPointWire[] = [];
  if (model.snapshot?.fix.point) anchor.push(model.snapshot.fix.point);
  const points = model.trail.concat(model.waypoints, model.pending, anchor);
  if (model.offline != null) {
    // the configured crop anchors the view; points outside expand it
    let bounds = model.offline.bounds;
    for (const p of points) bounds = expand(bounds, p);
    return bounds;
  }
  if (points.length === 0) return null;
  let bounds = fitBounds(points);
  for (const p of points) bounds = expand(bounds, p);
  return bounds;
}

export function drawMap(canvas: HTMLCanvasElement, model: MapModel): Bounds | null {
  const ctx = canvas.getContext("2d");
  if (ctx === null) return null;
  const { width, height } = canvas;
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#10141a";
  ctx.fillRect(0, 0, width, height);

  const bounds = mapBounds(model);
  if (bounds === null) {
    ctx.fillStyle = "#5c6773";
    ctx.font = "13px monospace";
    ctx.fillText("waiting for a fix…", 12, 22);
    return null;
  }

  if (model.offline?.image) {
    const nw = project(
      { lat: model.offline.bounds.north, lon: model.offline.bounds.west },
      bounds, width, height,
    );
    const se = project(
      { lat: model.offline.bounds.south, lon: model.offline.bounds.east },
      bounds, width, height,
    );
    ctx.globalAlpha = 0.55;
    ctx.drawImage(model.offline.image, nw[0], nw[1], se[0] - nw[0], se[1] - nw[1]);
    ctx.globalAlpha = 1.0;
  }

  if (model.trail.length > 1) {
    ctx.strokeStyle = "#4dd2ff";
    ctx.lineWidth = 2;
    ctx.beginPath();
    model.trail.forEach((p, i) => {
      const [x, y] = project(p, bounds, width, height);
      if (i === 0) ctx.moveTo(x, y);
      else ctx.lineTo(x, y);
    });
    ctx.stroke();
  }

  const drawMarker = (p: GeoPointWire, index: number, color: string) => {
    const [x, y] = project(p, bounds, width, height);
    ctx.strokeStyle = color;
    ctx.lineWidth = 2;
    ctx.beginPath();
    ctx.arc(x, y, 6, 0, Math.PI * 2);
    ctx.stroke();
    ctx.fillStyle = color;
    ctx.font = "11px monospace";
    ctx.fillText(String(index + 1), x + 8, y - 8);
  };
  model.waypoints.forEach((p, i) => drawMarker(p, i, "#ffb454"));
  model.pending.forEach((p, i) => drawMarker(p, model.waypoints.length + i, "#b48bff"));

  const fix = model.snapshot?.fix.point;
  if (fix) {
    const [x, y] = project(fix, bounds, width, height);
    const yaw = ((model.snapshot?.orientation.yawDeg ?? 0) * Math.PI) / 180;
    ctx.fillStyle = "#7dff8a";
    ctx.beginPath();
    ctx.arc(x, y, 4, 0, Math.PI * 2);
    ctx.fill();
    ctx.strokeStyle = "#7dff8a";
    ctx.beginPath();
    ctx.moveTo(x, y);
    ctx.lineTo(x + 14 * Math.sin(yaw), y - 14 * Math.cos(yaw));
    ctx.stroke();
  }
  return bounds;
}

export function clickToPoint(
  canvas: HTMLCanvasElement,
  bounds: Bounds,
  clientX: number,
  clientY: number,
): GeoPointWire {
  const rect = canvas.getBoundingClientRect();
  const x = ((clientX - rect.left) / rect.width) * canvas.width;
  const y = ((clientY - rect.top) / rect.height) * canvas.height;
  return unproject(x, y, bounds, canvas.width, canvas.height);
}

// Equirectangular map projection, kept numerically in lock-step with the
// base station's plotting code: NW corner of the bounds maps to (0, 0),
// SE to (width, height), and out-of-bounds points expand the bounds first.

import type { GeoPointWire } from "./types.js";

export type Bounds = { north: number; south: number; east: number; west: number };

const MIN_SPAN_DEG = 1e-6;

export function contains(bounds: Bounds, p: GeoPointWire): boolean {
  return (
    bounds.south <= p.lat && p.lat <= bounds.north && bounds.west <= p.lon && p.lon <= bounds.east
  );
}

export function expand(bounds: Bounds, p: GeoPointWire): Bounds {
  return {
    north: Math.max(bounds.north, p.lat),
    south: Math.min(bounds.south, p.lat),
    east: Math.max(bounds.east, p.lon),
    west: Math.min(bounds.west, p.lon),
  };
}

export function fitBounds(points: GeoPointWire[], padFraction = 0.05): Bounds {
  if (points.length === 0) throw new Error("cannot fit bounds to zero points");
  let bounds: Bounds = {
    north: points[0].lat,
    south: points[0].lat,
    east: points[0].lon,
    west: points[0].lon,
  };
  for (const p of points) bounds = expand(bounds, p);
  const padLat = Math.max((bounds.north - bounds.south) * padFraction, MIN_SPAN_DEG);
  const padLon = Math.max((bounds.east - bounds.west) * padFraction, MIN_SPAN_DEG);
  return {
    north: bounds.north + padLat,
    south: bounds.south - padLat,
    east: bounds.east + padLon,
    west: bounds.west - padLon,
  };
}

function latSpan(bounds: Bounds): number {
  return Math.max(bounds.north - bounds.south, MIN_SPAN_DEG);
}

function lonSpan(bounds: Bounds): number {
  return Math.max(bounds.east - bounds.west, MIN_SPAN_DEG);
}

export function project(
  p: GeoPointWire,
  bounds: Bounds,
  width: number,
  height: number,
): [number, number] {
  const x = ((p.lon - bounds.west) / lonSpan(bounds)) * width;
  const y = ((bounds.north - p.lat) / latSpan(bounds)) * height;
  return [x, y];
}

export function unproject(
  x: number,
  y: number,
  bounds: Bounds,
  width: number,
  height: number,
): GeoPointWire {
  return {
    lat: bounds.north - (y / height) * latSpan(bounds),
    lon: bounds.west + (x / width) * lonSpan(bounds),
  };
}

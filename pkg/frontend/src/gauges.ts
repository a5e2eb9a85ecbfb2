// Sensor gauge model: which dials exist, their spans, and how a snapshot
// maps onto them. Spans default to the sensors' datasheet-style ranges.

import type { SnapshotWire } from "./types.js";

export type GaugeSpec = {
  key: "co2Ppm" | "coPpm" | "airTempC" | "humidityPct" | "soilTempC" | "soilMoisture";
  label: string;
  unit: string;
  min: number;
  max: number;
  decimals: number;
};

export const GAUGES: GaugeSpec[] = [
  { key: "co2Ppm", label: "CO2", unit: "ppm", min: 0, max: 5000, decimals: 0 },
  { key: "coPpm", label: "CO", unit: "ppm", min: 0, max: 1000, decimals: 1 },
  { key: "airTempC", label: "Air temp", unit: "°C", min: -40, max: 85, decimals: 1 },
  { key: "humidityPct", label: "Humidity", unit: "%", min: 0, max: 100, decimals: 0 },
  { key: "soilTempC", label: "Soil temp", unit: "°C", min: -40, max: 85, decimals: 1 },
  { key: "soilMoisture", label: "Soil moisture", unit: "", min: 0, max: 1, decimals: 2 },
];

export type GaugeReading = { spec: GaugeSpec; value: number | null; fraction: number | null };

export function gaugeFraction(spec: GaugeSpec, value: number): number {
  const fraction = (value - spec.min) / (spec.max - spec.min);
  return Math.min(1, Math.max(0, fraction));
}

export function gaugeReadings(snapshot: SnapshotWire | null): GaugeReading[] {
  return GAUGES.map((spec) => {
    const value = snapshot !== null ? snapshot[spec.key] : null;
    return {
      spec,
      value,
      fraction: value !== null ? gaugeFraction(spec, value) : null,
    };
  });
}

export function formatValue(reading: GaugeReading): string {
  if (reading.value === null) return "--";
  return reading.value.toFixed(reading.spec.decimals);
}

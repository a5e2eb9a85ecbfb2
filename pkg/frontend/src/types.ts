// Wire types mirrored from the base station bridge's JSON events.

export type GeoPointWire = { lat: number; lon: number };

export type OrientationWire = { rollDeg: number; pitchDeg: number; yawDeg: number };

export type FixWire = {
  point: GeoPointWire | null;
  utcTime: number | null;
  quality: "noFix" | "fix" | "dgps";
  satellites: number;
  hdop: number | null;
  altitudeM: number | null;
};

export type AutonomyWire = {
  tag: "idle" | "alignHeading" | "traverseGps" | "visionApproach" | "arrived" | "fault";
  currentIndex: number;
  faultReason: string | null;
};

export type PowerWire = {
  id: "drive" | "compute" | "comms";
  busV: number;
  chargeFraction: number;
  tapsV: number[];
};

export type SnapshotWire = {
  t: number;
  orientation: OrientationWire;
  fix: FixWire;
  autonomy: AutonomyWire;
  power: PowerWire[];
  estopped: boolean;
  armOverload: boolean;
  cameraOk: boolean;
  co2Ppm: number | null;
  coPpm: number | null;
  airTempC: number | null;
  humidityPct: number | null;
  soilTempC: number | null;
  soilMoisture: number | null;
};

export type LogRecordWire = { tMs: number; kind: string; data: Record<string, unknown> };

export type ConsoleEvent =
  | { type: "hello"; connected: boolean; snapshot: SnapshotWire | null; log: LogRecordWire[] }
  | { type: "telemetry"; snapshot: SnapshotWire }
  | { type: "status"; connected: boolean }
  | { type: "ack"; seq: number; accepted: boolean }
  | { type: "log"; records: LogRecordWire[] }
  | { type: "sent"; command: string | null; seq: number | null }
  | { type: "rejected"; command: string | null; reason: string };

export type CommandEvent =
  | { type: "drive"; throttle: number; steerDeg: number }
  | { type: "armJoint"; joint: string; rate: number }
  | { type: "estop" }
  | { type: "clearEstop" }
  | { type: "setWaypoints"; points: GeoPointWire[] }
  | { type: "startAutonomy" }
  | { type: "abortAutonomy" }
  | { type: "scienceCommand"; action: string };

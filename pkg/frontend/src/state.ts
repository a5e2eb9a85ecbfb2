// Console state: a pure fold over the bridge's event stream. The UI renders
// from this and only this, so replaying a recorded stream reproduces every
// displayed value.

import type { ConsoleEvent, GeoPointWire, LogRecordWire, SnapshotWire } from "./types.js";

export type Toast = { kind: "ack" | "rejected"; text: string };

export type ConsoleState = {
  connected: boolean;
  snapshot: SnapshotWire | null;
  estopped: boolean;
  trail: GeoPointWire[];
  waypoints: GeoPointWire[];
  log: LogRecordWire[];
  toasts: Toast[];
};

export const LOG_LIMIT = 200;
export const TRAIL_LIMIT = 5000;
const TOAST_LIMIT = 4;

export function initialState(): ConsoleState {
  return {
    connected: false,
    snapshot: null,
    estopped: false,
    trail: [],
    waypoints: [],
    log: [],
    toasts: [],
  };
}

function pushLog(log: LogRecordWire[], records: LogRecordWire[]): LogRecordWire[] {
  const merged = log.concat(records);
  return merged.length > LOG_LIMIT ? merged.slice(merged.length - LOG_LIMIT) : merged;
}

function waypointsFromLog(records: LogRecordWire[], current: GeoPointWire[]): GeoPointWire[] {
  let latest: GeoPointWire[] | null = null;
  for (const record of records) {
    if (record.kind === "command" && record.data["type"] === "setWaypoints") {
      latest = (record.data["points"] as GeoPointWire[]) ?? [];
    }
  }
  return latest ?? current;
}

function applySnapshot(state: ConsoleState, snapshot: SnapshotWire): ConsoleState {
  const trail =
    snapshot.fix.point !== null ? state.trail.concat([snapshot.fix.point]) : state.trail;
  return {
    ...state,
    snapshot,
    estopped: snapshot.estopped,
    trail: trail.length > TRAIL_LIMIT ? trail.slice(trail.length - TRAIL_LIMIT) : trail,
  };
}

export function reduce(state: ConsoleState, event: ConsoleEvent): ConsoleState {
  switch (event.type) {
    case "hello": {
      let next: ConsoleState = {
        ...initialState(),
        connected: event.connected,
        log: pushLog([], event.log),
      };
      next = { ...next, waypoints: waypointsFromLog(event.log, []) };
      return event.snapshot !== null ? applySnapshot(next, event.snapshot) : next;
    }
    case "telemetry":
      return applySnapshot(state, event.snapshot);
    case "status":
      return { ...state, connected: event.connected };
    case "ack": {
      if (event.accepted) return state;
      const toast: Toast = { kind: "ack", text: `command ${event.seq} refused by rover` };
      return { ...state, toasts: state.toasts.concat([toast]).slice(-TOAST_LIMIT) };
    }
    case "rejected": {
      const toast: Toast = {
        kind: "rejected",
        text: `${event.command ?? "command"}: ${event.reason}`,
      };
      return { ...state, toasts: state.toasts.concat([toast]).slice(-TOAST_LIMIT) };
    }
    case "log": {
      const log = pushLog(state.log, event.records);
      return { ...state, log, waypoints: waypointsFromLog(event.records, state.waypoints) };
    }
    case "sent":
      return state;
    default:
      return state;
  }
}

// Motion controls are live only when the feed is up and the e-stop latch is
// clear; everything except reconnect goes dark when disconnected.
export function motionAllowed(state: ConsoleState): boolean {
  return state.connected && !state.estopped;
}

export function staleness(state: ConsoleState, nowMs: number): number | null {
  if (state.snapshot === null) return null;
  return nowMs - state.snapshot.t;
}

// Console wiring: socket -> reducer -> render. The bridge owns all mission
// state; this file only reflects it and forwards operator intent.

import { formatValue, gaugeReadings } from "./gauges.js";
import { DRIVE_PERIOD_MS, TeleopScheduler } from "./keys.js";
import { Bounds } from "./project.js";
import { clickToPoint, drawMap, OfflineMap } from "./map.js";
import { LiveSocket } from "./socket.js";
import { ConsoleState, initialState, motionAllowed, reduce } from "./state.js";
import type { CommandEvent, GeoPointWire } from "./types.js";

let state: ConsoleState = initialState();
let pendingWaypoints: GeoPointWire[] = [];
let lastBounds: Bounds | null = null;
let offlineMap: OfflineMap | null = null;

async function loadOfflineMap(): Promise<void> {
  try {
    const info = (await (await fetch("/map")).json()) as
      | { imageUrl: string; bounds: Bounds }
      | Record<string, never>;
    if (!("imageUrl" in info)) return;
    const image = new Image();
    image.onload = () => {
      offlineMap = { bounds: info.bounds, image };
      render();
    };
    image.src = info.imageUrl;
    offlineMap = { bounds: info.bounds, image: null }; // anchor bounds immediately
  } catch {
    // no offline map configured
  }
}

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (el === null) throw new Error(`missing element #${id}`);
  return el as T;
};

const socket = new LiveSocket(
  `ws://${location.host}/live`,
  (event) => {
    state = reduce(state, event);
    render();
  },
  (up) => {
    if (!up) {
      state = { ...state, connected: false };
      pendingWaypoints = [];
    }
    render();
  },
);

function sendCommand(event: CommandEvent): void {
  if (!state.connected) return; // no commands while the feed is down
  socket.send(event);
}

const teleop = new TeleopScheduler(sendCommand, () => motionAllowed(state));

// ------------------------------------------------------------------ render

function render(): void {
  const connected = state.connected;
  const snap = state.snapshot;

  const banner = $("banner");
  banner.className = connected ? "banner ok" : "banner bad";
  banner.textContent = connected
    ? state.estopped
      ? "CONNECTED — E-STOP LATCHED"
      : "CONNECTED"
    : "DISCONNECTED — controls locked, waiting for the bridge";

  for (const button of document.querySelectorAll<HTMLButtonElement>("button[data-needs-link]")) {
    button.disabled = !connected;
  }
  for (const button of document.querySelectorAll<HTMLButtonElement>("button[data-motion]")) {
    button.disabled = !motionAllowed(state);
  }
  $<HTMLButtonElement>("btn-clear-estop").disabled = !connected || !state.estopped;

  // gauges
  const gaugePane = $("gauges");
  for (const reading of gaugeReadings(snap)) {
    const cell = gaugePane.querySelector(`[data-gauge="${reading.spec.key}"]`);
    if (cell === null) continue;
    const needle = cell.querySelector<HTMLElement>(".needle");
    const value = cell.querySelector<HTMLElement>(".value");
    if (needle !== null) {
      const fraction = reading.fraction ?? 0;
      needle.style.transform = `rotate(${-120 + fraction * 240}deg)`;
      needle.style.opacity = reading.value === null ? "0.15" : "1";
    }
    if (value !== null) {
      value.textContent = `${formatValue(reading)} ${reading.spec.unit}`.trim();
    }
  }

  // attitude indicator
  const horizon = $("horizon-disc");
  const roll = snap?.orientation.rollDeg ?? 0;
  const pitch = snap?.orientation.pitchDeg ?? 0;
  horizon.style.transform = `translateY(${pitch * 1.6}px) rotate(${-roll}deg)`;
  $("attitude-text").textContent = snap
    ? `roll ${roll.toFixed(1)}°  pitch ${pitch.toFixed(1)}°  yaw ${snap.orientation.yawDeg.toFixed(1)}°`
    : "roll --  pitch --  yaw --";

  // autonomy + fix badges
  const autonomy = $("autonomy-badge");
  autonomy.textContent = snap
    ? `${snap.autonomy.tag} [wp ${snap.autonomy.currentIndex}]` +
      (snap.autonomy.faultReason ? ` — ${snap.autonomy.faultReason}` : "")
    : "no telemetry";
  autonomy.className = `badge ${snap?.autonomy.tag ?? "none"}`;
  const fix = snap?.fix;
  $("fix-badge").textContent = fix
    ? `${fix.quality} · ${fix.satellites} sats` +
      (fix.point ? ` · ${fix.point.lat.toFixed(6)}, ${fix.point.lon.toFixed(6)}` : "")
    : "no fix";
  const camera = $("camera-badge");
  camera.textContent = snap ? (snap.cameraOk ? "cam ok" : "cam FAULT") : "cam --";
  camera.className = `badge ${snap ? (snap.cameraOk ? "arrived" : "fault") : "none"}`;

  // power bars
  const power = $("power");
  for (const section of snap?.power ?? []) {
    const bar = power.querySelector<HTMLElement>(`[data-section="${section.id}"] .bar-fill`);
    const label = power.querySelector<HTMLElement>(`[data-section="${section.id}"] .bar-label`);
    if (bar !== null) bar.style.width = `${(section.chargeFraction * 100).toFixed(1)}%`;
    if (label !== null) {
      label.textContent =
        `${section.id} ${section.busV.toFixed(1)} V ` +
        `${(section.chargeFraction * 100).toFixed(0)}%` +
        (section.tapsV.length ? ` (taps ${section.tapsV.join("/")} V)` : "");
    }
  }

  // map
  lastBounds = drawMap($<HTMLCanvasElement>("map"), {
    trail: state.trail,
    waypoints: state.waypoints,
    pending: pendingWaypoints,
    snapshot: snap,
    offline: offlineMap,
  });
  $("pending-count").textContent = pendingWaypoints.length
    ? `${pendingWaypoints.length} pending waypoint(s) — dispatch to send`
    : "click the map to add waypoints";

  // toasts + log tail
  $("toasts").innerHTML = state.toasts
    .map((toast) => `<div class="toast ${toast.kind}">${toast.text}</div>`)
    .join("");
  $("log").textContent = state.log
    .slice(-12)
    .map((r) => `${(r.tMs / 1000).toFixed(1)}s ${r.kind} ${JSON.stringify(r.data)}`)
    .join("\n");
}

// --------------------------------------------------------------- controls

function wire(): void {
  $("btn-estop").onclick = () => sendCommand({ type: "estop" });
  $("btn-clear-estop").onclick = () => sendCommand({ type: "clearEstop" });
  $("btn-start").onclick = () => sendCommand({ type: "startAutonomy" });
  $("btn-abort").onclick = () => sendCommand({ type: "abortAutonomy" });
  $("btn-dispatch").onclick = () => {
    if (pendingWaypoints.length === 0) return;
    sendCommand({ type: "setWaypoints", points: pendingWaypoints });
    pendingWaypoints = [];
    render();
  };
  $("btn-clear-pending").onclick = () => {
    pendingWaypoints = [];
    render();
  };

  const map = $<HTMLCanvasElement>("map");
  map.onclick = (event) => {
    if (lastBounds === null || !state.connected) return;
    pendingWaypoints = pendingWaypoints.concat([
      clickToPoint(map, lastBounds, event.clientX, event.clientY),
    ]);
    render();
  };

  window.addEventListener("keydown", (event) => {
    if (event.repeat) return;
    const key = event.key.toLowerCase();
    if (key === " ") {
      sendCommand({ type: "estop" });
      event.preventDefault();
      return;
    }
    teleop.keyDown(key);
  });
  window.addEventListener("keyup", (event) => teleop.keyUp(event.key.toLowerCase()));
  window.addEventListener("blur", () => teleop.releaseAll());

  setInterval(() => teleop.tick(), DRIVE_PERIOD_MS);
}

document.addEventListener("DOMContentLoaded", () => {
  wire();
  render();
  void loadOfflineMap();
  socket.connect();
});

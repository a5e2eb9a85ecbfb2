// Keyboard teleop with deadman semantics, mirroring the CLI mapping:
// W/S throttle, A/D full-deflection steering, no keys held = zero command.
// Drive events go out at 10 Hz while driving is allowed; nothing is ever
// emitted while the feed is disconnected or the e-stop latch is set.

import type { CommandEvent } from "./types.js";

export const MAX_STEER_DEG = 35.0;
export const DRIVE_PERIOD_MS = 100;

export function driveFromKeys(pressed: ReadonlySet<string>, maxSteer = MAX_STEER_DEG): CommandEvent {
  const throttle = (pressed.has("w") ? 1 : 0) - (pressed.has("s") ? 1 : 0);
  const steer = (pressed.has("d") ? maxSteer : 0) - (pressed.has("a") ? maxSteer : 0);
  return { type: "drive", throttle, steerDeg: steer };
}

export class TeleopScheduler {
  private pressed = new Set<string>();

  constructor(
    private send: (event: CommandEvent) => void,
    private allowed: () => boolean,
  ) {}

  keyDown(key: string): void {
    if ("wasd".includes(key)) this.pressed.add(key);
  }

  keyUp(key: string): void {
    this.pressed.delete(key);
  }

  releaseAll(): void {
    this.pressed.clear();
  }

  get held(): ReadonlySet<string> {
    return this.pressed;
  }

  // called every DRIVE_PERIOD_MS by the app's interval timer
  tick(): void {
    if (!this.allowed()) return;
    this.send(driveFromKeys(this.pressed));
  }
}

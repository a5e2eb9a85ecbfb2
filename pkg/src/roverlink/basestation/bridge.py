"""Live-state bridge between the control session and the web console.

The bridge is the single source of truth the console renders from: latest
telemetry snapshot, connection status, recent log records and ack results
flow out as JSON events; console-originated commands flow back in through
the same sequence-numbered send path as keyboard input.

The console mirrors the rover's e-stop latch: motion commands arriving
while the latch is set are rejected here, exactly as the rover would
reject them, so the operator sees the refusal even with the link down.
"""

from __future__ import annotations

import queue
import threading
from typing import Callable

from ..protocol.messages import (
    AbortAutonomy,
    Ack,
    ArmJoint,
    ArmJointName,
    ClearEStop,
    Drive,
    EStop,
    Message,
    ScienceAction,
    ScienceCommand,
    SetWaypoints,
    StartAutonomy,
)
from ..geodesy import GeoPoint
from ..protocol.session import SessionDeadError
from ..protocol.wire import to_wire
from ..telemetry import TelemetrySnapshot
from .missionlog import MissionLog

LOG_TAIL_LEN = 50

_MOTION_TYPES = {"drive", "armJoint", "startAutonomy"}


class ConsoleBridge:
    def __init__(
        self,
        send_command: Callable[[Message], Message] | None = None,
        log: MissionLog | None = None,
    ):
        self._send_command = send_command
        self._log = log
        self._lock = threading.Lock()
        self._subscribers: list[queue.SimpleQueue] = []
        self._latest: TelemetrySnapshot | None = None
        self._connected = False
        self._estopped_mirror = False

    # ------------------------------------------------------------ feed side

    def subscribe(self) -> queue.SimpleQueue:
        q: queue.SimpleQueue = queue.SimpleQueue()
        with self._lock:
            self._subscribers.append(q)
            q.put(self._hello_locked())
        return q

    def unsubscribe(self, q: queue.SimpleQueue) -> None:
        with self._lock:
            if q in self._subscribers:
                self._subscribers.remove(q)

    def _push_locked(self, event: dict) -> None:
        for q in self._subscribers:
            q.put(event)

    def _hello_locked(self) -> dict:
        return {
            "type": "hello",
            "connected": self._connected,
            "snapshot": to_wire(self._latest) if self._latest is not None else None,
            "log": [
                {"tMs": r.t_ms, "kind": r.kind, "data": r.data}
                for r in (self._log.tail(LOG_TAIL_LEN) if self._log else [])
            ],
        }

    def on_telemetry(self, snapshot: TelemetrySnapshot) -> None:
        with self._lock:
            self._latest = snapshot
            self._estopped_mirror = snapshot.estopped
            self._push_locked({"type": "telemetry", "snapshot": to_wire(snapshot)})

    def on_ack(self, ack: Ack) -> None:
        with self._lock:
            self._push_locked({"type": "ack", "seq": ack.seq, "accepted": ack.accepted})

    def set_connected(self, connected: bool) -> None:
        with self._lock:
            if connected == self._connected:
                return
            self._connected = connected
            self._push_locked({"type": "status", "connected": connected})

    def on_log_record(self, record) -> None:
        with self._lock:
            self._push_locked(
                {"type": "log", "records": [{"tMs": record.t_ms, "kind": record.kind, "data": record.data}]}
            )

    @property
    def connected(self) -> bool:
        return self._connected

    @property
    def latest(self) -> TelemetrySnapshot | None:
        return self._latest

    # --------------------------------------------------------- command side

    def handle_console_command(self, event: dict) -> dict:
        """Validate and forward one console command event.

        Returns (and pushes) the outcome event: ``sent`` with the assigned
        sequence number, or ``rejected`` with a reason.
        """
        if not isinstance(event, dict):
            return self._reject(None, "command must be a JSON object")
        kind = event.get("type")
        try:
            msg = self._to_message(event)
        except (ValueError, TypeError, KeyError) as exc:
            return self._reject(kind, f"bad command: {exc}")

        if msg is None:
            return self._reject(kind, f"unknown command type {kind!r}")

        with self._lock:
            connected = self._connected
            estopped = self._estopped_mirror
        if not connected:
            return self._reject(kind, "not connected to the rover")
        if estopped and self._is_motion(event):
            return self._reject(kind, "e-stop latch is set")
        if self._send_command is None:
            return self._reject(kind, "no control session attached")
        try:
            sent = self._send_command(msg)
        except SessionDeadError:
            self.set_connected(False)
            return self._reject(kind, "control session died")
        seq = getattr(sent, "seq", None)
        outcome = {"type": "sent", "command": kind, "seq": seq}
        with self._lock:
            self._push_locked(outcome)
        return outcome

    @staticmethod
    def _is_motion(event: dict) -> bool:
        kind = event.get("type")
        if kind in _MOTION_TYPES:
            return True
        return kind == "scienceCommand" and event.get("action") != "readSensors"

    def _reject(self, kind, reason: str) -> dict:
        outcome = {"type": "rejected", "command": kind, "reason": reason}
        with self._lock:
            self._push_locked(outcome)
        return outcome

    @staticmethod
    def _to_message(event: dict) -> Message | None:
        kind = event.get("type")
        if kind == "drive":
            return Drive(throttle=float(event["throttle"]), steer_deg=float(event["steerDeg"]))
        if kind == "armJoint":
            return ArmJoint(joint=ArmJointName(event["joint"]), rate=float(event["rate"]))
        if kind == "estop":
            return EStop()
        if kind == "clearEstop":
            return ClearEStop()
        if kind == "setWaypoints":
            points = tuple(GeoPoint(float(p["lat"]), float(p["lon"])) for p in event["points"])
            return SetWaypoints(points=points)
        if kind == "startAutonomy":
            return StartAutonomy()
        if kind == "abortAutonomy":
            return AbortAutonomy()
        if kind == "scienceCommand":
            return ScienceCommand(action=ScienceAction(event["action"]))
        return None

"""Operator-side service: control client, telemetry intake, log, bridge.

Three cooperating inputs (control session, telemetry channel, console
commands) serialize through one pump loop. Telemetry is never blocked by
logging: the channel itself is latest-wins, the log write happens after the
live feed update.
"""

from __future__ import annotations

import socket
import time
from pathlib import Path

from ..clock import SystemClock
from ..protocol.messages import Ack, Message, message_to_dict
from ..protocol.net import SocketTransport, TelemetryReceiver
from ..protocol.session import ControlSession, SessionDeadError, SessionRole
from ..protocol.wire import to_wire
from .bridge import ConsoleBridge
from .keyboard import COMMAND_PERIOD_MS, drive_command_from_keys
from .mapview import MapView
from .missionlog import MissionLog


class BasestationApp:
    def __init__(
        self,
        rover_host: str,
        rover_port: int = 7401,
        telemetry_port: int = 7402,
        log_dir: str | Path | None = None,
        map_bounds: tuple[float, float, float, float] | None = None,
        clock=None,
    ):
        self.rover_addr = (rover_host, rover_port)
        self.clock = clock or SystemClock()
        log_path = None
        if log_dir is not None:
            log_dir = Path(log_dir)
            log_dir.mkdir(parents=True, exist_ok=True)
            log_path = log_dir / f"mission-{int(time.time())}.jsonl"
        self.log = MissionLog(clock=self.clock, path=log_path)
        self.bridge = ConsoleBridge(send_command=self.send_command, log=self.log)
        self.telemetry = TelemetryReceiver(port=telemetry_port)
        self.session: ControlSession | None = None
        self.view = None
        if map_bounds is not None:
            lat1, lon1, lat2, lon2 = map_bounds
            self.view = MapView(
                north=max(lat1, lat2),
                south=min(lat1, lat2),
                east=max(lon1, lon2),
                west=min(lon1, lon2),
            )
        self.pressed_keys: set[str] = set()
        self._next_drive_ms = 0.0

    # ------------------------------------------------------------- plumbing

    def connect(self, timeout_s: float = 5.0) -> None:
        sock = socket.create_connection(self.rover_addr, timeout=timeout_s)
        self.session = ControlSession(SessionRole.CLIENT, SocketTransport(sock), self.clock)
        self.bridge.set_connected(True)
        self.log.append("event", {"type": "connected", "rover": f"{self.rover_addr[0]}:{self.rover_addr[1]}"})

    def send_command(self, msg: Message) -> Message:
        """Single forwarding point for keyboard and console commands."""
        if self.session is None or not self.session.alive:
            raise SessionDeadError("no live control session")
        sent = self.session.send(msg)
        record = self.log.append("command", message_to_dict(sent))
        self.bridge.on_log_record(record)
        return sent

    def pump_once(self) -> None:
        now = self.clock.now_ms()

        if self.session is not None:
            for msg in self.session.poll():
                if isinstance(msg, Ack):
                    self.bridge.on_ack(msg)
                    self.log.append("ack", message_to_dict(msg))
            if not self.session.alive and self.bridge.connected:
                self.bridge.set_connected(False)
                self.log.append(
                    "event",
                    {"type": "disconnected", "reason": self.session.death_reason.value},
                )

        snapshot = self.telemetry.poll()
        if snapshot is not None:
            self.bridge.on_telemetry(snapshot)  # live feed first, log second
            if self.view is not None and snapshot.fix.point is not None:
                self.view.add_fix(snapshot.fix.point)
            self.log.append("telemetry", to_wire(snapshot))

        if self.session is not None and self.session.alive and now >= self._next_drive_ms:
            self._next_drive_ms = now + COMMAND_PERIOD_MS
            try:
                self.send_command(drive_command_from_keys(self.pressed_keys))
            except SessionDeadError:
                pass

    def run(self, stop_event, period_s: float = 0.02) -> None:
        while not stop_event.is_set():
            self.pump_once()
            time.sleep(period_s)

    def close(self) -> None:
        if self.session is not None:
            self.session.close()
        self.telemetry.close()
        self.log.close()

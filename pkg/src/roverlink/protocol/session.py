"""Control session over a reliable byte stream.

The base station is the client, the rover the server. Both ends emit a
heartbeat every ``heartbeat_interval_ms`` and declare the session dead when
nothing at all arrives for ``watchdog_ms``. The session is sans-IO: callers
pump it with ``poll()`` and it never sleeps, so every timing test runs on a
manual clock.

Sequence rules: control messages get a monotonically increasing per-session
sequence number assigned here, at the single send point. The server side
drops stale (out-of-order) control messages and answers them with a
rejecting Ack.
"""

from __future__ import annotations

import threading
from collections import deque
from dataclasses import replace
from enum import Enum

from .framing import CorruptPayload, StreamDecoder, encode_frame
from .messages import Ack, Heartbeat, Message, is_control

DEFAULT_HEARTBEAT_INTERVAL_MS = 500.0
DEFAULT_WATCHDOG_MS = 2000.0


class SessionRole(Enum):
    CLIENT = "client"
    SERVER = "server"


class SessionDeath(Enum):
    PEER_GONE = "peerGone"
    HEARTBEAT_TIMEOUT = "heartbeatTimeout"
    PROTOCOL_ERROR = "protocolError"


class SessionDeadError(RuntimeError):
    """Raised when sending on a session that has already died."""


class TransportClosed(Exception):
    """The underlying byte stream is gone."""


class MemoryTransport:
    """In-process reliable pipe endpoint; see ``memory_pipe()``."""

    def __init__(self):
        self._inbox: deque[bytes] = deque()
        self.peer: "MemoryTransport | None" = None
        self.closed = False

    def write(self, data: bytes) -> None:
        if self.closed:
            raise TransportClosed("local end closed")
        peer = self.peer
        if peer is None or peer.closed:
            raise TransportClosed("peer end closed")
        peer._inbox.append(bytes(data))

    def read(self) -> bytes:
        if self._inbox:
            return self._inbox.popleft()
        if self.closed or self.peer is None or self.peer.closed:
            raise TransportClosed("stream closed")
        return b""

    def close(self) -> None:
        self.closed = True


def memory_pipe() -> tuple[MemoryTransport, MemoryTransport]:
    a, b = MemoryTransport(), MemoryTransport()
    a.peer, b.peer = b, a
    return a, b


class ControlSession:
    """One end of the TCP control channel."""

    def __init__(
        self,
        role: SessionRole,
        transport,
        clock,
        heartbeat_interval_ms: float = DEFAULT_HEARTBEAT_INTERVAL_MS,
        watchdog_ms: float = DEFAULT_WATCHDOG_MS,
    ):
        self.role = role
        self.transport = transport
        self.clock = clock
        self.heartbeat_interval_ms = float(heartbeat_interval_ms)
        self.watchdog_ms = float(watchdog_ms)
        self._decoder = StreamDecoder()
        self._send_lock = threading.Lock()
        now = clock.now_ms()
        self._last_rx_ms = now
        self._last_tx_ms = now
        self._next_ctrl_seq = 1
        self._last_peer_ctrl_seq = 0
        self._hb_seq = 0
        self._alive = True
        self._death: SessionDeath | None = None

    @property
    def alive(self) -> bool:
        return self._alive

    @property
    def death_reason(self) -> SessionDeath | None:
        return self._death

    def send(self, msg: Message) -> Message:
        """Frame and write one message; returns it with any assigned seq.

        Safe to call from multiple threads; per-caller order only.
        """
        with self._send_lock:
            if not self._alive:
                raise SessionDeadError(f"session dead: {self._death}")
            if is_control(msg):
                msg = replace(msg, seq=self._next_ctrl_seq)
                self._next_ctrl_seq += 1
            try:
                self.transport.write(encode_frame(msg))
            except TransportClosed:
                self._die(SessionDeath.PEER_GONE)
                raise SessionDeadError("peer gone") from None
            self._last_tx_ms = self.clock.now_ms()
            return msg

    def poll(self) -> list[Message]:
        """Pump I/O once: drain inbound bytes, run heartbeat + watchdog.

        Returns newly received application messages (heartbeats are consumed
        internally). A dead session polls to an empty list.
        """
        if not self._alive:
            return []
        now = self.clock.now_ms()
        delivered: list[Message] = []

        closed = False
        while True:
            try:
                data = self.transport.read()
            except TransportClosed:
                closed = True
                break
            if not data:
                break
            try:
                msgs = self._decoder.feed(data)
            except CorruptPayload:
                self._die(SessionDeath.PROTOCOL_ERROR)
                return delivered
            for msg in msgs:
                self._last_rx_ms = now
                if isinstance(msg, Heartbeat):
                    continue
                if is_control(msg) and self.role is SessionRole.SERVER:
                    if msg.seq <= self._last_peer_ctrl_seq:
                        # stale command from a reordered burst: drop + nack
                        self._try_send(Ack(seq=msg.seq, accepted=False))
                        continue
                    self._last_peer_ctrl_seq = msg.seq
                delivered.append(msg)

        if closed:
            self._die(SessionDeath.PEER_GONE)
            return delivered

        if now - self._last_tx_ms >= self.heartbeat_interval_ms:
            self._hb_seq += 1
            self._try_send(Heartbeat(seq=self._hb_seq))

        if now - self._last_rx_ms > self.watchdog_ms:
            self._die(SessionDeath.HEARTBEAT_TIMEOUT)

        return delivered

    def close(self) -> None:
        if self._alive:
            self._die(SessionDeath.PEER_GONE)

    def _try_send(self, msg: Message) -> None:
        try:
            self.transport.write(encode_frame(msg))
            self._last_tx_ms = self.clock.now_ms()
        except TransportClosed:
            self._die(SessionDeath.PEER_GONE)

    def _die(self, reason: SessionDeath) -> None:
        if not self._alive:
            return
        self._alive = False
        self._death = reason
        try:
            self.transport.close()
        except Exception:
            pass

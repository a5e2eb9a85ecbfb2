"""Socket adapters: TCP transport for control, UDP channel for telemetry.

The telemetry channel is connectionless and latest-wins: one frame per
datagram, and the receiver keeps only the newest decodable snapshot, so a
lost or stale datagram is simply skipped.
"""

from __future__ import annotations

import socket

from .framing import CorruptPayload, OversizedLength, TruncatedFrame, decode_frame, encode_frame
from .messages import Message, Telemetry
from .session import TransportClosed

CONTROL_PORT = 7401
TELEMETRY_PORT = 7402

_READ_CHUNK = 65_536


class SocketTransport:
    """Non-blocking wrapper giving a TCP socket the transport interface."""

    def __init__(self, sock: socket.socket):
        sock.setblocking(False)
        sock.setsockopt(socket.IPPROTO_TCP, socket.TCP_NODELAY, 1)
        self._sock = sock
        self._closed = False

    def write(self, data: bytes) -> None:
        if self._closed:
            raise TransportClosed("socket closed")
        try:
            self._sock.sendall(data)
        except (BlockingIOError, InterruptedError):
            # frames are small; a full kernel buffer means a wedged peer
            raise TransportClosed("send buffer full") from None
        except OSError as exc:
            raise TransportClosed(str(exc)) from None

    def read(self) -> bytes:
        if self._closed:
            raise TransportClosed("socket closed")
        try:
            data = self._sock.recv(_READ_CHUNK)
        except (BlockingIOError, InterruptedError):
            return b""
        except OSError as exc:
            raise TransportClosed(str(exc)) from None
        if data == b"":
            raise TransportClosed("peer closed")
        return data

    def close(self) -> None:
        if not self._closed:
            self._closed = True
            try:
                self._sock.close()
            except OSError:
                pass


class TelemetrySender:
    """Fire-and-forget telemetry datagrams toward one destination."""

    def __init__(self, dest: tuple[str, int]):
        self.dest = dest
        self._sock = socket.socket(socket.AF_INET, socket.SOCK_DGRAM)

    def send(self, msg: Message) -> None:
        try:
            self._sock.sendto(encode_frame(msg), self.dest)
        except OSError:
            pass  # telemetry is best-effort by design

    def close(self) -> None:
        self._sock.close()


class TelemetryReceiver:
    """Latest-wins intake: drains the socket, keeps the newest snapshot."""

    def __init__(self, port: int = TELEMETRY_PORT, host: str = "0.0.0.0"):
        self._sock = socket.socket(socket.AF_INET, socket.SOCK_DGRAM)
        self._sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        self._sock.bind((host, port))
        self._sock.setblocking(False)
        self.port = self._sock.getsockname()[1]

    def poll(self):
        """Return the newest TelemetrySnapshot received since last call, or None."""
        latest = None
        while True:
            try:
                data, _ = self._sock.recvfrom(_READ_CHUNK)
            except (BlockingIOError, InterruptedError):
                break
            except OSError:
                break
            try:
                msg, _rest = decode_frame(data)
            except (TruncatedFrame, OversizedLength, CorruptPayload):
                continue
            if isinstance(msg, Telemetry):
                latest = msg.snapshot
        return latest

    def close(self) -> None:
        self._sock.close()

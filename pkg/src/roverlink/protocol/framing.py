"""Length-prefixed JSON framing.

Wire format, bit-exact: a 4-byte big-endian unsigned payload length, then
exactly that many bytes of UTF-8 JSON for one message. Payloads are capped
at 64 KiB; nothing in the message set legitimately exceeds that.
"""

from __future__ import annotations

import json
import struct

from .messages import Message, message_from_dict, message_to_dict

MAX_PAYLOAD_BYTES = 65_536
_HEADER = struct.Struct(">I")


class ProtocolError(Exception):
    pass


class OversizedPayload(ProtocolError):
    """Encoded message exceeds the frame cap."""


class OversizedLength(ProtocolError):
    """Incoming length field exceeds the frame cap."""


class TruncatedFrame(ProtocolError):
    """More bytes are needed; not fatal for a stream."""


class CorruptPayload(ProtocolError):
    """Payload is not a valid message; fatal for the session."""


def _reject_constant(name: str):
    raise ValueError(f"non-finite JSON constant {name!r}")


def encode_frame(msg: Message) -> bytes:
    payload = json.dumps(
        message_to_dict(msg), separators=(",", ":"), allow_nan=False
    ).encode("utf-8")
    if len(payload) > MAX_PAYLOAD_BYTES:
        raise OversizedPayload(f"payload of {len(payload)} bytes exceeds {MAX_PAYLOAD_BYTES}")
    return _HEADER.pack(len(payload)) + payload


def decode_frame(buf: bytes | bytearray | memoryview) -> tuple[Message, bytes]:
    """Decode exactly one message from the head of ``buf``.

    Returns the message and the remaining bytes. Raises TruncatedFrame when
    the buffer holds less than one full frame.
    """
    buf = bytes(buf)
    if len(buf) < _HEADER.size:
        raise TruncatedFrame(f"need 4 header bytes, have {len(buf)}")
    (length,) = _HEADER.unpack_from(buf)
    if length > MAX_PAYLOAD_BYTES:
        raise OversizedLength(f"length field {length} exceeds {MAX_PAYLOAD_BYTES}")
    end = _HEADER.size + length
    if len(buf) < end:
        raise TruncatedFrame(f"need {end} bytes, have {len(buf)}")
    payload = buf[_HEADER.size : end]
    try:
        data = json.loads(payload.decode("utf-8"), parse_constant=_reject_constant)
        msg = message_from_dict(data)
    except (ValueError, TypeError, KeyError) as exc:
        raise CorruptPayload(str(exc)) from None
    return msg, buf[end:]


class StreamDecoder:
    """Reassembles messages from an arbitrarily re-chunked byte stream."""

    def __init__(self):
        self._buf = bytearray()

    def feed(self, data: bytes) -> list[Message]:
        self._buf.extend(data)
        out: list[Message] = []
        while True:
            try:
                msg, rest = decode_frame(self._buf)
            except TruncatedFrame:
                return out
            self._buf = bytearray(rest)
            out.append(msg)

    @property
    def pending_bytes(self) -> int:
        return len(self._buf)

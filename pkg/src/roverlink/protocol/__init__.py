"""Wire protocol: messages, framing, control session, telemetry channel, RF model."""

from .framing import (
    MAX_PAYLOAD_BYTES,
    CorruptPayload,
    OversizedLength,
    OversizedPayload,
    ProtocolError,
    StreamDecoder,
    TruncatedFrame,
    decode_frame,
    encode_frame,
)
from .link import LinkBudget, LinkQuality, link_quality
from .messages import (
    AbortAutonomy,
    Ack,
    ArmJoint,
    ArmJointName,
    ClearEStop,
    Drive,
    EStop,
    Heartbeat,
    Message,
    ScienceAction,
    ScienceCommand,
    SetWaypoints,
    StartAutonomy,
    Telemetry,
    is_control,
    message_from_dict,
    message_to_dict,
)
from .net import CONTROL_PORT, TELEMETRY_PORT, SocketTransport, TelemetryReceiver, TelemetrySender
from .session import (
    ControlSession,
    MemoryTransport,
    SessionDeadError,
    SessionDeath,
    SessionRole,
    TransportClosed,
    memory_pipe,
)

__all__ = [
    "AbortAutonomy",
    "Ack",
    "ArmJoint",
    "ArmJointName",
    "ClearEStop",
    "ControlSession",
    "CorruptPayload",
    "CONTROL_PORT",
    "Drive",
    "EStop",
    "Heartbeat",
    "LinkBudget",
    "LinkQuality",
    "MAX_PAYLOAD_BYTES",
    "MemoryTransport",
    "Message",
    "OversizedLength",
    "OversizedPayload",
    "ProtocolError",
    "ScienceAction",
    "ScienceCommand",
    "SessionDeadError",
    "SessionDeath",
    "SessionRole",
    "SetWaypoints",
    "SocketTransport",
    "StartAutonomy",
    "StreamDecoder",
    "Telemetry",
    "TelemetryReceiver",
    "TelemetrySender",
    "TELEMETRY_PORT",
    "TransportClosed",
    "TruncatedFrame",
    "decode_frame",
    "encode_frame",
    "is_control",
    "link_quality",
    "memory_pipe",
    "message_from_dict",
    "message_to_dict",
]
